#pragma once

// Compact metric spaces, points on them, and the evaluable self-maps that
// make up a multiple mapping.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kato/rational.hpp"

namespace kato {

enum class SpaceKind { UnitInterval, Finite, Circle, Shift };

const char* to_string(SpaceKind kind) noexcept;

/// Literal uses |a - b| on representatives in [0,1); Arc uses min(|a-b|, 1-|a-b|).
enum class CircleMetric { Literal, Arc };

class Space {
 public:
  static Space unit_interval();
  /// Finite space {0..size-1} with the discrete metric.
  static Space finite(std::size_t size);
  /// Finite space with an explicit row-major metric matrix; validated as a metric.
  static Space finite(std::size_t size, std::vector<Rational> metric);
  static Space circle(CircleMetric metric = CircleMetric::Literal);
  /// Shift space truncated at horizon L: bits at indices >= L are never consulted.
  static Space shift(std::uint64_t horizon);

  SpaceKind kind() const noexcept { return kind_; }

  std::size_t finite_size() const;
  bool has_explicit_metric() const noexcept { return metric_ != nullptr; }
  /// Metric entry d(i, j) on a finite space (discrete metric when none was given).
  Rational finite_metric(std::size_t i, std::size_t j) const;
  const std::vector<Rational>* finite_metric_matrix() const noexcept { return metric_.get(); }

  CircleMetric circle_metric() const;
  std::uint64_t horizon() const;

  /// Upper bound on the metric (1 for all four spaces unless a finite metric says otherwise).
  Rational diameter() const;

  std::string describe() const;

  friend bool operator==(const Space& a, const Space& b);

 private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::UnitInterval;
  std::size_t size_ = 0;
  std::shared_ptr<const std::vector<Rational>> metric_;
  CircleMetric circle_metric_ = CircleMetric::Literal;
  std::uint64_t horizon_ = 0;
};

/// Bit i of the block sequence 11 0 1111 00 1^8 000 ... (block n = 2^n ones then n zeros).
bool omega_bit(std::uint64_t i);

/// Index of the first zero in block m (m >= 1): 2(2^m - 1) + m(m-1)/2.
std::uint64_t omega_block_zero_start(std::uint64_t m);
/// Length of the prefix that ends with block m: 2(2^m - 1) + m(m+1)/2.
std::uint64_t omega_block_end(std::uint64_t m);

/// Lazily evaluated infinite binary sequence.
class SequenceSpec {
 public:
  enum class Kind { Theta, Omega, Prefix };

  static SequenceSpec theta();
  static SequenceSpec omega();
  /// bits followed by tail; canonicalized (nested prefixes flattened, zero tails folded into theta).
  static SequenceSpec prefix(std::vector<bool> bits, const SequenceSpec& tail);

  Kind kind() const noexcept { return kind_; }
  bool bit(std::uint64_t i) const;

  /// Explicit leading bits (empty unless kind() == Prefix).
  const std::vector<bool>& bits() const;
  /// Tail after the explicit bits (only meaningful for Prefix).
  const SequenceSpec& tail() const;

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b);
  friend std::strong_ordering operator<=>(const SequenceSpec& a, const SequenceSpec& b);

 private:
  SequenceSpec() = default;

  Kind kind_ = Kind::Theta;
  std::shared_ptr<const std::vector<bool>> bits_;
  std::shared_ptr<const SequenceSpec> tail_;
};

/// A point tagged with the space variant it lives in.
class Point {
 public:
  struct Real { Rational value; };
  struct Element { std::size_t index; };
  struct Angle { Rational turns; };
  struct Seq { SequenceSpec spec; std::uint64_t offset; };

  /// Value in [0,1].
  static Point real(Rational value);
  static Point element(std::size_t index);
  /// Turns (alpha / 2pi), reduced into [0,1).
  static Point angle(Rational turns);
  /// sigma^offset applied to spec, canonicalized.
  static Point seq(SequenceSpec spec, std::uint64_t offset = 0);

  SpaceKind kind() const noexcept;

  const Rational& value() const;   // Real
  std::size_t index() const;       // Element
  const Rational& turns() const;   // Angle
  const SequenceSpec& spec() const;  // Seq
  std::uint64_t offset() const;    // Seq

  std::string describe() const;

  friend bool operator==(const Point& a, const Point& b);
  /// Canonical total order used for deduplication.
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  explicit Point(std::variant<Real, Element, Angle, Seq> v) : v_(std::move(v)) {}
  std::variant<Real, Element, Angle, Seq> v_;
};

/// Bit i of sigma^offset(spec).
bool seq_bit(const Point& p, std::uint64_t i);

/// Checks that p can live in s (variant match plus range).
bool belongs_to(const Point& p, const Space& s);

class SelfMap;

/// Evaluable continuous self-map specification. All variants evaluate exactly.
class SelfMap {
 public:
  /// Linear interpolation between breakpoints; pieces are [x_i, x_{i+1}) except the last, which is closed.
  struct PiecewiseLinear { std::vector<std::pair<Rational, Rational>> breakpoints; };
  struct FiniteTable { std::vector<std::size_t> images; };
  /// turns -> factor * turns on the canonical representative.
  struct AngleScale { Rational factor; };
  struct ShiftPower { std::uint64_t power; };
  /// turns -> turns + offset (mod 1).
  struct Rotation { Rational turns; };
  /// Stages applied left to right: stages[0] first.
  struct Composite { std::shared_ptr<const std::vector<SelfMap>> stages; };

  using Variant = std::variant<PiecewiseLinear, FiniteTable, AngleScale, ShiftPower, Rotation, Composite>;

  static SelfMap piecewise_linear(std::vector<std::pair<Rational, Rational>> breakpoints);
  static SelfMap constant(const Rational& c);
  static SelfMap identity_interval();
  static SelfMap finite_table(std::vector<std::size_t> images);
  static SelfMap angle_scale(Rational factor);
  static SelfMap shift_power(std::uint64_t power);
  static SelfMap rotation(Rational turns);
  static SelfMap composite(std::vector<SelfMap> stages);

  const Variant& variant() const noexcept { return v_; }
  bool exact() const noexcept { return true; }

  /// True when every evaluation on s is well defined (domain variant and range checks).
  bool compatible_with(const Space& s) const;

  std::string describe() const;

  friend bool operator==(const SelfMap& a, const SelfMap& b);

 private:
  explicit SelfMap(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Exact image of p under m. Throws Error(VariantMismatch) if p or m does not match s.
Point eval_map(const SelfMap& m, const Space& s, const Point& p);

/// Double-precision evaluation for the opt-in fast path (unit interval and circle only).
double eval_map_approx(const SelfMap& m, const Space& s, double x);

/// Ordered, nonempty tuple of self-maps on one space.
class MultiMapping {
 public:
  MultiMapping(Space space, std::vector<SelfMap> maps);

  const Space& space() const noexcept { return space_; }
  const std::vector<SelfMap>& maps() const noexcept { return maps_; }
  std::size_t size() const noexcept { return maps_.size(); }
  const SelfMap& operator[](std::size_t i) const { return maps_.at(i); }

 private:
  Space space_;
  std::vector<SelfMap> maps_;
};

}  // namespace kato
