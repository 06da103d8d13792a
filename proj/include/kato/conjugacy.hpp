#pragma once

// Exactly invertible homeomorphisms, transport of multiple mappings through
// them, and paired detector runs on conjugate systems.

#include <string>
#include <vector>

#include "kato/detectors.hpp"
#include "kato/spaces.hpp"

namespace kato {

class Homeomorphism {
 public:
  /// Strictly monotone piecewise-linear bijection of [0,1].
  static Homeomorphism piecewise_linear(std::vector<std::pair<Rational, Rational>> breakpoints);
  /// Relabeling i -> images[i] of a finite space; the target carries the transported metric.
  static Homeomorphism permutation(const Space& source, std::vector<std::size_t> images);
  static Homeomorphism rotation(Rational turns, CircleMetric metric = CircleMetric::Literal);
  static Homeomorphism identity(const Space& space);

  const SelfMap& forward() const noexcept { return forward_; }
  const SelfMap& inverse() const noexcept { return inverse_; }
  const Space& source() const noexcept { return source_; }
  const Space& target() const noexcept { return target_; }

  Point apply(const Point& x) const;
  Point apply_inverse(const Point& y) const;
  FiniteSet apply(const FiniteSet& a) const;

  Homeomorphism inverted() const;
  std::string describe() const;

 private:
  Homeomorphism(SelfMap forward, SelfMap inverse, Space source, Space target)
      : forward_(std::move(forward)), inverse_(std::move(inverse)), source_(std::move(source)), target_(std::move(target)) {}

  SelfMap forward_;
  SelfMap inverse_;
  Space source_;
  Space target_;
};

/// x -> outer(inner(x)) for piecewise-linear maps of [0,1], as an exact piecewise-linear map.
SelfMap compose_piecewise_linear(const SelfMap& outer, const SelfMap& inner);

/// G with g_i = T f_i T^-1 on T.target(). Throws Error(SpaceMismatch) unless T.source() == F.space().
MultiMapping conjugate_system(const MultiMapping& f, const Homeomorphism& t);

struct ConjugatePair {
  MultiMapping f;
  MultiMapping g;
  Homeomorphism t;

  /// Validates tuple lengths and spaces.
  ConjugatePair(MultiMapping f, MultiMapping g, Homeomorphism t);
  static ConjugatePair from(const MultiMapping& f, const Homeomorphism& t);
};

/// Established iff T(F^n x) = G^n(T x) as exact sets for every sample and n <= n_max.
/// A mismatch is an exact counterexample: Refuted, with the failing (x, n) in notes.
Evidence check_conjugacy(const ConjugatePair& p, const std::vector<Point>& samples, std::uint64_t n_max,
                         const OrbitPolicy& policy = {});

/// Bounds m <= d(Ta, Tb) / d(a, b) <= M: exact for piecewise-linear and finite maps,
/// exact for rotations under the arc metric, sampled over `points` otherwise.
struct LipschitzBounds {
  Rational lower;
  Rational upper;
  bool sampled = false;
};

LipschitzBounds lipschitz_bounds(const Homeomorphism& t, const std::vector<Point>& points);

struct PreservationReport {
  Evidence sensitivity_f;
  Evidence sensitivity_g;
  Evidence accessibility_f;
  Evidence accessibility_g;
  Rational delta_f, delta_g;
  Rational epsilon_f, epsilon_g;
  LipschitzBounds bounds;
  bool sensitivity_agrees = false;
  bool accessibility_agrees = false;
  std::vector<std::string> notes;
};

/// Runs the detectors on F with `sets`, and on G with T(U) for each U and
/// transported constants delta * lower, epsilon * upper.
PreservationReport preservation_suite(const ConjugatePair& p, const Rational& delta, const Rational& epsilon,
                                      const std::vector<OpenSet>& sets, const DetectorParams& params = {});

}  // namespace kato
