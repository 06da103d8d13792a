#pragma once

// Semi-decision procedures for Hausdorff-metric sensitivity, accessibility
// and Kato chaos of a multiple mapping, their classical single-map
// counterparts, and checkers for the sufficient-condition hypotheses.
//
// "For every nonempty open set" is discretized to "for every set produced by
// a sampler"; an Established verdict is evidence relative to the sampler and
// horizon, never a proof. Refuted is emitted only on finite spaces, where the
// sampled sets contain every point of the ball and set-valued orbits are
// eventually periodic, so the search is exhaustive.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kato/hausdorff.hpp"
#include "kato/orbit.hpp"
#include "kato/spaces.hpp"

namespace kato {

enum class Verdict { Established, Refuted, Undetermined };

const char* to_string(Verdict v) noexcept;

/// How sample points are drawn from a ball on the unit interval or circle.
enum class SampleLattice {
  Dyadic,   ///< k / 2^j in increasing j: the simplest exact rationals first.
  Uniform,  ///< evenly spaced across the ball.
  Random,   ///< seeded uniform draws with 2^-32 resolution.
};

/// A nonempty open set together with the points the detectors may pick from it.
struct OpenSet {
  Point center;
  Rational radius;
  std::vector<Point> samples;
};

struct OpenSetSampler {
  /// Balls of the given radius centred at spacing/2 + j * spacing.
  struct BallGrid {
    Rational spacing;
    Rational radius;
  };
  struct ExplicitList {
    std::vector<std::pair<Point, Rational>> balls;
  };
  /// Every singleton of a finite space.
  struct FiniteAll {};

  std::variant<BallGrid, ExplicitList, FiniteAll> kind;
  std::size_t points_per_set = 16;
  SampleLattice lattice = SampleLattice::Dyadic;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<OpenSet> materialize(const OpenSetSampler& sampler, const Space& space);

/// Up to `count` points of the open ball B(center, radius); on a finite space every point of the ball.
std::vector<Point> sample_ball(const Space& space, const Point& center, const Rational& radius, std::size_t count,
                               SampleLattice lattice, std::uint64_t seed);

/// One open set per candidate: the ball of `radius` around it, sampled by the
/// candidates it contains (resolved distances only). Used for shift spaces.
std::vector<OpenSet> open_sets_from_points(const Space& space, const std::vector<Point>& candidates, const Rational& radius);

using SetPair = std::pair<std::size_t, std::size_t>;

/// All unordered pairs (i, j), i <= j, of `count` sets.
std::vector<SetPair> all_set_pairs(std::size_t count);

struct Witness {
  std::size_t u_index;
  std::size_t v_index;
  Point x;
  Point y;
  std::uint64_t n;
  Distance distance;
};

struct Evidence {
  Verdict verdict = Verdict::Undetermined;
  std::vector<Witness> witnesses;
  std::uint64_t horizon = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> notes;
  /// Indices of sets (sensitivity) or pairs (accessibility, contraction) left without a witness.
  std::vector<std::size_t> unresolved;
  /// Indices where the exhaustive finite search proved there is no witness.
  std::vector<std::size_t> refuted;
};

struct DetectorParams {
  std::uint64_t horizon = 64;
  OrbitPolicy policy = {};
  /// On finite spaces, ignore the horizon and run every pair orbit until it cycles.
  bool exhaustive = false;
  /// 0: KATO_DYN_THREADS or hardware concurrency.
  unsigned threads = 0;
};

/// Established iff every set has x, y among its samples and 1 <= n <= horizon
/// with d_H(F^n x, F^n y) > delta (strict, unflagged).
Evidence test_sensitivity(const MultiMapping& f, const Rational& delta, std::span<const OpenSet> sets,
                          const DetectorParams& params = {});
Evidence test_sensitivity(const MultiMapping& f, const Rational& delta, const OpenSetSampler& sampler,
                          const DetectorParams& params = {});

/// Established iff every pair (U, V) has x in U, y in V and 1 <= n <= horizon
/// with d_H(F^n x, F^n y) < epsilon (strict, unflagged).
Evidence test_accessibility(const MultiMapping& f, const Rational& epsilon, std::span<const OpenSet> sets,
                            std::span<const SetPair> pairs, const DetectorParams& params = {});
Evidence test_accessibility(const MultiMapping& f, const Rational& epsilon, const OpenSetSampler& sampler,
                            const DetectorParams& params = {});

struct KatoReport {
  Evidence sensitivity;
  Evidence accessibility;
  Verdict combined = Verdict::Undetermined;
};

KatoReport kato_verdict(const MultiMapping& f, const Rational& delta, const Rational& epsilon,
                        std::span<const OpenSet> sets, std::span<const SetPair> pairs, const DetectorParams& params = {});
KatoReport kato_verdict(const MultiMapping& f, const Rational& delta, const Rational& epsilon,
                        const OpenSetSampler& sampler, const DetectorParams& params = {});

Verdict combine(Verdict a, Verdict b) noexcept;

/// Single-map detectors on scalar orbits f^n(x), using the ground metric directly.
Evidence classical_sensitivity(const SelfMap& f, const Space& space, const Rational& delta,
                               std::span<const OpenSet> sets, const DetectorParams& params = {});
Evidence classical_accessibility(const SelfMap& f, const Space& space, const Rational& epsilon,
                                 std::span<const OpenSet> sets, std::span<const SetPair> pairs,
                                 const DetectorParams& params = {});

/// Largest delta on the grid diameter * j / 2^steps at which sensitivity is
/// established, found by bisection. Zero when nothing is established.
Rational estimate_sensitivity_constant(const MultiMapping& f, std::span<const OpenSet> sets,
                                       const DetectorParams& params = {}, unsigned steps = 10);

struct ConstantMapHypothesis {
  bool holds = false;
  std::optional<std::size_t> constant_index;
  std::optional<Point> c;
  /// Every other map fixes c.
  bool fixed = false;
};

/// Structural check for "some f_i is constant c"; also reports whether the
/// remaining maps fix c. Throws Error(UndecidableForSpace) on shift spaces.
ConstantMapHypothesis check_constant_map_hypothesis(const MultiMapping& f);

/// Established iff every pair (U, V) yields x in U, y in V, x != y, with
/// d(f_i x, f_i y) < lambda d(x, y) for every map. At most samples_per_pair
/// candidate (x, y) combinations are tried per pair.
Evidence check_contraction_condition(const MultiMapping& f, const Rational& lambda, std::span<const OpenSet> sets,
                                     std::span<const SetPair> pairs, std::size_t samples_per_pair);

/// |{i < n : in_set(i)}| / n.
Rational natural_density(const std::function<bool(std::uint64_t)>& in_set, std::uint64_t n);

}  // namespace kato
