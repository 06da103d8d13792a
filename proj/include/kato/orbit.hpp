#pragma once

// Set-valued iterates F^n(x) and F^n(A): the set of all length-n
// compositions f_{i1} o ... o f_{in} applied to the starting point(s).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kato/hausdorff.hpp"
#include "kato/spaces.hpp"

namespace kato {

enum class OrbitMode { ExactEnumeration, PrunedDedup };

struct OrbitPolicy {
  OrbitMode mode = OrbitMode::ExactEnumeration;
  /// Dedup radius for PrunedDedup; 0 means exact-equality dedup.
  Rational tolerance = 0;
  std::size_t max_set_size = std::size_t{1} << 16;
  std::uint64_t max_steps = 64;

  static OrbitPolicy exact(std::uint64_t max_steps = 64);
  static OrbitPolicy pruned(Rational tolerance, std::uint64_t max_steps = 64);

  void validate() const;
};

struct OrbitSet {
  std::uint64_t step = 0;
  FiniteSet set;
  /// Set when max_set_size forced lossy pruning (PrunedDedup only).
  bool truncated = false;
};

/// One application of the induced set map: S_{j+1} = dedup(U_i f_i(S_j)).
OrbitSet step_orbit(const MultiMapping& f, const OrbitSet& current, const OrbitPolicy& policy);

OrbitSet iterate_point(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy);
OrbitSet iterate_set(const MultiMapping& f, const FiniteSet& a, std::uint64_t n, const OrbitPolicy& policy);

/// S_0 .. S_n for a point orbit.
std::vector<OrbitSet> point_trajectory(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy);

/// Composition word i1 i2 ... in (1-based map labels); f_{in} is applied first.
using Word = std::vector<std::size_t>;

std::string word_to_string(const Word& w);

struct WordImage {
  Word word;
  Point image;
};

/// All k^n words with their images, lexicographic in application order.
/// Throws Error(BlowupRefused) when k^n exceeds policy.max_set_size.
std::vector<WordImage> enumerate_words(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy);

/// Some word whose composition lands within tol of target, or nullopt.
std::optional<Word> branch_witness(const MultiMapping& f, const Point& x, std::uint64_t n, const Point& target,
                                   const Rational& tol, const OrbitPolicy& policy = {});

/// Double-precision orbit with tolerance dedup (unit interval and circle only).
struct ApproxOrbit {
  std::uint64_t step = 0;
  std::vector<double> points;
  bool truncated = false;
};

ApproxOrbit iterate_point_approx(const MultiMapping& f, double x, std::uint64_t n, double tolerance,
                                 std::size_t max_set_size = std::size_t{1} << 16);

}  // namespace kato
