#pragma once

// Ground metrics on the four spaces and the Hausdorff metric on nonempty
// finite point sets.

#include <span>
#include <vector>

#include "kato/rational.hpp"
#include "kato/spaces.hpp"

namespace kato {

/// Exact nonnegative distance. upper_bound marks a shift-space value that
/// could not be resolved within the truncation horizon: the true distance is
/// at most `value`.
struct Distance {
  Rational value;
  bool upper_bound = false;

  friend bool operator==(const Distance&, const Distance&) = default;
};

/// Nonempty finite subset of a space, stored sorted and deduplicated.
class FiniteSet {
 public:
  /// Exact deduplication. Throws on an empty list or a point outside the space.
  static FiniteSet make(Space space, std::vector<Point> points);
  /// Greedy deduplication in canonical order: a point is kept only if it is
  /// farther than `tolerance` from every point kept before it.
  static FiniteSet make_pruned(Space space, std::vector<Point> points, const Rational& tolerance);
  static FiniteSet singleton(Space space, Point p);

  const Space& space() const noexcept { return space_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool contains(const Point& p) const;

  std::string describe() const;

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) {
    return a.space_ == b.space_ && a.points_ == b.points_;
  }

 private:
  FiniteSet(Space space, std::vector<Point> points) : space_(std::move(space)), points_(std::move(points)) {}

  Space space_;
  std::vector<Point> points_;
};

Distance point_distance(const Space& s, const Point& p, const Point& q);

/// sup_{a in A} inf_{b in B} d(a, b).
Distance directed_distance(const FiniteSet& a, const FiniteSet& b);

/// max of the two directed distances. Throws Error(SpaceMismatch) if A and B live in different spaces.
Distance hausdorff_distance(const FiniteSet& a, const FiniteSet& b);

/// Double-precision Hausdorff distance between coordinate sets on the unit
/// interval or circle (turns). Used by the fast path and as a prefilter.
double hausdorff_distance_approx(const Space& s, std::span<const double> a, std::span<const double> b);

/// Double coordinate of a unit-interval or circle point.
double approx_coordinate(const Point& p);

}  // namespace kato
