#include "kato/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kato/error.hpp"

namespace kato {

FiniteSet FiniteSet::make(Space space, std::vector<Point> points) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "finite set must be nonempty");
  for (const auto& p : points)
    if (!belongs_to(p, space))
      throw Error(ErrorKind::VariantMismatch, "point " + p.describe() + " does not belong to " + space.describe());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return FiniteSet(std::move(space), std::move(points));
}

FiniteSet FiniteSet::make_pruned(Space space, std::vector<Point> points, const Rational& tolerance) {
  if (sgn(tolerance) < 0) throw Error(ErrorKind::InvalidArgument, "dedup tolerance must be nonnegative");
  FiniteSet exact = make(std::move(space), std::move(points));
  if (sgn(tolerance) == 0) return exact;
  const bool ordered_line = exact.space_.kind() == SpaceKind::UnitInterval ||
                            (exact.space_.kind() == SpaceKind::Circle && exact.space_.circle_metric() == CircleMetric::Literal);
  std::vector<Point> kept;
  for (auto& p : exact.points_) {
    bool close = false;
    if (ordered_line) {
      close = !kept.empty() && point_distance(exact.space_, kept.back(), p).value <= tolerance;
    } else {
      close = std::any_of(kept.begin(), kept.end(),
                          [&](const Point& k) { return point_distance(exact.space_, k, p).value <= tolerance; });
    }
    if (!close) kept.push_back(std::move(p));
  }
  return FiniteSet(std::move(exact.space_), std::move(kept));
}

FiniteSet FiniteSet::singleton(Space space, Point p) { return make(std::move(space), {std::move(p)}); }

bool FiniteSet::contains(const Point& p) const { return std::binary_search(points_.begin(), points_.end(), p); }

std::string FiniteSet::describe() const {
  std::string out = "{";
  for (std::size_t i = 0; i < points_.size(); ++i) out += (i ? ", " : "") + points_[i].describe();
  return out + "}";
}

Distance point_distance(const Space& s, const Point& p, const Point& q) {
  if (!belongs_to(p, s) || !belongs_to(q, s))
    throw Error(ErrorKind::VariantMismatch, "points " + p.describe() + ", " + q.describe() + " are not in " + s.describe());
  switch (s.kind()) {
    case SpaceKind::UnitInterval: return {abs_diff(p.value(), q.value())};
    case SpaceKind::Finite: return {s.finite_metric(p.index(), q.index())};
    case SpaceKind::Circle: {
      Rational d = abs_diff(p.turns(), q.turns());
      if (s.circle_metric() == CircleMetric::Arc) d = std::min<Rational>(d, Rational(1) - d);
      return {d};
    }
    case SpaceKind::Shift: {
      if (p == q) return {Rational(0)};
      const std::uint64_t horizon = s.horizon();
      for (std::uint64_t i = 0; i < horizon; ++i) {
        if (seq_bit(p, i) != seq_bit(q, i)) return {make_rational(1, static_cast<long>(i + 1))};
      }
      Rational bound(1);
      bound /= Rational(mpz_class(std::to_string(horizon + 1)));
      return {bound, true};
    }
  }
  throw Error(ErrorKind::VariantMismatch, "unknown space");
}

namespace {

// Combines candidate values where upper_bound ones may hide a smaller true value.
struct Extremum {
  bool any_exact = false;
  bool any_bound = false;
  Rational best_exact;
  Rational best_bound;
};

Distance finish_min(const Extremum& e) {
  if (!e.any_bound) return {e.best_exact};
  if (!e.any_exact) return {e.best_bound, true};
  if (sgn(e.best_exact) == 0) return {e.best_exact};
  return {std::min(e.best_exact, e.best_bound), true};
}

Distance finish_max(const Extremum& e) {
  if (!e.any_bound) return {e.best_exact};
  if (!e.any_exact) return {e.best_bound, true};
  if (e.best_exact >= e.best_bound) return {e.best_exact};
  return {e.best_bound, true};
}

void take_min(Extremum& e, Distance d) {
  auto& slot = d.upper_bound ? e.best_bound : e.best_exact;
  bool& seen = d.upper_bound ? e.any_bound : e.any_exact;
  if (!seen || d.value < slot) slot = std::move(d.value);
  seen = true;
}

void take_max(Extremum& e, Distance d) {
  auto& slot = d.upper_bound ? e.best_bound : e.best_exact;
  bool& seen = d.upper_bound ? e.any_bound : e.any_exact;
  if (!seen || d.value > slot) slot = std::move(d.value);
  seen = true;
}

}  // namespace

Distance directed_distance(const FiniteSet& a, const FiniteSet& b) {
  if (!(a.space() == b.space())) throw Error(ErrorKind::SpaceMismatch, a.space().describe() + " vs " + b.space().describe());
  Extremum outer;
  for (const auto& p : a.points()) {
    Extremum inner;
    for (const auto& q : b.points()) {
      Distance d = point_distance(a.space(), p, q);
      const bool zero = !d.upper_bound && sgn(d.value) == 0;
      take_min(inner, std::move(d));
      if (zero) break;
    }
    take_max(outer, finish_min(inner));
  }
  return finish_max(outer);
}

Distance hausdorff_distance(const FiniteSet& a, const FiniteSet& b) {
  Distance ab = directed_distance(a, b);
  Distance ba = directed_distance(b, a);
  Extremum e;
  take_max(e, std::move(ab));
  take_max(e, std::move(ba));
  return finish_max(e);
}

double approx_coordinate(const Point& p) {
  switch (p.kind()) {
    case SpaceKind::UnitInterval: return p.value().get_d();
    case SpaceKind::Circle: return p.turns().get_d();
    default: throw Error(ErrorKind::VariantMismatch, "no scalar coordinate for " + p.describe());
  }
}

namespace {

double approx_metric(const Space& s, double x, double y) {
  double d = std::fabs(x - y);
  if (s.kind() == SpaceKind::Circle && s.circle_metric() == CircleMetric::Arc) d = std::min(d, 1.0 - d);
  return d;
}

double approx_directed(const Space& s, std::span<const double> a, std::span<const double> b) {
  double sup = 0.0;
  for (double x : a) {
    double inf = std::numeric_limits<double>::infinity();
    for (double y : b) inf = std::min(inf, approx_metric(s, x, y));
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace

double hausdorff_distance_approx(const Space& s, std::span<const double> a, std::span<const double> b) {
  if (s.kind() != SpaceKind::UnitInterval && s.kind() != SpaceKind::Circle)
    throw Error(ErrorKind::VariantMismatch, "approximate Hausdorff distance needs a coordinate space");
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "Hausdorff distance of an empty set");
  return std::max(approx_directed(s, a, b), approx_directed(s, b, a));
}

}  // namespace kato
