#include "kato/conjugacy.hpp"

#include <algorithm>

#include "kato/error.hpp"
#include "kato/orbit.hpp"

namespace kato {

namespace {

using Breakpoints = std::vector<std::pair<Rational, Rational>>;

const Breakpoints& breakpoints_of(const SelfMap& m) {
  const auto* pl = std::get_if<SelfMap::PiecewiseLinear>(&m.variant());
  if (!pl) throw Error(ErrorKind::VariantMismatch, m.describe() + " is not piecewise linear");
  return pl->breakpoints;
}

Rational rotation_turns(const SelfMap& m) { return std::get<SelfMap::Rotation>(m.variant()).turns; }

}  // namespace

Homeomorphism Homeomorphism::piecewise_linear(Breakpoints breakpoints) {
  SelfMap forward = SelfMap::piecewise_linear(breakpoints);
  const auto& bp = breakpoints_of(forward);
  const int dir = cmp(bp[1].second, bp[0].second);
  if (dir == 0) throw Error(ErrorKind::InvalidArgument, "homeomorphism must be strictly monotone");
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (cmp(bp[i].second, bp[i - 1].second) != dir)
      throw Error(ErrorKind::InvalidArgument, "homeomorphism must be strictly monotone");
  const bool endpoints = dir > 0 ? (sgn(bp.front().second) == 0 && bp.back().second == 1)
                                 : (bp.front().second == 1 && sgn(bp.back().second) == 0);
  if (!endpoints) throw Error(ErrorKind::InvalidArgument, "homeomorphism must map {0, 1} onto {0, 1}");
  Breakpoints swapped;
  for (const auto& [x, y] : bp) swapped.emplace_back(y, x);
  if (dir < 0) std::reverse(swapped.begin(), swapped.end());
  SelfMap inverse = SelfMap::piecewise_linear(std::move(swapped));
  return Homeomorphism(std::move(forward), std::move(inverse), Space::unit_interval(), Space::unit_interval());
}

Homeomorphism Homeomorphism::permutation(const Space& source, std::vector<std::size_t> images) {
  if (source.kind() != SpaceKind::Finite) throw Error(ErrorKind::VariantMismatch, "permutation needs a finite space");
  const std::size_t n = source.finite_size();
  if (images.size() != n) throw Error(ErrorKind::InvalidArgument, "permutation length must equal the space size");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i] >= n || inv[images[i]] != n) throw Error(ErrorKind::InvalidArgument, "images do not form a permutation");
    inv[images[i]] = i;
  }
  Space target = Space::finite(n);
  if (source.has_explicit_metric()) {
    std::vector<Rational> metric(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) metric[images[i] * n + images[j]] = source.finite_metric(i, j);
    target = Space::finite(n, std::move(metric));
  }
  return Homeomorphism(SelfMap::finite_table(std::move(images)), SelfMap::finite_table(std::move(inv)), source,
                       std::move(target));
}

Homeomorphism Homeomorphism::rotation(Rational turns, CircleMetric metric) {
  Space circle = Space::circle(metric);
  Rational back = -turns;
  return Homeomorphism(SelfMap::rotation(std::move(turns)), SelfMap::rotation(std::move(back)), circle, circle);
}

Homeomorphism Homeomorphism::identity(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::UnitInterval:
      return Homeomorphism(SelfMap::identity_interval(), SelfMap::identity_interval(), space, space);
    case SpaceKind::Finite: {
      std::vector<std::size_t> id(space.finite_size());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      return Homeomorphism(SelfMap::finite_table(id), SelfMap::finite_table(id), space, space);
    }
    case SpaceKind::Circle:
      return Homeomorphism(SelfMap::rotation(Rational(0)), SelfMap::rotation(Rational(0)), space, space);
    case SpaceKind::Shift: break;
  }
  throw Error(ErrorKind::UndecidableForSpace, "no homeomorphism family is provided for shift spaces");
}

Point Homeomorphism::apply(const Point& x) const { return eval_map(forward_, source_, x); }

Point Homeomorphism::apply_inverse(const Point& y) const { return eval_map(inverse_, target_, y); }

FiniteSet Homeomorphism::apply(const FiniteSet& a) const {
  if (!(a.space() == source_)) throw Error(ErrorKind::SpaceMismatch, "set is not in " + source_.describe());
  std::vector<Point> out;
  out.reserve(a.size());
  for (const auto& p : a.points()) out.push_back(apply(p));
  return FiniteSet::make(target_, std::move(out));
}

Homeomorphism Homeomorphism::inverted() const { return Homeomorphism(inverse_, forward_, target_, source_); }

std::string Homeomorphism::describe() const {
  return "T: " + source_.describe() + " -> " + target_.describe() + " by " + forward_.describe();
}

SelfMap compose_piecewise_linear(const SelfMap& outer, const SelfMap& inner) {
  const auto& ob = breakpoints_of(outer);
  const auto& ib = breakpoints_of(inner);
  std::vector<Rational> xs;
  for (const auto& [x, y] : ib) xs.push_back(x);
  // Preimages under each inner piece of the outer breakpoints.
  for (std::size_t i = 0; i + 1 < ib.size(); ++i) {
    const auto& [x0, y0] = ib[i];
    const auto& [x1, y1] = ib[i + 1];
    if (y0 == y1) continue;
    const Rational& lo = std::min(y0, y1);
    const Rational& hi = std::max(y0, y1);
    for (const auto& [b, unused] : ob) {
      if (lo < b && b < hi) {
        Rational x = x0 + (b - y0) * (x1 - x0) / (y1 - y0);
        x.canonicalize();
        xs.push_back(std::move(x));
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const Space unit = Space::unit_interval();
  Breakpoints out;
  for (const auto& x : xs) {
    Rational y = eval_map(outer, unit, eval_map(inner, unit, Point::real(x))).value();
    // Drop the middle of three collinear points.
    while (out.size() >= 2) {
      const auto& [ax, ay] = out[out.size() - 2];
      const auto& [bx, by] = out.back();
      if ((by - ay) * (x - bx) != (y - by) * (bx - ax)) break;
      out.pop_back();
    }
    out.emplace_back(x, std::move(y));
  }
  return SelfMap::piecewise_linear(std::move(out));
}

MultiMapping conjugate_system(const MultiMapping& f, const Homeomorphism& t) {
  if (!(t.source() == f.space()))
    throw Error(ErrorKind::SpaceMismatch, "homeomorphism source " + t.source().describe() + " differs from " + f.space().describe());
  std::vector<SelfMap> maps;
  for (const auto& m : f.maps()) {
    const auto& v = m.variant();
    if (std::holds_alternative<SelfMap::PiecewiseLinear>(v) &&
        std::holds_alternative<SelfMap::PiecewiseLinear>(t.forward().variant())) {
      maps.push_back(compose_piecewise_linear(t.forward(), compose_piecewise_linear(m, t.inverse())));
    } else if (const auto* table = std::get_if<SelfMap::FiniteTable>(&v);
               table && std::holds_alternative<SelfMap::FiniteTable>(t.forward().variant())) {
      const auto& fwd = std::get<SelfMap::FiniteTable>(t.forward().variant()).images;
      const auto& inv = std::get<SelfMap::FiniteTable>(t.inverse().variant()).images;
      std::vector<std::size_t> images(table->images.size());
      for (std::size_t j = 0; j < images.size(); ++j) images[j] = fwd[table->images[inv[j]]];
      maps.push_back(SelfMap::finite_table(std::move(images)));
    } else if (std::holds_alternative<SelfMap::Rotation>(t.forward().variant()) && sgn(rotation_turns(t.forward())) == 0) {
      maps.push_back(m);
    } else {
      maps.push_back(SelfMap::composite({t.inverse(), m, t.forward()}));
    }
  }
  return MultiMapping(t.target(), std::move(maps));
}

ConjugatePair::ConjugatePair(MultiMapping f_, MultiMapping g_, Homeomorphism t_)
    : f(std::move(f_)), g(std::move(g_)), t(std::move(t_)) {
  if (f.size() != g.size()) throw Error(ErrorKind::InvalidArgument, "conjugate systems must have the same number of maps");
  if (!(t.source() == f.space())) throw Error(ErrorKind::SpaceMismatch, "T.source differs from the space of F");
  if (!(t.target() == g.space())) throw Error(ErrorKind::SpaceMismatch, "T.target differs from the space of G");
}

ConjugatePair ConjugatePair::from(const MultiMapping& f, const Homeomorphism& t) {
  return ConjugatePair(f, conjugate_system(f, t), t);
}

Evidence check_conjugacy(const ConjugatePair& p, const std::vector<Point>& samples, std::uint64_t n_max,
                         const OrbitPolicy& policy) {
  OrbitPolicy pol = policy;
  pol.max_steps = std::max(pol.max_steps, n_max);
  Evidence ev;
  ev.horizon = n_max;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Point& x = samples[i];
    const Point tx = p.t.apply(x);
    auto lhs = point_trajectory(p.f, x, n_max, pol);
    auto rhs = point_trajectory(p.g, tx, n_max, pol);
    bool ok = true;
    for (std::uint64_t n = 1; n <= n_max && ok; ++n) {
      FiniteSet image = p.t.apply(lhs[n].set);
      if (!(image == rhs[n].set)) {
        ok = false;
        ev.refuted.push_back(i);
        ev.notes.push_back("x = " + x.describe() + ", n = " + std::to_string(n) + ": T(F^n x) = " + image.describe() +
                           " but G^n(T x) = " + rhs[n].set.describe());
      }
    }
    if (ok) ev.witnesses.push_back(Witness{i, i, x, tx, n_max, Distance{Rational(0)}});
  }
  if (!ev.refuted.empty()) ev.verdict = Verdict::Refuted;
  else if (!ev.witnesses.empty()) ev.verdict = Verdict::Established;
  ev.params = {{"property", "conjugacy"}, {"T", p.t.describe()}, {"samples", std::to_string(samples.size())},
               {"n_max", std::to_string(n_max)}};
  return ev;
}

LipschitzBounds lipschitz_bounds(const Homeomorphism& t, const std::vector<Point>& points) {
  const auto& v = t.forward().variant();
  if (const auto* pl = std::get_if<SelfMap::PiecewiseLinear>(&v)) {
    std::optional<Rational> lo, hi;
    const auto& bp = pl->breakpoints;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      Rational slope = abs_diff(bp[i + 1].second, bp[i].second) / (bp[i + 1].first - bp[i].first);
      if (!lo || slope < *lo) lo = slope;
      if (!hi || slope > *hi) hi = slope;
    }
    return {*lo, *hi, false};
  }
  if (t.source().kind() == SpaceKind::Finite) {
    const std::size_t n = t.source().finite_size();
    std::optional<Rational> lo, hi;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational ratio = point_distance(t.target(), t.apply(Point::element(i)), t.apply(Point::element(j))).value /
                         t.source().finite_metric(i, j);
        if (!lo || ratio < *lo) lo = ratio;
        if (!hi || ratio > *hi) hi = ratio;
      }
    }
    if (!lo) return {Rational(1), Rational(1), false};
    return {*lo, *hi, false};
  }
  if (t.source().kind() == SpaceKind::Circle &&
      (t.source().circle_metric() == CircleMetric::Arc || sgn(rotation_turns(t.forward())) == 0))
    return {Rational(1), Rational(1), false};
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      Distance d = point_distance(t.source(), points[i], points[j]);
      if (d.upper_bound || sgn(d.value) == 0) continue;
      Distance e = point_distance(t.target(), t.apply(points[i]), t.apply(points[j]));
      Rational ratio = e.value / d.value;
      if (!lo || ratio < *lo) lo = ratio;
      if (!hi || ratio > *hi) hi = ratio;
    }
  }
  if (!lo) return {Rational(1), Rational(1), true};
  return {*lo, *hi, true};
}

PreservationReport preservation_suite(const ConjugatePair& p, const Rational& delta, const Rational& epsilon,
                                      const std::vector<OpenSet>& sets, const DetectorParams& params) {
  std::vector<Point> all_points;
  for (const auto& s : sets) all_points.insert(all_points.end(), s.samples.begin(), s.samples.end());

  PreservationReport r;
  r.bounds = lipschitz_bounds(p.t, all_points);
  r.delta_f = delta;
  r.epsilon_f = epsilon;
  r.delta_g = delta * r.bounds.lower;
  r.epsilon_g = epsilon * r.bounds.upper;
  r.delta_g.canonicalize();
  r.epsilon_g.canonicalize();

  std::vector<OpenSet> moved;
  moved.reserve(sets.size());
  for (const auto& s : sets) {
    OpenSet m{p.t.apply(s.center), s.radius * r.bounds.upper, {}};
    for (const auto& x : s.samples) m.samples.push_back(p.t.apply(x));
    moved.push_back(std::move(m));
  }
  const auto pairs = all_set_pairs(sets.size());

  r.sensitivity_f = test_sensitivity(p.f, delta, sets, params);
  r.sensitivity_g = test_sensitivity(p.g, r.delta_g, moved, params);
  r.accessibility_f = test_accessibility(p.f, epsilon, sets, pairs, params);
  r.accessibility_g = test_accessibility(p.g, r.epsilon_g, moved, pairs, params);
  r.sensitivity_agrees = r.sensitivity_f.verdict == r.sensitivity_g.verdict;
  r.accessibility_agrees = r.accessibility_f.verdict == r.accessibility_g.verdict;

  if (r.bounds.sampled)
    r.notes.push_back("moduli of continuity sampled over the set points; T is not Lipschitz for this metric");
  if (!r.sensitivity_agrees)
    r.notes.push_back("sensitivity verdicts differ: an artifact of the discretization parameters, not a refutation");
  if (!r.accessibility_agrees)
    r.notes.push_back("accessibility verdicts differ: an artifact of the discretization parameters, not a refutation");

  // Transport each F witness through T and replay it on G.
  OrbitPolicy pol = params.policy;
  pol.max_steps = std::max(pol.max_steps, params.horizon);
  std::size_t replayed = 0;
  for (const auto& w : r.sensitivity_f.witnesses) {
    Distance d = hausdorff_distance(iterate_point(p.g, p.t.apply(w.x), w.n, pol).set,
                                    iterate_point(p.g, p.t.apply(w.y), w.n, pol).set);
    if (!d.upper_bound && d.value > r.delta_g) ++replayed;
  }
  r.notes.push_back(std::to_string(replayed) + " of " + std::to_string(r.sensitivity_f.witnesses.size()) +
                    " sensitivity witnesses of F replay on G after transport");
  return r;
}

}  // namespace kato
