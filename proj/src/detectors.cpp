#include "kato/detectors.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "kato/error.hpp"
#include "parallel.hpp"

namespace kato {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Established: return "Established";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

Verdict combine(Verdict a, Verdict b) noexcept {
  if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
  if (a == Verdict::Established && b == Verdict::Established) return Verdict::Established;
  return Verdict::Undetermined;
}

// ---------------------------------------------------------------------------
// Samplers

void OpenSetSampler::validate() const {
  if (points_per_set < 2) throw Error(ErrorKind::InvalidArgument, "points_per_set must be at least 2");
  if (auto* g = std::get_if<BallGrid>(&kind)) {
    if (sgn(g->spacing) <= 0) throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive");
    if (sgn(g->radius) <= 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
  } else if (auto* e = std::get_if<ExplicitList>(&kind)) {
    for (const auto& [c, r] : e->balls)
      if (sgn(r) <= 0) throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
  }
}

namespace {

bool coordinate_space(const Space& s) {
  return s.kind() == SpaceKind::UnitInterval || s.kind() == SpaceKind::Circle;
}

// Maps a coordinate candidate to a point of the ball, or nullopt if it falls outside the space.
std::optional<Point> coordinate_point(const Space& s, const Rational& v) {
  if (s.kind() == SpaceKind::UnitInterval) {
    if (sgn(v) < 0 || v > 1) return std::nullopt;
    return Point::real(v);
  }
  if (s.circle_metric() == CircleMetric::Literal && (sgn(v) < 0 || v >= 1)) return std::nullopt;
  return Point::angle(v);
}

mpz_class floor_z(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

mpz_class ceil_z(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return c;
}

void push_unique(std::vector<Point>& out, Point p) {
  if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
}

std::vector<Point> sample_coordinate_ball(const Space& s, const Rational& c, const Rational& r, std::size_t count,
                                          SampleLattice lattice, std::uint64_t seed) {
  std::vector<Point> out;
  const Rational lo = c - r;
  const Rational hi = c + r;
  auto inside = [&](const Rational& v) {
    if (!(lo < v && v < hi)) return false;
    return true;
  };
  switch (lattice) {
    case SampleLattice::Dyadic: {
      for (unsigned j = 0; j <= 62 && out.size() < count; ++j) {
        mpz_class scale = mpz_class(1) << j;
        Rational scale_q(scale);
        mpz_class k = floor_z(lo * scale_q) + 1;
        mpz_class k_end = ceil_z(hi * scale_q) - 1;
        if (j > 0 && k % 2 == 0) ++k;
        for (; k <= k_end && out.size() < count; k += (j == 0 ? 1 : 2)) {
          Rational v = make_rational(k, scale);
          if (!inside(v)) continue;
          if (auto p = coordinate_point(s, v)) push_unique(out, std::move(*p));
        }
      }
      break;
    }
    case SampleLattice::Uniform: {
      for (std::size_t i = 0; i < count; ++i) {
        Rational v = lo + (hi - lo) * make_rational(static_cast<long>(i + 1), static_cast<long>(count + 1));
        if (auto p = coordinate_point(s, v)) push_unique(out, std::move(*p));
      }
      break;
    }
    case SampleLattice::Random: {
      std::mt19937_64 rng(seed);
      constexpr unsigned long kResolution = 1ul << 32;
      for (std::size_t tries = 0; out.size() < count && tries < 4 * count; ++tries) {
        unsigned long u = 1 + rng() % (kResolution - 1);
        Rational v = lo + (hi - lo) * Rational(mpz_class(u), mpz_class(kResolution));
        v.canonicalize();
        if (auto p = coordinate_point(s, v)) push_unique(out, std::move(*p));
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<Point> sample_ball(const Space& space, const Point& center, const Rational& radius, std::size_t count,
                               SampleLattice lattice, std::uint64_t seed) {
  if (!belongs_to(center, space)) throw Error(ErrorKind::VariantMismatch, "ball centre is not in " + space.describe());
  switch (space.kind()) {
    case SpaceKind::UnitInterval: return sample_coordinate_ball(space, center.value(), radius, count, lattice, seed);
    case SpaceKind::Circle: return sample_coordinate_ball(space, center.turns(), radius, count, lattice, seed);
    case SpaceKind::Finite: {
      std::vector<Point> out;
      for (std::size_t e = 0; e < space.finite_size(); ++e)
        if (space.finite_metric(center.index(), e) < radius) out.push_back(Point::element(e));
      return out;
    }
    case SpaceKind::Shift: return {center};
  }
  return {center};
}

std::vector<OpenSet> materialize(const OpenSetSampler& sampler, const Space& space) {
  sampler.validate();
  std::vector<OpenSet> sets;
  auto add = [&](Point c, const Rational& r, std::uint64_t salt) {
    auto samples = sample_ball(space, c, r, sampler.points_per_set, sampler.lattice, sampler.seed + salt);
    if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "ball around " + c.describe() + " has no sample points");
    sets.push_back(OpenSet{std::move(c), r, std::move(samples)});
  };
  if (const auto* g = std::get_if<OpenSetSampler::BallGrid>(&sampler.kind)) {
    switch (space.kind()) {
      case SpaceKind::UnitInterval:
      case SpaceKind::Circle: {
        std::uint64_t salt = 0;
        for (Rational c = g->spacing / 2; space.kind() == SpaceKind::Circle ? c < 1 : c <= 1; c += g->spacing) {
          c.canonicalize();
          add(space.kind() == SpaceKind::Circle ? Point::angle(c) : Point::real(c), g->radius, salt++);
        }
        break;
      }
      case SpaceKind::Finite:
        for (std::size_t e = 0; e < space.finite_size(); ++e) add(Point::element(e), g->radius, e);
        break;
      case SpaceKind::Shift:
        throw Error(ErrorKind::InvalidArgument, "ball grids are not defined on shift spaces; use explicit balls");
    }
  } else if (const auto* list = std::get_if<OpenSetSampler::ExplicitList>(&sampler.kind)) {
    std::uint64_t salt = 0;
    for (const auto& [c, r] : list->balls) add(c, r, salt++);
  } else {
    if (space.kind() != SpaceKind::Finite) throw Error(ErrorKind::InvalidArgument, "FiniteAll sampler needs a finite space");
    for (std::size_t e = 0; e < space.finite_size(); ++e)
      sets.push_back(OpenSet{Point::element(e), Rational(0), {Point::element(e)}});
  }
  return sets;
}

std::vector<OpenSet> open_sets_from_points(const Space& space, const std::vector<Point>& candidates, const Rational& radius) {
  std::vector<OpenSet> sets;
  sets.reserve(candidates.size());
  for (const auto& c : candidates) {
    OpenSet set{c, radius, {c}};
    for (const auto& p : candidates) {
      if (p == c) continue;
      Distance d = point_distance(space, c, p);
      if (!d.upper_bound && d.value < radius) set.samples.push_back(p);
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<SetPair> all_set_pairs(std::size_t count) {
  std::vector<SetPair> pairs;
  pairs.reserve(count * (count + 1) / 2);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i; j < count; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// ---------------------------------------------------------------------------
// Set-valued detectors

namespace {

constexpr double kPrefilterMargin = 1e-9;

struct Tracked {
  OrbitSet orbit;
  std::vector<double> coords;
};

Tracked start_tracking(const MultiMapping& f, const Point& x, bool coords) {
  Tracked t{OrbitSet{0, FiniteSet::singleton(f.space(), x), false}, {}};
  if (coords) t.coords.push_back(approx_coordinate(x));
  return t;
}

void advance(const MultiMapping& f, Tracked& t, const OrbitPolicy& policy, bool coords) {
  t.orbit = step_orbit(f, t.orbit, policy);
  if (coords) {
    t.coords.clear();
    for (const auto& p : t.orbit.set.points()) t.coords.push_back(approx_coordinate(p));
  }
}

std::vector<std::size_t> set_key(const FiniteSet& s) {
  std::vector<std::size_t> key;
  key.reserve(s.size());
  for (const auto& p : s.points()) key.push_back(p.index());
  return key;
}

enum class PairSearch { Found, Cycled, HorizonHit };

// Exhaustive search on a finite space: the pair of orbit sets lives in the
// finite state space K(X) x K(X), so a repeated state means no future witness.
template <typename Accept>
PairSearch finite_pair_search(const MultiMapping& f, const Point& x, const Point& y, const DetectorParams& params,
                              Accept&& accept, std::uint64_t& n_out, Distance& d_out) {
  OrbitSet s{0, FiniteSet::singleton(f.space(), x), false};
  OrbitSet t{0, FiniteSet::singleton(f.space(), y), false};
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
  for (std::uint64_t n = 1;; ++n) {
    if (!params.exhaustive && n > params.horizon) return PairSearch::HorizonHit;
    s = step_orbit(f, s, params.policy);
    t = step_orbit(f, t, params.policy);
    Distance d = hausdorff_distance(s.set, t.set);
    if (!d.upper_bound && accept(d.value)) {
      n_out = n;
      d_out = std::move(d);
      return PairSearch::Found;
    }
    if (!seen.emplace(set_key(s.set), set_key(t.set)).second) return PairSearch::Cycled;
  }
}

struct SetOutcome {
  std::optional<Witness> witness;
  bool refuted = false;
  bool collapsed = false;
};

SetOutcome sensitivity_on_set(const MultiMapping& f, const Rational& delta, const OpenSet& set, std::size_t index,
                              const DetectorParams& params) {
  SetOutcome out;
  const auto& samples = set.samples;
  if (f.space().kind() == SpaceKind::Finite) {
    bool all_cycled = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      for (std::size_t j = i + 1; j < samples.size(); ++j) {
        std::uint64_t n = 0;
        Distance d;
        auto r = finite_pair_search(f, samples[i], samples[j], params, [&](const Rational& v) { return v > delta; }, n, d);
        if (r == PairSearch::Found) {
          out.witness = Witness{index, index, samples[i], samples[j], n, std::move(d)};
          return out;
        }
        if (r == PairSearch::HorizonHit) all_cycled = false;
      }
    }
    out.refuted = all_cycled;
    return out;
  }

  if (samples.size() < 2) return out;
  const bool coords = coordinate_space(f.space());
  const double delta_d = delta.get_d();
  std::vector<Tracked> tracked;
  tracked.reserve(samples.size());
  for (const auto& x : samples) tracked.push_back(start_tracking(f, x, coords));
  bool collapsed = true;
  for (std::uint64_t n = 1; n <= params.horizon; ++n) {
    for (auto& t : tracked) advance(f, t, params.policy, coords);
    for (std::size_t i = 1; i < tracked.size() && collapsed; ++i)
      collapsed = tracked[i].orbit.set == tracked[0].orbit.set;
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      for (std::size_t j = i + 1; j < tracked.size(); ++j) {
        if (coords && hausdorff_distance_approx(f.space(), tracked[i].coords, tracked[j].coords) <= delta_d - kPrefilterMargin)
          continue;
        Distance d = hausdorff_distance(tracked[i].orbit.set, tracked[j].orbit.set);
        if (!d.upper_bound && d.value > delta) {
          out.witness = Witness{index, index, samples[i], samples[j], n, std::move(d)};
          return out;
        }
      }
    }
  }
  out.collapsed = collapsed;
  return out;
}

std::string describe_set(const OpenSet& s) {
  return "B(" + s.center.describe() + ", " + to_string(s.radius) + ")";
}

std::string policy_name(const OrbitPolicy& p) {
  return p.mode == OrbitMode::ExactEnumeration ? "exact" : "pruned(" + to_string(p.tolerance) + ")";
}

Evidence assemble(std::vector<std::optional<Witness>> found, const std::vector<bool>& refuted, std::uint64_t horizon) {
  Evidence ev;
  ev.horizon = horizon;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i]) ev.witnesses.push_back(std::move(*found[i]));
    else if (refuted[i]) ev.refuted.push_back(i);
    else ev.unresolved.push_back(i);
  }
  if (!ev.refuted.empty()) ev.verdict = Verdict::Refuted;
  else if (ev.unresolved.empty() && !found.empty()) ev.verdict = Verdict::Established;
  else ev.verdict = Verdict::Undetermined;
  return ev;
}

void require_positive(const Rational& q, const char* name) {
  if (sgn(q) <= 0) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive");
}

}  // namespace

Evidence test_sensitivity(const MultiMapping& f, const Rational& delta, std::span<const OpenSet> sets,
                          const DetectorParams& params) {
  require_positive(delta, "delta");
  params.policy.validate();
  std::vector<SetOutcome> outcomes(sets.size());
  detail::parallel_for(sets.size(), params.threads,
                       [&](std::size_t i) { outcomes[i] = sensitivity_on_set(f, delta, sets[i], i, params); });

  std::vector<std::optional<Witness>> found;
  std::vector<bool> refuted;
  for (auto& o : outcomes) {
    found.push_back(std::move(o.witness));
    refuted.push_back(o.refuted);
  }
  Evidence ev = assemble(std::move(found), refuted, params.horizon);
  for (std::size_t i : ev.unresolved)
    if (outcomes[i].collapsed)
      ev.notes.push_back("set " + std::to_string(i) + " " + describe_set(sets[i]) +
                         ": every sampled orbit coincides for n = 1.." + std::to_string(params.horizon) +
                         ", so no pair separates");
  for (std::size_t i : ev.refuted)
    ev.notes.push_back("set " + std::to_string(i) + " " + describe_set(sets[i]) +
                       ": exhaustive search, every pair orbit cycles without exceeding delta");
  ev.params = {{"property", "sensitivity"}, {"delta", to_string(delta)}, {"horizon", std::to_string(params.horizon)},
               {"sets", std::to_string(sets.size())}, {"policy", policy_name(params.policy)},
               {"exhaustive", params.exhaustive ? "true" : "false"}};
  return ev;
}

Evidence test_sensitivity(const MultiMapping& f, const Rational& delta, const OpenSetSampler& sampler,
                          const DetectorParams& params) {
  auto sets = materialize(sampler, f.space());
  return test_sensitivity(f, delta, sets, params);
}

Evidence test_accessibility(const MultiMapping& f, const Rational& epsilon, std::span<const OpenSet> sets,
                            std::span<const SetPair> pairs, const DetectorParams& params) {
  require_positive(epsilon, "epsilon");
  params.policy.validate();
  for (const auto& [u, v] : pairs)
    if (u >= sets.size() || v >= sets.size()) throw Error(ErrorKind::InvalidArgument, "set pair index out of range");

  std::vector<std::optional<Witness>> found(pairs.size());
  std::vector<bool> refuted(pairs.size(), false);

  if (f.space().kind() == SpaceKind::Finite) {
    detail::parallel_for(pairs.size(), params.threads, [&](std::size_t k) {
      const auto& [u, v] = pairs[k];
      bool all_cycled = true;
      for (const auto& x : sets[u].samples) {
        for (const auto& y : sets[v].samples) {
          std::uint64_t n = 0;
          Distance d;
          auto r = finite_pair_search(f, x, y, params, [&](const Rational& q) { return q < epsilon; }, n, d);
          if (r == PairSearch::Found) {
            found[k] = Witness{u, v, x, y, n, std::move(d)};
            return;
          }
          if (r == PairSearch::HorizonHit) all_cycled = false;
        }
      }
      refuted[k] = all_cycled;
    });
  } else {
    const bool coords = coordinate_space(f.space());
    const double eps_d = epsilon.get_d();
    std::vector<std::vector<Tracked>> tracked(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s)
      for (const auto& x : sets[s].samples) tracked[s].push_back(start_tracking(f, x, coords));

    std::vector<std::size_t> open(pairs.size());
    for (std::size_t k = 0; k < open.size(); ++k) open[k] = k;
    for (std::uint64_t n = 1; n <= params.horizon && !open.empty(); ++n) {
      std::vector<char> needed(sets.size(), 0);
      for (std::size_t k : open) needed[pairs[k].first] = needed[pairs[k].second] = 1;
      detail::parallel_for(sets.size(), params.threads, [&](std::size_t s) {
        if (!needed[s]) return;
        for (auto& t : tracked[s]) advance(f, t, params.policy, coords);
      });
      // Sets not advanced this round are never needed again: open only shrinks.
      detail::parallel_for(open.size(), params.threads, [&](std::size_t idx) {
        const std::size_t k = open[idx];
        const auto& [u, v] = pairs[k];
        for (std::size_t i = 0; i < tracked[u].size(); ++i) {
          for (std::size_t j = 0; j < tracked[v].size(); ++j) {
            const auto& a = tracked[u][i];
            const auto& b = tracked[v][j];
            if (coords && hausdorff_distance_approx(f.space(), a.coords, b.coords) >= eps_d + kPrefilterMargin) continue;
            Distance d = hausdorff_distance(a.orbit.set, b.orbit.set);
            if (!d.upper_bound && d.value < epsilon) {
              found[k] = Witness{u, v, sets[u].samples[i], sets[v].samples[j], n, std::move(d)};
              return;
            }
          }
        }
      });
      std::erase_if(open, [&](std::size_t k) { return found[k].has_value(); });
    }
  }

  Evidence ev = assemble(std::move(found), refuted, params.horizon);
  for (std::size_t k : ev.refuted)
    ev.notes.push_back("pair " + std::to_string(k) + " (" + describe_set(sets[pairs[k].first]) + ", " +
                       describe_set(sets[pairs[k].second]) + "): exhaustive search, orbits never come within epsilon");
  ev.params = {{"property", "accessibility"}, {"epsilon", to_string(epsilon)}, {"horizon", std::to_string(params.horizon)},
               {"sets", std::to_string(sets.size())}, {"pairs", std::to_string(pairs.size())},
               {"policy", policy_name(params.policy)}, {"exhaustive", params.exhaustive ? "true" : "false"}};
  return ev;
}

Evidence test_accessibility(const MultiMapping& f, const Rational& epsilon, const OpenSetSampler& sampler,
                            const DetectorParams& params) {
  auto sets = materialize(sampler, f.space());
  auto pairs = all_set_pairs(sets.size());
  return test_accessibility(f, epsilon, sets, pairs, params);
}

KatoReport kato_verdict(const MultiMapping& f, const Rational& delta, const Rational& epsilon,
                        std::span<const OpenSet> sets, std::span<const SetPair> pairs, const DetectorParams& params) {
  KatoReport r;
  r.sensitivity = test_sensitivity(f, delta, sets, params);
  r.accessibility = test_accessibility(f, epsilon, sets, pairs, params);
  r.combined = combine(r.sensitivity.verdict, r.accessibility.verdict);
  return r;
}

KatoReport kato_verdict(const MultiMapping& f, const Rational& delta, const Rational& epsilon,
                        const OpenSetSampler& sampler, const DetectorParams& params) {
  auto sets = materialize(sampler, f.space());
  auto pairs = all_set_pairs(sets.size());
  return kato_verdict(f, delta, epsilon, sets, pairs, params);
}

// ---------------------------------------------------------------------------
// Classical single-map detectors. Scalar orbits and the ground metric only;
// deliberately share no code with the set-valued search above.

namespace {

template <typename Accept>
PairSearch classical_finite_pair(const SelfMap& f, const Space& space, Point x, Point y, const DetectorParams& params,
                                 Accept&& accept, std::uint64_t& n_out, Distance& d_out) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::uint64_t n = 1;; ++n) {
    if (!params.exhaustive && n > params.horizon) return PairSearch::HorizonHit;
    x = eval_map(f, space, x);
    y = eval_map(f, space, y);
    Distance d = point_distance(space, x, y);
    if (!d.upper_bound && accept(d.value)) {
      n_out = n;
      d_out = std::move(d);
      return PairSearch::Found;
    }
    if (!seen.emplace(x.index(), y.index()).second) return PairSearch::Cycled;
  }
}

}  // namespace

Evidence classical_sensitivity(const SelfMap& f, const Space& space, const Rational& delta,
                               std::span<const OpenSet> sets, const DetectorParams& params) {
  require_positive(delta, "delta");
  if (!f.compatible_with(space)) throw Error(ErrorKind::VariantMismatch, f.describe() + " is not a self-map of " + space.describe());
  std::vector<std::optional<Witness>> found(sets.size());
  std::vector<bool> refuted(sets.size(), false);
  std::vector<bool> collapsed(sets.size(), false);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& samples = sets[s].samples;
    if (space.kind() == SpaceKind::Finite) {
      bool all_cycled = true;
      for (std::size_t i = 0; i < samples.size() && !found[s]; ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
          std::uint64_t n = 0;
          Distance d;
          auto r = classical_finite_pair(f, space, samples[i], samples[j], params, [&](const Rational& v) { return v > delta; }, n, d);
          if (r == PairSearch::Found) {
            found[s] = Witness{s, s, samples[i], samples[j], n, std::move(d)};
            break;
          }
          if (r == PairSearch::HorizonHit) all_cycled = false;
        }
      }
      refuted[s] = !found[s] && all_cycled;
      continue;
    }
    std::vector<Point> current = samples;
    bool same = true;
    for (std::uint64_t n = 1; n <= params.horizon && !found[s]; ++n) {
      for (auto& p : current) p = eval_map(f, space, p);
      for (std::size_t i = 1; i < current.size(); ++i) same = same && current[i] == current[0];
      for (std::size_t i = 0; i < current.size() && !found[s]; ++i) {
        for (std::size_t j = i + 1; j < current.size(); ++j) {
          Distance d = point_distance(space, current[i], current[j]);
          if (!d.upper_bound && d.value > delta) {
            found[s] = Witness{s, s, samples[i], samples[j], n, std::move(d)};
            break;
          }
        }
      }
    }
    collapsed[s] = same && samples.size() >= 2;
  }
  Evidence ev = assemble(std::move(found), refuted, params.horizon);
  for (std::size_t i : ev.unresolved)
    if (collapsed[i])
      ev.notes.push_back("set " + std::to_string(i) + " " + describe_set(sets[i]) +
                         ": every sampled orbit coincides for n = 1.." + std::to_string(params.horizon) +
                         ", so no pair separates");
  ev.params = {{"property", "classical sensitivity"}, {"map", f.describe()}, {"delta", to_string(delta)},
               {"horizon", std::to_string(params.horizon)}, {"sets", std::to_string(sets.size())}};
  return ev;
}

Evidence classical_accessibility(const SelfMap& f, const Space& space, const Rational& epsilon,
                                 std::span<const OpenSet> sets, std::span<const SetPair> pairs,
                                 const DetectorParams& params) {
  require_positive(epsilon, "epsilon");
  if (!f.compatible_with(space)) throw Error(ErrorKind::VariantMismatch, f.describe() + " is not a self-map of " + space.describe());
  for (const auto& [u, v] : pairs)
    if (u >= sets.size() || v >= sets.size()) throw Error(ErrorKind::InvalidArgument, "set pair index out of range");
  std::vector<std::optional<Witness>> found(pairs.size());
  std::vector<bool> refuted(pairs.size(), false);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [u, v] = pairs[k];
    const auto& xs = sets[u].samples;
    const auto& ys = sets[v].samples;
    if (space.kind() == SpaceKind::Finite) {
      bool all_cycled = true;
      for (std::size_t i = 0; i < xs.size() && !found[k]; ++i) {
        for (std::size_t j = 0; j < ys.size(); ++j) {
          std::uint64_t n = 0;
          Distance d;
          auto r = classical_finite_pair(f, space, xs[i], ys[j], params, [&](const Rational& q) { return q < epsilon; }, n, d);
          if (r == PairSearch::Found) {
            found[k] = Witness{u, v, xs[i], ys[j], n, std::move(d)};
            break;
          }
          if (r == PairSearch::HorizonHit) all_cycled = false;
        }
      }
      refuted[k] = !found[k] && all_cycled;
      continue;
    }
    std::vector<Point> cx = xs, cy = ys;
    for (std::uint64_t n = 1; n <= params.horizon && !found[k]; ++n) {
      for (auto& p : cx) p = eval_map(f, space, p);
      for (auto& p : cy) p = eval_map(f, space, p);
      for (std::size_t i = 0; i < cx.size() && !found[k]; ++i) {
        for (std::size_t j = 0; j < cy.size(); ++j) {
          Distance d = point_distance(space, cx[i], cy[j]);
          if (!d.upper_bound && d.value < epsilon) {
            found[k] = Witness{u, v, xs[i], ys[j], n, std::move(d)};
            break;
          }
        }
      }
    }
  }
  Evidence ev = assemble(std::move(found), refuted, params.horizon);
  ev.params = {{"property", "classical accessibility"}, {"map", f.describe()}, {"epsilon", to_string(epsilon)},
               {"horizon", std::to_string(params.horizon)}, {"pairs", std::to_string(pairs.size())}};
  return ev;
}

Rational estimate_sensitivity_constant(const MultiMapping& f, std::span<const OpenSet> sets, const DetectorParams& params,
                                       unsigned steps) {
  if (steps == 0 || steps > 40) throw Error(ErrorKind::InvalidArgument, "bisection steps must lie in [1, 40]");
  const Rational diameter = f.space().diameter();
  const long grid = 1L << steps;
  auto delta_at = [&](long j) -> Rational { return diameter * make_rational(j, grid); };
  auto holds = [&](long j) { return test_sensitivity(f, delta_at(j), sets, params).verdict == Verdict::Established; };
  if (sgn(diameter) == 0 || !holds(1)) return Rational(0);
  long lo = 1, hi = grid;  // d_H never exceeds the diameter, so the top grid point fails
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (holds(mid)) lo = mid;
    else hi = mid;
  }
  return delta_at(lo);
}

// ---------------------------------------------------------------------------
// Hypothesis checkers

namespace {

std::optional<Point> constant_value(const SelfMap& m, const Space& s) {
  return std::visit(
      [&](const auto& f) -> std::optional<Point> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SelfMap::PiecewiseLinear>) {
          const auto& y0 = f.breakpoints.front().second;
          for (const auto& [x, y] : f.breakpoints)
            if (y != y0) return std::nullopt;
          return Point::real(y0);
        } else if constexpr (std::is_same_v<T, SelfMap::FiniteTable>) {
          if (std::adjacent_find(f.images.begin(), f.images.end(), std::not_equal_to<>()) != f.images.end()) return std::nullopt;
          return Point::element(f.images.front());
        } else if constexpr (std::is_same_v<T, SelfMap::Composite>) {
          const auto& stages = *f.stages;
          for (std::size_t i = 0; i < stages.size(); ++i) {
            if (auto c = constant_value(stages[i], s)) {
              Point v = *c;
              for (std::size_t j = i + 1; j < stages.size(); ++j) v = eval_map(stages[j], s, v);
              return v;
            }
          }
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      m.variant());
}

}  // namespace

ConstantMapHypothesis check_constant_map_hypothesis(const MultiMapping& f) {
  if (f.space().kind() == SpaceKind::Shift)
    throw Error(ErrorKind::UndecidableForSpace, "constancy is not decidable for shift-space maps");
  ConstantMapHypothesis h;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (auto c = constant_value(f[i], f.space())) {
      h.holds = true;
      h.constant_index = i;
      h.c = *c;
      h.fixed = true;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (j != i && !(eval_map(f[j], f.space(), *c) == *c)) h.fixed = false;
      return h;
    }
  }
  return h;
}

Evidence check_contraction_condition(const MultiMapping& f, const Rational& lambda, std::span<const OpenSet> sets,
                                     std::span<const SetPair> pairs, std::size_t samples_per_pair) {
  if (sgn(lambda) <= 0 || lambda >= 1) throw Error(ErrorKind::InvalidArgument, "lambda must lie in (0, 1)");
  if (samples_per_pair == 0) throw Error(ErrorKind::InvalidArgument, "samples_per_pair must be positive");
  for (const auto& [u, v] : pairs)
    if (u >= sets.size() || v >= sets.size()) throw Error(ErrorKind::InvalidArgument, "set pair index out of range");
  const Space& space = f.space();
  std::vector<std::optional<Witness>> found(pairs.size());
  std::vector<bool> refuted(pairs.size(), false);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [u, v] = pairs[k];
    std::size_t tried = 0;
    bool exhausted = true;
    for (const auto& x : sets[u].samples) {
      for (const auto& y : sets[v].samples) {
        if (x == y) continue;
        if (tried == samples_per_pair) {
          exhausted = false;
          break;
        }
        ++tried;
        Distance dxy = point_distance(space, x, y);
        if (dxy.upper_bound) continue;
        const Rational bound = lambda * dxy.value;
        bool contracts = true;
        for (const auto& m : f.maps()) {
          Distance d = point_distance(space, eval_map(m, space, x), eval_map(m, space, y));
          if (d.upper_bound || !(d.value < bound)) {
            contracts = false;
            break;
          }
        }
        if (contracts) {
          found[k] = Witness{u, v, x, y, 1, std::move(dxy)};
          break;
        }
      }
      if (found[k] || !exhausted) break;
    }
    refuted[k] = !found[k] && exhausted && space.kind() == SpaceKind::Finite;
  }
  Evidence ev = assemble(std::move(found), refuted, 1);
  ev.params = {{"property", "contraction"}, {"lambda", to_string(lambda)}, {"pairs", std::to_string(pairs.size())},
               {"samples_per_pair", std::to_string(samples_per_pair)}};
  return ev;
}

Rational natural_density(const std::function<bool(std::uint64_t)>& in_set, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "density prefix length must be positive");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < n; ++i) count += in_set(i) ? 1 : 0;
  Rational d(mpz_class(std::to_string(count)), mpz_class(std::to_string(n)));
  d.canonicalize();
  return d;
}

}  // namespace kato
