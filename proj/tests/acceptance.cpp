// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kato/conjugacy.hpp"
#include "kato/detectors.hpp"
#include "kato/golden.hpp"
#include "kato/orbit.hpp"
#include "kato/symbolic.hpp"

using namespace kato;

namespace {

// Pinned limits.
constexpr double kTentSeconds = 10.0;
constexpr double kFiniteSeconds = 1.0;
constexpr double kShiftSeconds = 30.0;
constexpr double kFloatDedup = 1e-9;
constexpr double kFloatAgreementPerStep = 1e-6;  // scaled by 2^n
constexpr int kMetricTriples = 10000;
constexpr int kLawSamples = 1000;

Rational q(long p, long d = 1) { return make_rational(p, d); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Point iterate_single(const SelfMap& f, const Space& s, Point x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = eval_map(f, s, x);
  return x;
}

Distance replay(const MultiMapping& f, const Point& x, const Point& y, std::uint64_t n) {
  const auto p = OrbitPolicy::exact(std::max<std::uint64_t>(n, 1));
  return hausdorff_distance(iterate_point(f, x, n, p).set, iterate_point(f, y, n, p).set);
}

std::vector<OpenSet> grid(const Space& s, const Rational& spacing, const Rational& radius, std::size_t points = 16) {
  OpenSetSampler sampler{OpenSetSampler::BallGrid{spacing, radius}};
  sampler.points_per_set = points;
  return materialize(sampler, s);
}

DetectorParams horizon(std::uint64_t n, bool exhaustive = false) {
  DetectorParams p;
  p.horizon = n;
  p.exhaustive = exhaustive;
  return p;
}

Rational random_unit(std::mt19937_64& rng, long max_den) {
  long d = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
  long n = static_cast<long>(rng() % static_cast<std::uint64_t>(d + 1));
  return q(n, d);
}

// ---------------------------------------------------------------------------

Outcome tent_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const MultiMapping f = golden::tent_pair();
  const auto sets = grid(f.space(), q(1, 100), q(1, 100));
  const auto pairs = all_set_pairs(sets.size());
  o.require(sets.size() == 100 && sets.front().center == Point::real(q(1, 200)), "unexpected grid");
  KatoReport k = kato_verdict(f, q(49, 100), q(1, 10), sets, pairs, horizon(64));
  o.require(k.sensitivity.verdict == Verdict::Established, "sensitivity not established");
  o.require(k.accessibility.verdict == Verdict::Established, "accessibility not established");
  o.require(k.combined == Verdict::Established, "Kato verdict not established");

  std::size_t separated = 0;
  for (const auto& w : k.sensitivity.witnesses) {
    Distance d = replay(f, w.x, w.y, w.n);
    if (!d.upper_bound && d.value >= q(1, 2) && w.n <= 64) ++separated;
  }
  o.require(separated == sets.size(), "a sensitivity witness does not reach 1/2");

  // Each accessibility pair reaches F^n x = F^n y = {0, 1} for some n <= 64.
  const FiniteSet ends = FiniteSet::make(f.space(), {Point::real(q(0)), Point::real(q(1))});
  std::size_t landed = 0, immediate = 0;
  for (const auto& w : k.accessibility.witnesses) {
    Distance d = replay(f, w.x, w.y, w.n);
    if (!(d == w.distance) || !(d.value < q(1, 10))) continue;
    auto tx = point_trajectory(f, w.x, 64, OrbitPolicy::exact(64));
    auto ty = point_trajectory(f, w.y, 64, OrbitPolicy::exact(64));
    for (std::uint64_t n = 1; n <= 64; ++n) {
      if (tx[n].set == ends && ty[n].set == ends) {
        ++landed;
        break;
      }
    }
    if (iterate_point(f, w.x, w.n, OrbitPolicy::exact()).set == ends &&
        iterate_point(f, w.y, w.n, OrbitPolicy::exact()).set == ends)
      ++immediate;
  }
  o.require(landed == pairs.size(), "an accessibility pair never reaches {0,1}");
  const double secs = seconds_since(t0);
  o.require(secs < kTentSeconds, "runtime " + std::to_string(secs) + " s");
  if (o.pass)
    o.detail << "delta 49/100 on 100 balls, epsilon 1/10 on " << pairs.size() << " pairs, " << landed
             << " pairs reach {0,1} (" << immediate << " at the first witness time), " << secs << " s";
  return o;
}

Outcome tent_structural_law() {
  Outcome o;
  const MultiMapping f = golden::tent_pair();
  std::mt19937_64 rng(2);
  for (int i = 0; i < kLawSamples && o.pass; ++i) {
    const Point x = Point::real(random_unit(rng, 100000));
    auto traj = point_trajectory(f, x, 20, OrbitPolicy::exact(20));
    Point a = x, b = x;
    for (std::uint64_t n = 1; n <= 20; ++n) {
      a = eval_map(f[0], f.space(), a);
      b = eval_map(f[1], f.space(), b);
      if (!(traj[n].set == FiniteSet::make(f.space(), {a, b})) || a.value() + b.value() != 1) {
        o.require(false, "law fails at x = " + x.describe() + ", n = " + std::to_string(n));
        break;
      }
    }
  }
  if (o.pass) o.detail << kLawSamples << " random rationals, n <= 20, zero tolerance";
  return o;
}

Outcome plateau_reproduction() {
  Outcome o;
  const MultiMapping f = golden::plateau_pair();
  const Space& s = f.space();
  const SelfMap tent = golden::tent_map();
  const Point zero = Point::real(q(0)), one = Point::real(q(1));
  for (long j = 0; j < 1000 && o.pass; ++j) {
    const Point x = Point::real(q(j, 999));
    auto traj = point_trajectory(f, x, 20, OrbitPolicy::exact(20));
    for (std::uint64_t n = 2; n <= 20; ++n) {
      if (!(traj[n].set == FiniteSet::make(s, {zero, one, iterate_single(tent, s, x, n)}))) {
        o.require(false, "F^n x differs from {0,1,tent^n x} at x = " + x.describe());
        break;
      }
    }
  }
  for (long j = 1; j <= 500 && o.pass; ++j) {
    const Point x = Point::real(q(1, 2) + q(j, 1000));
    for (std::uint64_t n = 1; n <= 20; ++n)
      if (!(iterate_single(f[0], s, x, n) == one)) o.require(false, "f1^n x != 1 at " + x.describe());
  }
  // Balls inside (1/2, 1] of several radii.
  std::vector<OpenSet> upper;
  for (const auto& [c, r] : std::vector<std::pair<Rational, Rational>>{{q(3, 4), q(1, 4)}, {q(9, 10), q(1, 20)}, {q(51, 100), q(1, 100)}})
    upper.push_back(OpenSet{Point::real(c), r, sample_ball(s, Point::real(c), r, 16, SampleLattice::Dyadic, 0)});
  for (const auto& delta : {q(1, 1000), q(1, 10), q(1, 4), q(49, 100), q(499, 1000)}) {
    Evidence e = classical_sensitivity(f[0], s, delta, upper, horizon(64));
    o.require(e.witnesses.empty(), "f1 produced a sensitivity witness at delta " + to_string(delta));
  }
  const auto sets = grid(s, q(1, 100), q(1, 100));
  Evidence sens = test_sensitivity(f, q(49, 100), sets, horizon(64));
  o.require(sens.verdict == Verdict::Established, "F sensitivity not established at 49/100");
  if (o.pass) o.detail << "law on 1000 grid points, n in [2,20]; f1 silent on (1/2,1] for 5 deltas; F sensitive at 49/100";
  return o;
}

Outcome finite_example() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const MultiMapping f = golden::finite_cycle_pair();
  const Space& s = f.space();
  const FiniteSet whole = FiniteSet::make(s, {Point::element(0), Point::element(1), Point::element(2)});
  for (std::size_t x = 0; x < 3; ++x) {
    auto traj = point_trajectory(f, Point::element(x), 7, OrbitPolicy::exact(7));
    for (std::uint64_t n = 2; n <= 7; ++n) o.require(traj[n].set == whole, "F^n x is not the whole space");
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::uint64_t n = 1; n <= 3; ++n)
      o.require(!(iterate_single(f[i], s, Point::element(0), n) == iterate_single(f[i], s, Point::element(1), n)),
                "single-map orbits of 0 and 1 meet");
  const auto sets = materialize(OpenSetSampler{OpenSetSampler::FiniteAll{}}, s);
  const auto pairs = all_set_pairs(sets.size());
  const DetectorParams ex = horizon(8, true);
  Evidence a1 = classical_accessibility(f[0], s, q(1, 2), sets, pairs, ex);
  Evidence a2 = classical_accessibility(f[1], s, q(1, 2), sets, pairs, ex);
  Evidence af = test_accessibility(f, q(1, 2), sets, pairs, ex);
  o.require(a1.verdict == Verdict::Refuted, "f1 accessibility not refuted");
  o.require(a2.verdict == Verdict::Refuted, "f2 accessibility not refuted");
  o.require(af.verdict == Verdict::Established, "F accessibility not established");
  const double secs = seconds_since(t0);
  o.require(secs < kFiniteSeconds, "runtime " + std::to_string(secs) + " s");
  if (o.pass)
    o.detail << "F^n x = {0,1,2} for n = 2..7; f1, f2 Refuted on " << a1.refuted.size() << " pairs; F Established; "
             << secs * 1000 << " ms";
  return o;
}

Outcome shift_experiment() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  ShiftSystem sys(1000, 100);
  NonAccessibilityReport cert = nonaccessibility_certificate(sys, 200);
  o.require(!cert.first_failure && cert.certificates.size() == 200, "missing non-accessibility certificate");
  for (const auto& c : cert.certificates)
    if (!(c.l >= c.n && c.l <= 2 * c.n && omega_bit(c.l) && !c.hausdorff.upper_bound && c.hausdorff.value >= q(1, 2)))
      o.require(false, "bad certificate at n = " + std::to_string(c.n));

  const auto pairs = orbit_point_pairs(sys);
  Evidence s1 = sigma_accessibility_experiment(sys, q(1, 20), pairs, 200, 1);
  Evidence s2 = sigma_accessibility_experiment(sys, q(1, 20), pairs, 200, 2);
  o.require(s1.verdict == Verdict::Established, "sigma accessibility not established");
  o.require(s2.verdict == Verdict::Established, "sigma^2 accessibility not established");

  const Rational density = omega_density_at_block(10);
  o.require(density == q((1L << 11) - 2, 2 * ((1L << 10) - 1) + 45), "density " + to_string(density));
  const double secs = seconds_since(t0);
  o.require(secs < kShiftSeconds, "runtime " + std::to_string(secs) + " s");
  if (o.pass)
    o.detail << "200 certificates; sigma and sigma^2 on " << pairs.size() << " orbit-point pairs; density "
             << to_string(density) << "; pairs with theta need n = " << theta_pair_requirement(0, q(1, 20), 1)
             << "; " << secs << " s";
  return o;
}

Outcome circle_example() {
  Outcome o;
  const MultiMapping f = golden::circle_pair();
  const Space& s = f.space();
  std::mt19937_64 rng(6);
  std::vector<OpenSet> points;
  while (points.size() < 2000) {
    Point p = Point::angle(q(static_cast<long>(rng() % 1000000), 1000000));
    points.push_back(OpenSet{p, q(0), {p}});
  }
  std::vector<SetPair> cpairs;
  for (std::size_t i = 0; i < 1000; ++i) cpairs.emplace_back(2 * i, 2 * i + 1);
  Evidence c = check_contraction_condition(f, q(2, 3), points, cpairs, 1);
  o.require(c.verdict == Verdict::Established, "contraction condition not established");

  OpenSetSampler sampler{OpenSetSampler::BallGrid{q(1, 10), q(1, 20)}};
  sampler.points_per_set = 4;
  Evidence acc = test_accessibility(f, q(1, 1000), sampler, horizon(12));
  o.require(acc.verdict == Verdict::Established, "accessibility at 1/1000 not established");
  for (const auto& w : acc.witnesses) o.require(w.n <= 12, "witness beyond n = 12");

  std::size_t words = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& x = points[2 * i].center;
    const Point& y = points[2 * i + 1].center;
    const Rational d0 = point_distance(s, x, y).value;
    for (std::uint64_t n = 1; n <= 12; ++n) {
      auto wx = enumerate_words(f, x, n, OrbitPolicy::exact(12));
      auto wy = enumerate_words(f, y, n, OrbitPolicy::exact(12));
      o.require(wx.size() == (std::size_t{1} << n), "word count");
      Rational worst = 0;
      for (std::size_t w = 0; w < wx.size(); ++w) {
        worst = std::max(worst, point_distance(s, wx[w].image, wy[w].image).value);
        ++words;
      }
      Rational bound = d0;
      bound /= Rational(mpz_class(1) << static_cast<unsigned>(n));
      o.require(worst <= bound, "branch bound fails at n = " + std::to_string(n));
    }
  }
  if (o.pass)
    o.detail << "lambda 2/3 on 1000 pairs; epsilon 1/1000 on " << acc.witnesses.size() << " pairs with n <= 12; "
             << words << " word images within (1/2)^n d(x,y)";
  return o;
}

Outcome constant_pairing() {
  Outcome o;
  const MultiMapping f = golden::constant_tent();
  const Space& s = f.space();
  const SelfMap tent = golden::tent_map();
  const auto sets = grid(s, q(1, 100), q(1, 100));
  const auto pairs = all_set_pairs(sets.size());
  ConstantMapHypothesis h = check_constant_map_hypothesis(f);
  o.require(h.holds && h.fixed, "constant-map hypothesis not recognised");

  Evidence sf = test_sensitivity(f, q(49, 100), sets, horizon(64));
  Evidence sc = classical_sensitivity(tent, s, q(49, 100), sets, horizon(64));
  Evidence af = test_accessibility(f, q(1, 10), sets, pairs, horizon(64));
  Evidence ac = classical_accessibility(tent, s, q(1, 10), sets, pairs, horizon(64));
  o.require(sf.verdict == sc.verdict, "sensitivity verdicts differ");
  o.require(af.verdict == ac.verdict, "accessibility verdicts differ");
  o.require(sf.verdict == Verdict::Established && af.verdict == Verdict::Established, "verdicts not established");

  auto same = [&](const Evidence& a, const Evidence& b, const char* what) {
    o.require(a.witnesses.size() == b.witnesses.size(), std::string(what) + " witness counts differ");
    for (std::size_t i = 0; i < std::min(a.witnesses.size(), b.witnesses.size()); ++i) {
      const auto& u = a.witnesses[i];
      const auto& v = b.witnesses[i];
      if (!(u.x == v.x && u.y == v.y && u.n == v.n)) {
        o.require(false, std::string(what) + " witness " + std::to_string(i) + " differs");
        return;
      }
      const Rational ta = iterate_single(tent, s, u.x, u.n).value();
      const Rational tb = iterate_single(tent, s, u.y, u.n).value();
      const Rational formula = std::min<Rational>(std::max(ta, tb), abs_diff(ta, tb));
      const FiniteSet A = FiniteSet::make(s, {Point::real(q(0)), Point::real(ta)});
      const FiniteSet B = FiniteSet::make(s, {Point::real(q(0)), Point::real(tb)});
      o.require(hausdorff_distance(A, B).value == formula && u.distance.value == formula &&
                    v.distance.value == abs_diff(ta, tb),
                std::string(what) + " distance relation fails");
    }
  };
  same(sf, sc, "sensitivity");
  same(af, ac, "accessibility");
  if (o.pass)
    o.detail << sf.witnesses.size() << " sensitivity and " << af.witnesses.size()
             << " accessibility witnesses identical to the single-map run";
  return o;
}

Outcome conjugacy_suite() {
  Outcome o;
  const MultiMapping f = golden::tent_pair();
  const auto t = Homeomorphism::piecewise_linear({{q(0), q(0)}, {q(1, 2), q(3, 4)}, {q(1), q(1)}});
  const ConjugatePair pair = ConjugatePair::from(f, t);
  std::vector<Point> samples;
  for (long j = 0; j < 50; ++j) samples.push_back(Point::real(q(2 * j + 1, 100)));
  for (const auto& x : samples)
    for (std::uint64_t n = 1; n <= 6; ++n)
      o.require(t.apply(iterate_point(f, x, n, OrbitPolicy::exact()).set) ==
                    iterate_point(pair.g, t.apply(x), n, OrbitPolicy::exact()).set,
                "commutation fails at " + x.describe());

  const auto sets = grid(f.space(), q(1, 100), q(1, 100));
  PreservationReport r = preservation_suite(pair, q(49, 100), q(1, 10), sets, horizon(64));
  o.require(r.sensitivity_agrees && r.accessibility_agrees, "paired verdicts differ");
  o.require(r.sensitivity_f.verdict == Verdict::Established, "F sensitivity not established");

  const MultiMapping fin = golden::finite_cycle_pair();
  std::vector<Point> all{Point::element(0), Point::element(1), Point::element(2)};
  std::vector<std::size_t> perm{0, 1, 2};
  std::size_t perms = 0;
  do {
    ConjugatePair p = ConjugatePair::from(fin, Homeomorphism::permutation(fin.space(), perm));
    o.require(check_conjugacy(p, all, 7).verdict == Verdict::Established, "finite relabeling fails");
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (o.pass)
    o.detail << "50 points x 6 steps commute; delta_G " << to_string(r.delta_g) << ", epsilon_G "
             << to_string(r.epsilon_g) << " agree; " << perms << " relabelings of the finite system";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const MultiMapping tent = golden::tent_pair();
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational x = random_unit(rng, 100003);
    for (std::uint64_t n = 1; n <= 12; ++n) {
      auto exact = iterate_point(tent, Point::real(x), n, OrbitPolicy::exact());
      auto approx = iterate_point_approx(tent, x.get_d(), n, kFloatDedup);
      const double bound = kFloatAgreementPerStep * std::ldexp(1.0, static_cast<int>(n));
      // Pointwise: every float point near an exact point and vice versa.
      for (double a : approx.points) {
        double best = 2;
        for (const auto& p : exact.set.points()) best = std::min(best, std::fabs(a - p.value().get_d()));
        o.require(best <= bound, "float point far from the exact set");
      }
      for (const auto& p : exact.set.points()) {
        double best = 2;
        for (double a : approx.points) best = std::min(best, std::fabs(a - p.value().get_d()));
        o.require(best <= bound, "exact point far from the float set");
      }
      auto pruned = iterate_point(tent, Point::real(x), n, OrbitPolicy::pruned(q(1, 1000000000)));
      o.require(hausdorff_distance(exact.set, pruned.set).value.get_d() <= bound, "pruned rational set too far");
    }
  }

  ShiftSystem sys(1000, 100);
  struct Case {
    std::string name;
    MultiMapping f;
    std::vector<Point> points;
  };
  std::vector<Case> cases{
      {"tent", golden::tent_pair(), {Point::real(q(1, 3)), Point::real(q(2, 7)), Point::real(q(5, 11))}},
      {"plateau", golden::plateau_pair(), {Point::real(q(1, 3)), Point::real(q(3, 5))}},
      {"finite", golden::finite_cycle_pair(), {Point::element(0), Point::element(1), Point::element(2)}},
      {"shift", sys.mapping(), {sys.theta(), sys.omega(0), sys.omega(17)}},
      {"circle", golden::circle_pair(), {Point::angle(q(3, 7)), Point::angle(q(0))}},
      {"constant-tent", golden::constant_tent(), {Point::real(q(1, 5)), Point::real(q(9, 13))}},
  };
  std::size_t checked = 0;
  for (const auto& c : cases) {
    for (const auto& x : c.points) {
      for (std::uint64_t n = 0; n <= 8; ++n) {
        const FiniteSet inner = iterate_point(c.f, x, n, OrbitPolicy::exact()).set;
        for (std::uint64_t m = 0; n + m <= 8; ++m) {
          o.require(iterate_set(c.f, inner, m, OrbitPolicy::exact()).set ==
                        iterate_point(c.f, x, n + m, OrbitPolicy::exact()).set,
                    "semigroup law fails on " + c.name);
          ++checked;
        }
      }
    }
  }
  if (o.pass)
    o.detail << "float and pruned paths within 1e-6 * 2^n for n <= 12; semigroup law on " << checked
             << " (system, x, n, m) cases";
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  std::mt19937_64 rng(10);
  auto bit = [&] { return (rng() & 1) == 1; };
  auto point = [&](const Space& s) {
    switch (s.kind()) {
      case SpaceKind::UnitInterval: return Point::real(random_unit(rng, 64));
      case SpaceKind::Finite: return Point::element(rng() % s.finite_size());
      case SpaceKind::Circle: return Point::angle(random_unit(rng, 64));
      case SpaceKind::Shift: {
        std::vector<bool> bits(rng() % 10);
        for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bit();
        return Point::seq(SequenceSpec::prefix(bits, bit() ? SequenceSpec::omega() : SequenceSpec::theta()), rng() % 6);
      }
    }
    return Point::real(q(0));
  };
  const std::vector<Space> spaces{
      Space::unit_interval(),
      Space::finite(5),
      Space::finite(3, {q(0), q(1), q(2), q(1), q(0), q(1), q(2), q(1), q(0)}),
      Space::circle(CircleMetric::Literal),
      Space::circle(CircleMetric::Arc),
      Space::shift(32)};
  std::size_t literal_violations = 0;
  for (const auto& s : spaces) {
    const bool literal = s.kind() == SpaceKind::Circle && s.circle_metric() == CircleMetric::Literal;
    for (int i = 0; i < kMetricTriples; ++i) {
      Point x = point(s), y = point(s), z = point(s);
      const Rational dxy = point_distance(s, x, y).value, dyx = point_distance(s, y, x).value;
      const Rational dxz = point_distance(s, x, z).value, dyz = point_distance(s, y, z).value;
      o.require(sgn(dxy) >= 0 && dxy == dyx && (sgn(dxy) == 0) == (x == y), "ground metric axiom fails on " + s.describe());
      if (dxz > dxy + dyz) {
        if (literal) ++literal_violations;
        else o.require(false, "triangle inequality fails on " + s.describe());
      }
    }
    auto set = [&] {
      std::vector<Point> pts;
      for (std::size_t k = 0, n = 1 + rng() % 4; k < n; ++k) pts.push_back(point(s));
      return FiniteSet::make(s, pts);
    };
    for (int i = 0; i < kMetricTriples; ++i) {
      auto A = set(), B = set(), C = set();
      const Rational ab = hausdorff_distance(A, B).value;
      o.require(ab == hausdorff_distance(B, A).value && (sgn(ab) == 0) == (A == B), "d_H axiom fails on " + s.describe());
      if (hausdorff_distance(A, C).value > ab + hausdorff_distance(B, C).value) {
        if (literal) ++literal_violations;
        else o.require(false, "d_H triangle inequality fails on " + s.describe());
      }
    }
  }
  if (o.pass)
    o.detail << kMetricTriples << " triples per space and per d_H suite on " << spaces.size()
             << " spaces; literal circle triangle violations: " << literal_violations;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"tent pair reproduction", tent_reproduction},
      {"tent pair structural law", tent_structural_law},
      {"plateau pair reproduction", plateau_reproduction},
      {"finite-space example", finite_example},
      {"shift-space experiment", shift_experiment},
      {"circle example", circle_example},
      {"constant-map pairing", constant_pairing},
      {"conjugacy suite", conjugacy_suite},
      {"oracle equivalence", oracle_equivalence},
      {"metric axioms", metric_axioms},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
