#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "kato/detectors.hpp"
#include "kato/error.hpp"
#include "kato/golden.hpp"
#include "support.hpp"

using namespace kato;
using kato::testing::Gen;
using kato::testing::q;

namespace {

std::vector<OpenSet> grid(const Space& s, const Rational& spacing, const Rational& radius, std::size_t points = 16) {
  OpenSetSampler sampler{OpenSetSampler::BallGrid{spacing, radius}};
  sampler.points_per_set = points;
  return materialize(sampler, s);
}

DetectorParams horizon(std::uint64_t n, unsigned threads = 1) {
  DetectorParams p;
  p.horizon = n;
  p.threads = threads;
  return p;
}

// Largest j / 2^steps below the weakest set's best separation, by direct search over all sample pairs.
Rational brute_sensitivity_estimate(const MultiMapping& f, const std::vector<OpenSet>& sets, std::uint64_t n_max,
                                    unsigned steps) {
  std::optional<Rational> weakest;
  for (const auto& u : sets) {
    Rational best = 0;
    for (std::size_t i = 0; i < u.samples.size(); ++i)
      for (std::size_t j = i + 1; j < u.samples.size(); ++j)
        for (std::uint64_t n = 1; n <= n_max; ++n) {
          auto p = OrbitPolicy::exact(n);
          Rational d = hausdorff_distance(iterate_point(f, u.samples[i], n, p).set,
                                          iterate_point(f, u.samples[j], n, p).set).value;
          best = std::max(best, d);
        }
    weakest = weakest ? std::min(*weakest, best) : best;
  }
  const Rational scale = f.space().diameter();
  long j = 0;
  while (j + 1 < (1L << steps) && scale * make_rational(j + 1, 1L << steps) < *weakest) ++j;
  return scale * make_rational(j, 1L << steps);
}

Distance replay(const MultiMapping& f, const Witness& w) {
  const auto p = OrbitPolicy::exact(w.n);
  return hausdorff_distance(iterate_point(f, w.x, w.n, p).set, iterate_point(f, w.y, w.n, p).set);
}

bool in_samples(const OpenSet& s, const Point& p) {
  return std::find(s.samples.begin(), s.samples.end(), p) != s.samples.end();
}

Point iterate_single(const SelfMap& f, const Space& s, Point x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = eval_map(f, s, x);
  return x;
}

}  // namespace

TEST_CASE("verdict combination") {
  CHECK(combine(Verdict::Established, Verdict::Established) == Verdict::Established);
  CHECK(combine(Verdict::Established, Verdict::Undetermined) == Verdict::Undetermined);
  CHECK(combine(Verdict::Refuted, Verdict::Undetermined) == Verdict::Refuted);
  CHECK(combine(Verdict::Undetermined, Verdict::Refuted) == Verdict::Refuted);
  CHECK(std::string(to_string(Verdict::Refuted)) == "Refuted");
}

TEST_CASE("samplers stay inside their balls") {
  Space I = Space::unit_interval();
  for (auto lattice : {SampleLattice::Dyadic, SampleLattice::Uniform, SampleLattice::Random}) {
    auto pts = sample_ball(I, Point::real(q(1, 3)), q(1, 50), 16, lattice, 7);
    CHECK(pts.size() >= 2);
    CHECK(pts.size() <= 16);
    for (const auto& p : pts) CHECK(abs_diff(p.value(), q(1, 3)) < q(1, 50));
  }
  auto edge = sample_ball(I, Point::real(q(0)), q(1, 10), 8, SampleLattice::Dyadic, 0);
  for (const auto& p : edge) CHECK(p.value() < q(1, 10));

  Space D = Space::finite(4, {q(0), q(1), q(2), q(3), q(1), q(0), q(1), q(2), q(2), q(1), q(0), q(1), q(3), q(2), q(1), q(0)});
  auto ball = sample_ball(D, Point::element(1), q(3, 2), 100, SampleLattice::Dyadic, 0);
  CHECK(ball == std::vector<Point>{Point::element(0), Point::element(1), Point::element(2)});

  auto sets = grid(I, q(1, 100), q(1, 100));
  REQUIRE(sets.size() == 100);
  CHECK(sets.front().center == Point::real(q(1, 200)));
  CHECK(sets.back().center == Point::real(q(199, 200)));
  CHECK(all_set_pairs(100).size() == 5050);
  CHECK(materialize(OpenSetSampler{OpenSetSampler::FiniteAll{}}, Space::finite(3)).size() == 3);
}

TEST_CASE("tent pair sensitivity witnesses replay exactly") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 20), q(1, 40));
  Evidence ev = test_sensitivity(f, q(49, 100), sets, horizon(64));
  CHECK(ev.verdict == Verdict::Established);
  REQUIRE(ev.witnesses.size() == sets.size());
  for (const auto& w : ev.witnesses) {
    CHECK(in_samples(sets[w.u_index], w.x));
    CHECK(in_samples(sets[w.u_index], w.y));
    CHECK(w.n >= 1);
    CHECK(w.n <= 64);
    Distance d = replay(f, w);
    CHECK(d == w.distance);
    CHECK(d.value > q(49, 100));
  }
}

TEST_CASE("tent pair never separates beyond one half") {
  // F^n x = {a, 1-a}, so d_H(F^n x, F^n y) <= 1/2 for all x, y, n.
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 10), q(1, 20));
  Evidence ev = test_sensitivity(f, q(1, 2), sets, horizon(32));
  CHECK(ev.verdict == Verdict::Undetermined);
  CHECK(ev.witnesses.empty());
  CHECK(ev.refuted.empty());
}

TEST_CASE("sensitivity constant estimate") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 10), q(1, 20));
  CHECK(estimate_sensitivity_constant(f, sets, horizon(32), 10) == q(511, 1024));
  CHECK(estimate_sensitivity_constant(f, sets, horizon(32), 10) == brute_sensitivity_estimate(f, sets, 32, 10));
  auto c = golden::circle_pair();
  auto csets = grid(c.space(), q(1, 4), q(1, 8), 4);
  const Rational expected = brute_sensitivity_estimate(c, csets, 8, 6);
  CHECK(expected == q(1, 16));
  CHECK(estimate_sensitivity_constant(c, csets, horizon(8), 6) == expected);
}

TEST_CASE("verdicts are monotone in delta and epsilon") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 10), q(1, 20));
  auto pairs = all_set_pairs(sets.size());
  Gen g(43);
  for (int i = 0; i < 6; ++i) {
    Rational delta = g.unit(50) / 2;
    if (sgn(delta) == 0) continue;
    Evidence hi = test_sensitivity(f, delta, sets, horizon(32));
    if (hi.verdict != Verdict::Established) continue;
    Rational lower = delta * g.unit(10);
    if (sgn(lower) == 0) continue;
    CHECK(test_sensitivity(f, lower, sets, horizon(32)).verdict == Verdict::Established);
    // The witnesses for delta certify every smaller delta.
    for (const auto& w : hi.witnesses) CHECK(replay(f, w).value > lower);
  }
  Evidence tight = test_accessibility(f, q(1, 10), sets, pairs, horizon(32));
  CHECK(tight.verdict == Verdict::Established);
  for (const auto& w : tight.witnesses) CHECK(replay(f, w).value < q(1, 5));
  CHECK(test_accessibility(f, q(1, 5), sets, pairs, horizon(32)).verdict == Verdict::Established);
}

TEST_CASE("accessibility witnesses replay and lie in their pair") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 10), q(1, 20));
  auto pairs = all_set_pairs(sets.size());
  Evidence ev = test_accessibility(f, q(1, 10), sets, pairs, horizon(64));
  REQUIRE(ev.verdict == Verdict::Established);
  REQUIRE(ev.witnesses.size() == pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& w = ev.witnesses[k];
    CHECK(w.u_index == pairs[k].first);
    CHECK(w.v_index == pairs[k].second);
    CHECK(in_samples(sets[w.u_index], w.x));
    CHECK(in_samples(sets[w.v_index], w.y));
    Distance d = replay(f, w);
    CHECK(d == w.distance);
    CHECK(d.value < q(1, 10));
  }
}

TEST_CASE("single-map systems degrade to the classical detectors") {
  Space I = Space::unit_interval();
  auto tent = golden::tent_map();
  MultiMapping single(I, {tent});
  auto sets = grid(I, q(1, 10), q(1, 20));
  auto pairs = all_set_pairs(sets.size());

  Evidence ms = test_sensitivity(single, q(1, 4), sets, horizon(32));
  Evidence cs = classical_sensitivity(tent, I, q(1, 4), sets, horizon(32));
  CHECK(ms.verdict == cs.verdict);
  REQUIRE(ms.witnesses.size() == cs.witnesses.size());
  for (std::size_t i = 0; i < ms.witnesses.size(); ++i) {
    CHECK(ms.witnesses[i].x == cs.witnesses[i].x);
    CHECK(ms.witnesses[i].y == cs.witnesses[i].y);
    CHECK(ms.witnesses[i].n == cs.witnesses[i].n);
    CHECK(ms.witnesses[i].distance == cs.witnesses[i].distance);
  }

  Evidence ma = test_accessibility(single, q(1, 10), sets, pairs, horizon(32));
  Evidence ca = classical_accessibility(tent, I, q(1, 10), sets, pairs, horizon(32));
  CHECK(ma.verdict == ca.verdict);
  REQUIRE(ma.witnesses.size() == ca.witnesses.size());
  for (std::size_t i = 0; i < ma.witnesses.size(); ++i) {
    CHECK(ma.witnesses[i].x == ca.witnesses[i].x);
    CHECK(ma.witnesses[i].y == ca.witnesses[i].y);
    CHECK(ma.witnesses[i].n == ca.witnesses[i].n);
  }

  auto fin = golden::finite_cycle_pair();
  MultiMapping f1(fin.space(), {fin[0]});
  auto fsets = materialize(OpenSetSampler{OpenSetSampler::FiniteAll{}}, fin.space());
  auto fpairs = all_set_pairs(fsets.size());
  DetectorParams ex = horizon(4);
  ex.exhaustive = true;
  CHECK(test_accessibility(f1, q(1, 2), fsets, fpairs, ex).refuted ==
        classical_accessibility(fin[0], fin.space(), q(1, 2), fsets, fpairs, ex).refuted);
}

TEST_CASE("a constant map passes sensitivity and accessibility from the companion map") {
  auto f = golden::constant_tent();
  const Space& s = f.space();
  auto h = check_constant_map_hypothesis(f);
  CHECK(h.holds);
  CHECK(h.constant_index == std::optional<std::size_t>(0));
  CHECK(h.c == std::optional<Point>(Point::real(q(0))));
  CHECK(h.fixed);

  auto sets = grid(s, q(1, 10), q(1, 20));
  auto pairs = all_set_pairs(sets.size());
  auto tent = golden::tent_map();
  Evidence sf = test_sensitivity(f, q(49, 100), sets, horizon(64));
  Evidence sc = classical_sensitivity(tent, s, q(49, 100), sets, horizon(64));
  CHECK(sf.verdict == Verdict::Established);
  CHECK(sc.verdict == Verdict::Established);
  for (const auto& w : sf.witnesses) {
    const Rational a = iterate_single(tent, s, w.x, w.n).value();
    const Rational b = iterate_single(tent, s, w.y, w.n).value();
    CHECK(w.distance.value == std::min<Rational>(std::max(a, b), abs_diff(a, b)));
  }
  Evidence af = test_accessibility(f, q(1, 10), sets, pairs, horizon(64));
  Evidence ac = classical_accessibility(tent, s, q(1, 10), sets, pairs, horizon(64));
  CHECK(af.verdict == Verdict::Established);
  CHECK(ac.verdict == Verdict::Established);
  // A classical witness is a set-valued witness at the same time.
  for (const auto& w : ac.witnesses) CHECK(replay(f, w).value < q(1, 10));
}

TEST_CASE("constant-map hypothesis checks") {
  CHECK_FALSE(check_constant_map_hypothesis(golden::tent_pair()).holds);
  MultiMapping unfixed(Space::unit_interval(), {SelfMap::constant(q(1, 2)), golden::tent_map()});
  auto h = check_constant_map_hypothesis(unfixed);
  CHECK(h.holds);
  CHECK_FALSE(h.fixed);
  MultiMapping comp(Space::unit_interval(),
                    {SelfMap::composite({SelfMap::constant(q(1, 4)), golden::tent_map()}), golden::tent_map()});
  auto hc = check_constant_map_hypothesis(comp);
  CHECK(hc.holds);
  CHECK(hc.c == std::optional<Point>(Point::real(q(1, 2))));
  MultiMapping fin(Space::finite(3), {SelfMap::finite_table({2, 2, 2}), SelfMap::finite_table({1, 0, 2})});
  auto hf = check_constant_map_hypothesis(fin);
  CHECK(hf.holds);
  CHECK(hf.fixed);
  MultiMapping sh(Space::shift(16), {SelfMap::shift_power(1)});
  CHECK_THROWS_AS(check_constant_map_hypothesis(sh), Error);
}

TEST_CASE("finite searches refute exhaustively") {
  auto f = golden::finite_cycle_pair();
  auto sets = materialize(OpenSetSampler{OpenSetSampler::FiniteAll{}}, f.space());
  auto pairs = all_set_pairs(sets.size());
  DetectorParams ex = horizon(4);
  ex.exhaustive = true;
  Evidence sens = test_sensitivity(f, q(1, 2), sets, ex);
  CHECK(sens.verdict == Verdict::Refuted);
  CHECK(sens.refuted.size() == 3);

  Evidence acc = test_accessibility(f, q(1, 2), sets, pairs, ex);
  CHECK(acc.verdict == Verdict::Established);
  for (const auto& w : acc.witnesses) CHECK(replay(f, w).value == 0);

  // f1 is a 3-cycle: distinct points stay distinct forever.
  Evidence c1 = classical_accessibility(f[0], f.space(), q(1, 2), sets, pairs, ex);
  CHECK(c1.verdict == Verdict::Refuted);
  CHECK(c1.refuted == std::vector<std::size_t>{1, 2, 4});

  // Without the exhaustive flag a horizon hit leaves the verdict open.
  Evidence capped = classical_accessibility(f[0], f.space(), q(1, 2), sets, pairs, horizon(2));
  CHECK(capped.verdict == Verdict::Undetermined);
}

TEST_CASE("thread count does not change results") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 20), q(1, 40));
  auto pairs = all_set_pairs(sets.size());
  Evidence a = test_accessibility(f, q(1, 10), sets, pairs, horizon(64, 1));
  Evidence b = test_accessibility(f, q(1, 10), sets, pairs, horizon(64, 4));
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
    CHECK(a.witnesses[i].x == b.witnesses[i].x);
    CHECK(a.witnesses[i].y == b.witnesses[i].y);
    CHECK(a.witnesses[i].n == b.witnesses[i].n);
  }
  Evidence s1 = test_sensitivity(f, q(49, 100), sets, horizon(64, 1));
  Evidence s4 = test_sensitivity(f, q(49, 100), sets, horizon(64, 3));
  REQUIRE(s1.witnesses.size() == s4.witnesses.size());
  for (std::size_t i = 0; i < s1.witnesses.size(); ++i) CHECK(s1.witnesses[i].n == s4.witnesses[i].n);
}

TEST_CASE("plateau single maps collapse on half intervals") {
  auto f = golden::plateau_pair();
  const Space& s = f.space();
  Gen g(47);
  for (int i = 0; i < 200; ++i) {
    Rational x = q(1, 2) + g.unit(500) / 2;
    if (x == q(1, 2)) continue;
    for (std::uint64_t n = 1; n <= 20; ++n) CHECK(iterate_single(f[0], s, Point::real(x), n) == Point::real(q(1)));
  }
  std::vector<OpenSet> upper{OpenSet{Point::real(q(3, 4)), q(1, 4),
                                     sample_ball(s, Point::real(q(3, 4)), q(1, 4), 16, SampleLattice::Dyadic, 0)}};
  for (Rational delta : {q(1, 100), q(1, 4), q(49, 100)}) {
    Evidence e = classical_sensitivity(f[0], s, delta, upper, horizon(64));
    CHECK(e.verdict == Verdict::Undetermined);
    CHECK(e.witnesses.empty());
  }
}

TEST_CASE("circle contraction condition") {
  auto f = golden::circle_pair();
  Gen g(53);
  std::vector<OpenSet> sets;
  for (int i = 0; i < 200; ++i) {
    Point p = Point::angle(g.turns(10000));
    sets.push_back(OpenSet{p, q(0), {p}});
  }
  std::vector<SetPair> pairs;
  for (std::size_t i = 0; i + 1 < sets.size(); i += 2) pairs.emplace_back(i, i + 1);
  Evidence e = check_contraction_condition(f, q(2, 3), sets, pairs, 1);
  // Coincident draws have no x != y to offer; they stay unresolved.
  CHECK(e.witnesses.size() + e.unresolved.size() == pairs.size());
  for (const auto& w : e.witnesses) {
    const Rational d = point_distance(f.space(), w.x, w.y).value;
    for (const auto& m : f.maps())
      CHECK(point_distance(f.space(), eval_map(m, f.space(), w.x), eval_map(m, f.space(), w.y)).value < q(2, 3) * d);
  }
  CHECK(check_contraction_condition(f, q(1, 2), sets, pairs, 1).verdict != Verdict::Established);

  // Identity on a finite space never contracts; all candidates tried, so Refuted.
  MultiMapping id(Space::finite(3), {SelfMap::finite_table({0, 1, 2})});
  auto fsets = materialize(OpenSetSampler{OpenSetSampler::FiniteAll{}}, id.space());
  std::vector<SetPair> fp{{0, 1}};
  CHECK(check_contraction_condition(id, q(2, 3), fsets, fp, 10).verdict == Verdict::Refuted);
}

TEST_CASE("natural density") {
  CHECK(natural_density([](std::uint64_t i) { return i % 2 == 0; }, 10) == q(1, 2));
  CHECK(natural_density([](std::uint64_t i) { return i % 3 == 0; }, 10) == q(2, 5));
  CHECK(natural_density([](std::uint64_t) { return false; }, 7) == 0);
  CHECK(natural_density([](std::uint64_t i) { return omega_bit(i); }, omega_block_zero_start(10)) ==
        q((1L << 11) - 2, 2 * ((1L << 10) - 1) + 45));
  // Intersections of two density-one-half sets need not have density one quarter.
  auto even = [](std::uint64_t i) { return i % 2 == 0; };
  CHECK(natural_density([&](std::uint64_t i) { return even(i) && i % 4 == 0; }, 1000) == q(1, 4));
  CHECK(natural_density([&](std::uint64_t i) { return even(i) && i % 2 == 1; }, 1000) == 0);
}

TEST_CASE("argument validation") {
  auto f = golden::tent_pair();
  auto sets = grid(f.space(), q(1, 2), q(1, 4));
  std::vector<SetPair> bad{{0, 5}};
  CHECK_THROWS_AS(test_sensitivity(f, q(0), sets), Error);
  CHECK_THROWS_AS(test_accessibility(f, q(-1, 10), sets, all_set_pairs(sets.size())), Error);
  CHECK_THROWS_AS(test_accessibility(f, q(1, 10), sets, bad), Error);
  CHECK_THROWS_AS(classical_accessibility(f[0], f.space(), q(1, 10), sets, bad), Error);
}
