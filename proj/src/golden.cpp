#include "kato/golden.hpp"

#include <chrono>
#include <random>

#include "kato/conjugacy.hpp"
#include "kato/detectors.hpp"
#include "kato/error.hpp"
#include "kato/orbit.hpp"
#include "kato/symbolic.hpp"

namespace kato::golden {

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

const char* verdict_of(bool ok) { return ok ? "Established" : "Refuted"; }

std::vector<OpenSet> tent_grid(const Space& s) {
  OpenSetSampler sampler{OpenSetSampler::BallGrid{q(1, 100), q(1, 100)}};
  return materialize(sampler, s);
}

OpenSet single_ball(const Space& s, Point c, const Rational& r, std::size_t count) {
  return OpenSet{c, r, sample_ball(s, c, r, count, SampleLattice::Dyadic, 0)};
}

DetectorParams params_with(std::uint64_t horizon, unsigned threads, bool exhaustive = false) {
  DetectorParams p;
  p.horizon = horizon;
  p.threads = threads;
  p.exhaustive = exhaustive;
  return p;
}

std::vector<Point> interval_grid(long denominator) {
  std::vector<Point> pts;
  for (long j = 0; j <= denominator; ++j) pts.push_back(Point::real(q(j, denominator)));
  return pts;
}

Point iterate_single(const SelfMap& f, const Space& s, Point x, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) x = eval_map(f, s, x);
  return x;
}

json kato_details(const KatoReport& k) {
  return json{{"sensitivity", io::encode(k.sensitivity, 3)}, {"accessibility", io::encode(k.accessibility, 3)},
              {"kato", to_string(k.combined)}};
}

void run_tent(SystemRun& r, unsigned threads) {
  const MultiMapping f = tent_pair();
  const auto sets = tent_grid(f.space());
  const auto pairs = all_set_pairs(sets.size());
  const DetectorParams params = params_with(64, threads);
  r.config = json{{"system", io::encode(f)}, {"delta", io::encode(q(49, 100))}, {"epsilon", io::encode(q(1, 10))},
                  {"grid", io::encode(q(1, 100))}, {"radius", io::encode(q(1, 100))}, {"horizon", 64},
                  {"homeomorphism", json{{"kind", "piecewise_linear"}, {"breakpoints", json::parse("[[0,0],[[1,2],[3,4]],[1,1]]")}}}};
  KatoReport k = kato_verdict(f, q(49, 100), q(1, 10), sets, pairs, params);
  r.checks["sensitivity"] = to_string(k.sensitivity.verdict);
  r.checks["accessibility"] = to_string(k.accessibility.verdict);
  r.checks["kato"] = to_string(k.combined);
  r.details = kato_details(k);

  // F^n(x) = {f1^n x, f2^n x} with f1^n x + f2^n x = 1.
  bool law = true;
  const OrbitPolicy exact = OrbitPolicy::exact(20);
  for (const auto& x : interval_grid(101)) {
    auto traj = point_trajectory(f, x, 20, exact);
    Point a = x, b = x;
    for (std::uint64_t n = 1; n <= 20 && law; ++n) {
      a = eval_map(f[0], f.space(), a);
      b = eval_map(f[1], f.space(), b);
      law = traj[n].set == FiniteSet::make(f.space(), {a, b}) && a.value() + b.value() == 1;
    }
  }
  r.checks["structural_law"] = verdict_of(law);

  Homeomorphism t = Homeomorphism::piecewise_linear({{q(0), q(0)}, {q(1, 2), q(3, 4)}, {q(1), q(1)}});
  ConjugatePair pair = ConjugatePair::from(f, t);
  std::vector<Point> samples;
  for (long j = 0; j < 50; ++j) samples.push_back(Point::real(q(2 * j + 1, 100)));
  Evidence conj = check_conjugacy(pair, samples, 6);
  r.checks["conjugacy"] = to_string(conj.verdict);
  PreservationReport pres = preservation_suite(pair, q(49, 100), q(1, 10), sets, params);
  r.checks["conjugate_sensitivity"] = to_string(pres.sensitivity_g.verdict);
  r.checks["conjugate_accessibility"] = to_string(pres.accessibility_g.verdict);
  r.details["conjugacy"] = io::encode(conj, 3);
  r.details["conjugate_system"] = io::encode(pair.g);
  r.details["preservation"] = json{{"delta_g", io::encode(pres.delta_g)}, {"epsilon_g", io::encode(pres.epsilon_g)},
                                   {"sensitivity_agrees", pres.sensitivity_agrees},
                                   {"accessibility_agrees", pres.accessibility_agrees}, {"notes", pres.notes}};
}

void run_plateau(SystemRun& r, unsigned threads) {
  const MultiMapping f = plateau_pair();
  const Space& s = f.space();
  const auto sets = tent_grid(s);
  const auto pairs = all_set_pairs(sets.size());
  const DetectorParams params = params_with(64, threads);
  r.config = json{{"system", io::encode(f)}, {"delta", io::encode(q(49, 100))}, {"epsilon", io::encode(q(1, 10))},
                  {"grid", io::encode(q(1, 100))}, {"radius", io::encode(q(1, 100))}, {"horizon", 64},
                  {"single_map_delta", io::encode(q(1, 4))}};
  KatoReport k = kato_verdict(f, q(49, 100), q(1, 10), sets, pairs, params);
  r.checks["sensitivity"] = to_string(k.sensitivity.verdict);
  r.checks["accessibility"] = to_string(k.accessibility.verdict);
  r.checks["kato"] = to_string(k.combined);
  r.details = kato_details(k);

  // F^n(x) = {0, 1, tent^n x} for n >= 2.
  const SelfMap tent = tent_map();
  bool law = true;
  for (const auto& x : interval_grid(101)) {
    auto traj = point_trajectory(f, x, 20, OrbitPolicy::exact(20));
    for (std::uint64_t n = 2; n <= 20 && law; ++n)
      law = traj[n].set == FiniteSet::make(s, {Point::real(q(0)), Point::real(q(1)), iterate_single(tent, s, x, n)});
  }
  r.checks["structural_law"] = verdict_of(law);

  std::vector<OpenSet> upper{single_ball(s, Point::real(q(3, 4)), q(1, 4), 16)};
  std::vector<OpenSet> lower{single_ball(s, Point::real(q(1, 4)), q(1, 4), 16)};
  Evidence f1 = classical_sensitivity(f[0], s, q(1, 4), upper, params);
  Evidence f2 = classical_sensitivity(f[1], s, q(1, 4), lower, params);
  r.checks["f1_sensitivity"] = to_string(f1.verdict);
  r.checks["f2_sensitivity"] = to_string(f2.verdict);
  r.details["f1_sensitivity"] = io::encode(f1, 3);
  r.details["f2_sensitivity"] = io::encode(f2, 3);
}

void run_finite(SystemRun& r, unsigned threads) {
  const MultiMapping f = finite_cycle_pair();
  const Space& s = f.space();
  OpenSetSampler sampler{OpenSetSampler::FiniteAll{}};
  const auto sets = materialize(sampler, s);
  const auto pairs = all_set_pairs(sets.size());
  const DetectorParams params = params_with(8, threads, true);
  r.config = json{{"system", io::encode(f)}, {"delta", io::encode(q(1, 2))}, {"epsilon", io::encode(q(1, 2))},
                  {"sampler", "all singletons"}, {"exhaustive", true},
                  {"homeomorphism", json{{"kind", "permutation"}, {"images", {1, 2, 0}}}}};
  KatoReport k = kato_verdict(f, q(1, 2), q(1, 2), sets, pairs, params);
  r.checks["sensitivity"] = to_string(k.sensitivity.verdict);
  r.checks["accessibility"] = to_string(k.accessibility.verdict);
  r.checks["kato"] = to_string(k.combined);
  r.details = kato_details(k);

  bool law = true;
  const FiniteSet whole = FiniteSet::make(s, {Point::element(0), Point::element(1), Point::element(2)});
  for (std::size_t x = 0; x < 3; ++x) {
    auto traj = point_trajectory(f, Point::element(x), 7, OrbitPolicy::exact(7));
    for (std::uint64_t n = 2; n <= 7; ++n) law = law && traj[n].set == whole;
  }
  r.checks["structural_law"] = verdict_of(law);

  Evidence a1 = classical_accessibility(f[0], s, q(1, 2), sets, pairs, params);
  Evidence a2 = classical_accessibility(f[1], s, q(1, 2), sets, pairs, params);
  r.checks["f1_accessibility"] = to_string(a1.verdict);
  r.checks["f2_accessibility"] = to_string(a2.verdict);
  r.details["f1_accessibility"] = io::encode(a1, 3);
  r.details["f2_accessibility"] = io::encode(a2, 3);

  ConjugatePair pair = ConjugatePair::from(f, Homeomorphism::permutation(s, {1, 2, 0}));
  Evidence conj = check_conjugacy(pair, {Point::element(0), Point::element(1), Point::element(2)}, 7);
  r.checks["conjugacy"] = to_string(conj.verdict);
  PreservationReport pres = preservation_suite(pair, q(1, 2), q(1, 2), sets, params);
  r.checks["conjugate_sensitivity"] = to_string(pres.sensitivity_g.verdict);
  r.checks["conjugate_accessibility"] = to_string(pres.accessibility_g.verdict);
  r.details["conjugate_system"] = io::encode(pair.g);
}

void run_shift(SystemRun& r, unsigned threads) {
  const std::uint64_t L = 1000, M = 100, N = 200;
  const Rational eps = q(1, 20);
  ShiftSystem sys(L, M);
  r.config = json{{"L", L}, {"M", M}, {"N", N}, {"epsilon", io::encode(eps)}, {"isolation_gap", io::encode(q(1, 2))},
                  {"cylinder", "11011110011111111000"}};

  NonAccessibilityReport cert = nonaccessibility_certificate(sys, N);
  r.checks["nonaccessibility_certificate"] = verdict_of(!cert.first_failure && cert.certificates.size() == N);
  json first = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(5, cert.certificates.size()); ++i)
    first.push_back(json{{"n", cert.certificates[i].n}, {"l", cert.certificates[i].l},
                         {"d_H", io::encode(cert.certificates[i].hausdorff)}});
  r.details["nonaccessibility_certificate"] = json{{"certificates", cert.certificates.size()},
                                                   {"enumeration_checked_through", cert.enumeration_checked_through},
                                                   {"first", std::move(first)}};

  // F on the pair ({theta}, {omega}) through the generic detector.
  const MultiMapping f = sys.mapping();
  std::vector<OpenSet> sets{OpenSet{sys.theta(), q(0), {sys.theta()}}, OpenSet{sys.omega(), q(0), {sys.omega()}}};
  std::vector<SetPair> pair{{0, 1}};
  Evidence acc = test_accessibility(f, q(1, 2), sets, pair, params_with(N, threads));
  r.checks["accessibility_theta_omega"] = to_string(acc.verdict);

  const auto orbit_pairs = orbit_point_pairs(sys);
  for (unsigned power : {1u, 2u}) {
    Evidence e = sigma_accessibility_experiment(sys, eps, orbit_pairs, N, power);
    const std::string key = power == 1 ? "sigma_accessibility" : "sigma2_accessibility";
    r.checks[key] = to_string(e.verdict);
    r.details[key] = io::encode(e, 3);
  }
  std::vector<std::pair<Point, Point>> theta_pairs;
  for (std::uint64_t m = 0; m <= M; ++m) theta_pairs.emplace_back(sys.theta(), sys.omega(m));
  Evidence theta = sigma_accessibility_experiment(sys, eps, theta_pairs, N, 1);
  r.checks["sigma_accessibility_theta_pairs"] = to_string(theta.verdict);
  r.details["sigma_accessibility_theta_pairs"] =
      json{{"unresolved", theta.unresolved.size()}, {"n_required_for_m0", theta_pair_requirement(0, eps, 1)}};

  CylinderReport cyl = verify_cylinder(sys, "11011110011111111000");
  r.checks["cylinder_isolates_omega"] = verdict_of(cyl.isolates_omega());
  Evidence iso = isolated_point_check(sys, q(1, 2));
  r.checks["theta_isolated"] = to_string(iso.verdict);
  r.details["theta_isolated"] = json{{"refuted_m", iso.refuted}, {"notes", iso.notes}};
  const Rational density = omega_density_at_block(10);
  r.checks["density_block_10"] = verdict_of(density == q((1L << 11) - 2, 2 * ((1L << 10) - 1) + 45));
  r.details["density_block_10"] = io::encode(density);
}

void run_circle(SystemRun& r, unsigned threads) {
  const MultiMapping f = circle_pair();
  const Space& s = f.space();
  r.config = json{{"system", io::encode(f)}, {"lambda", io::encode(q(2, 3))}, {"contraction_pairs", 1000},
                  {"epsilon", io::encode(q(1, 1000))}, {"horizon", 12}, {"grid", io::encode(q(1, 10))},
                  {"radius", io::encode(q(1, 20))}, {"seed", 0}};

  std::mt19937_64 rng(0);
  std::vector<OpenSet> singletons;
  for (int i = 0; i < 2000; ++i) {
    Point p = Point::angle(q(static_cast<long>(rng() % 1000000), 1000000));
    singletons.push_back(OpenSet{p, q(0), {p}});
  }
  std::vector<SetPair> cpairs;
  for (std::size_t i = 0; i < 1000; ++i) cpairs.emplace_back(2 * i, 2 * i + 1);
  Evidence contraction = check_contraction_condition(f, q(2, 3), singletons, cpairs, 1);
  r.checks["contraction"] = to_string(contraction.verdict);

  OpenSetSampler sampler{OpenSetSampler::BallGrid{q(1, 10), q(1, 20)}};
  sampler.points_per_set = 4;
  Evidence acc = test_accessibility(f, q(1, 1000), sampler, params_with(12, threads));
  r.checks["accessibility"] = to_string(acc.verdict);
  r.details["accessibility"] = io::encode(acc, 3);

  // Every branch word contracts by (1/2)^n.
  bool bound = true;
  const OrbitPolicy words = OrbitPolicy::exact(12);
  for (std::size_t i = 0; i < 10 && bound; ++i) {
    const Point& x = singletons[2 * i].center;
    const Point& y = singletons[2 * i + 1].center;
    const Rational d0 = point_distance(s, x, y).value;
    auto wx = enumerate_words(f, x, 12, words);
    auto wy = enumerate_words(f, y, 12, words);
    for (std::size_t w = 0; w < wx.size() && bound; ++w)
      bound = point_distance(s, wx[w].image, wy[w].image).value <= d0 / 4096;
  }
  r.checks["branch_bound"] = verdict_of(bound);
}

void run_constant_tent(SystemRun& r, unsigned threads) {
  const MultiMapping f = constant_tent();
  const Space& s = f.space();
  const SelfMap tent = tent_map();
  const auto sets = tent_grid(s);
  const auto pairs = all_set_pairs(sets.size());
  const DetectorParams params = params_with(64, threads);
  r.config = json{{"system", io::encode(f)}, {"delta", io::encode(q(49, 100))}, {"epsilon", io::encode(q(1, 10))},
                  {"grid", io::encode(q(1, 100))}, {"radius", io::encode(q(1, 100))}, {"horizon", 64}};

  ConstantMapHypothesis h = check_constant_map_hypothesis(f);
  r.checks["constant_map_hypothesis"] = verdict_of(h.holds && h.fixed);
  Evidence sf = test_sensitivity(f, q(49, 100), sets, params);
  Evidence sc = classical_sensitivity(tent, s, q(49, 100), sets, params);
  Evidence af = test_accessibility(f, q(1, 10), sets, pairs, params);
  Evidence ac = classical_accessibility(tent, s, q(1, 10), sets, pairs, params);
  r.checks["sensitivity"] = to_string(sf.verdict);
  r.checks["classical_sensitivity"] = to_string(sc.verdict);
  r.checks["accessibility"] = to_string(af.verdict);
  r.checks["classical_accessibility"] = to_string(ac.verdict);

  // d_H({0, a}, {0, b}) = min(max(a, b), |a - b|) <= |a - b|, so witnesses transfer.
  auto paired = [&](const Point& x, const Point& y, std::uint64_t n) {
    const Rational a = iterate_single(tent, s, x, n).value();
    const Rational b = iterate_single(tent, s, y, n).value();
    Distance d = hausdorff_distance(iterate_point(f, x, n, OrbitPolicy::exact(64)).set,
                                    iterate_point(f, y, n, OrbitPolicy::exact(64)).set);
    return std::pair{d.value == std::min<Rational>(std::max(a, b), abs_diff(a, b)), abs_diff(a, b)};
  };
  bool ok = sf.verdict == sc.verdict && af.verdict == ac.verdict;
  for (const auto& w : sf.witnesses) {
    auto [formula, scalar] = paired(w.x, w.y, w.n);
    ok = ok && formula && scalar >= w.distance.value;
  }
  for (const auto& w : ac.witnesses) {
    auto [formula, scalar] = paired(w.x, w.y, w.n);
    ok = ok && formula && scalar == w.distance.value && scalar < q(1, 10);
  }
  r.checks["pairing"] = verdict_of(ok);
}

}  // namespace

SelfMap tent_map() { return SelfMap::piecewise_linear({{q(0), q(0)}, {q(1, 2), q(1)}, {q(1), q(0)}}); }

MultiMapping tent_pair() {
  return MultiMapping(Space::unit_interval(),
                      {tent_map(), SelfMap::piecewise_linear({{q(0), q(1)}, {q(1, 2), q(0)}, {q(1), q(1)}})});
}

MultiMapping plateau_pair() {
  return MultiMapping(Space::unit_interval(), {SelfMap::piecewise_linear({{q(0), q(0)}, {q(1, 2), q(1)}, {q(1), q(1)}}),
                                               SelfMap::piecewise_linear({{q(0), q(1)}, {q(1, 2), q(1)}, {q(1), q(0)}})});
}

MultiMapping finite_cycle_pair() {
  return MultiMapping(Space::finite(3), {SelfMap::finite_table({1, 2, 0}), SelfMap::finite_table({2, 0, 1})});
}

MultiMapping circle_pair() {
  return MultiMapping(Space::circle(CircleMetric::Literal), {SelfMap::angle_scale(q(1, 2)), SelfMap::angle_scale(q(1, 3))});
}

MultiMapping constant_tent() { return MultiMapping(Space::unit_interval(), {SelfMap::constant(q(0)), tent_map()}); }

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names{"tent", "plateau", "finite", "shift", "circle", "constant-tent"};
  return names;
}

SystemRun run_system(const std::string& name, unsigned threads) {
  SystemRun r;
  r.name = name;
  r.checks = json::object();
  r.details = json::object();
  const auto start = std::chrono::steady_clock::now();
  if (name == "tent") run_tent(r, threads);
  else if (name == "plateau") run_plateau(r, threads);
  else if (name == "finite") run_finite(r, threads);
  else if (name == "shift") run_shift(r, threads);
  else if (name == "circle") run_circle(r, threads);
  else if (name == "constant-tent") run_constant_tent(r, threads);
  else throw Error(ErrorKind::InvalidArgument, "unknown golden system \"" + name + "\"");
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

json embedded_expectations() {
  static const char* text = R"json({
  "version": 1,
  "systems": {
    "tent": {
      "sensitivity": "Established",
      "accessibility": "Established",
      "kato": "Established",
      "structural_law": "Established",
      "conjugacy": "Established",
      "conjugate_sensitivity": "Established",
      "conjugate_accessibility": "Established"
    },
    "plateau": {
      "sensitivity": "Established",
      "accessibility": "Established",
      "kato": "Established",
      "structural_law": "Established",
      "f1_sensitivity": "Undetermined",
      "f2_sensitivity": "Undetermined"
    },
    "finite": {
      "sensitivity": "Refuted",
      "accessibility": "Established",
      "kato": "Refuted",
      "structural_law": "Established",
      "f1_accessibility": "Refuted",
      "f2_accessibility": "Refuted",
      "conjugacy": "Established",
      "conjugate_sensitivity": "Refuted",
      "conjugate_accessibility": "Established"
    },
    "shift": {
      "nonaccessibility_certificate": "Established",
      "accessibility_theta_omega": "Undetermined",
      "sigma_accessibility": "Established",
      "sigma2_accessibility": "Established",
      "sigma_accessibility_theta_pairs": "Undetermined",
      "cylinder_isolates_omega": "Established",
      "theta_isolated": "Refuted",
      "density_block_10": "Established"
    },
    "circle": {
      "contraction": "Established",
      "accessibility": "Established",
      "branch_bound": "Established"
    },
    "constant-tent": {
      "constant_map_hypothesis": "Established",
      "sensitivity": "Established",
      "classical_sensitivity": "Established",
      "accessibility": "Established",
      "classical_accessibility": "Established",
      "pairing": "Established"
    }
  }
}
)json";
  return io::parse_json(text, "embedded golden file");
}

std::vector<Mismatch> compare(const std::vector<SystemRun>& runs, const json& expected) {
  std::vector<Mismatch> out;
  if (!expected.is_object() || !expected.contains("systems") || !expected.at("systems").is_object())
    throw Error(ErrorKind::Schema, "$: golden file needs a \"systems\" object");
  const json& systems = expected.at("systems");
  for (const auto& run : runs) {
    if (!systems.contains(run.name)) {
      out.push_back({run.name, "*", "(absent)", "(ran)"});
      continue;
    }
    const json& want = systems.at(run.name);
    if (!want.is_object()) throw Error(ErrorKind::Schema, "$.systems." + run.name + ": expected an object");
    for (const auto& [check, verdict] : want.items()) {
      const std::string w = verdict.is_string() ? verdict.get<std::string>() : verdict.dump();
      const std::string a = run.checks.contains(check) ? run.checks.at(check).get<std::string>() : "(missing)";
      if (w != a) out.push_back({run.name, check, w, a});
    }
    for (const auto& [check, verdict] : run.checks.items())
      if (!want.contains(check)) out.push_back({run.name, check, "(missing)", verdict.get<std::string>()});
  }
  return out;
}

}  // namespace kato::golden
