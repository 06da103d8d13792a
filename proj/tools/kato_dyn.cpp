// kato-dyn: command-line front end for the multiple-mapping chaos detectors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "kato/conjugacy.hpp"
#include "kato/detectors.hpp"
#include "kato/error.hpp"
#include "kato/golden.hpp"
#include "kato/io.hpp"
#include "kato/orbit.hpp"
#include "kato/symbolic.hpp"
#include "kato/version.hpp"

using kato::io::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

kato::Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return kato::parse_rational(text);
  } catch (const kato::Error& e) {
    throw kato::Error(kato::ErrorKind::InvalidArgument, std::string(flag) + ": " + e.what());
  }
}

json report(const std::string& command, json config, json results, Clock::time_point start) {
  return json{{"tool", "kato-dyn"}, {"version", kato::kVersion}, {"command", command}, {"config", std::move(config)},
              {"results", std::move(results)}, {"timing_ms", elapsed_ms(start)}};
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw kato::Error(kato::ErrorKind::InvalidArgument, "cannot write " + out);
  f << j.dump(2) << "\n";
}

std::string system_name(const json& j, const std::string& path) {
  if (j.contains("name") && j.at("name").is_string()) return j.at("name").get<std::string>();
  return std::filesystem::path(path).stem().string();
}

kato::OrbitPolicy policy_arg(const std::string& text, std::uint64_t max_steps) {
  if (text == "exact") return kato::OrbitPolicy::exact(max_steps);
  if (text.rfind("pruned:", 0) == 0) return kato::OrbitPolicy::pruned(rational_arg(text.substr(7), "--policy"), max_steps);
  throw kato::Error(kato::ErrorKind::InvalidArgument, "--policy: expected \"exact\" or \"pruned:TOL\"");
}

json policy_json(const kato::OrbitPolicy& p) {
  if (p.mode == kato::OrbitMode::ExactEnumeration) return json{{"mode", "exact"}, {"max_set_size", p.max_set_size}};
  return json{{"mode", "pruned"}, {"tolerance", kato::io::encode(p.tolerance)}, {"max_set_size", p.max_set_size}};
}

kato::SampleLattice lattice_arg(const std::string& text) {
  if (text == "dyadic") return kato::SampleLattice::Dyadic;
  if (text == "uniform") return kato::SampleLattice::Uniform;
  if (text == "random") return kato::SampleLattice::Random;
  throw kato::Error(kato::ErrorKind::InvalidArgument, "--lattice: expected dyadic, uniform or random");
}

struct SamplerOptions {
  std::string grid = "1/100";
  std::string radius = "1/100";
  bool radius_given = false;
  std::size_t points = 16;
  std::string lattice = "dyadic";
  std::uint64_t seed = 0;
  std::uint64_t orbit_bound = 20;
};

std::vector<kato::OpenSet> open_sets(const kato::Space& space, const SamplerOptions& o, json& config) {
  config["points_per_set"] = o.points;
  config["lattice"] = o.lattice;
  config["seed"] = o.seed;
  if (space.kind() == kato::SpaceKind::Shift) {
    kato::Rational radius = o.radius_given ? rational_arg(o.radius, "--radius")
                                           : kato::make_rational(1, static_cast<long>(space.horizon() + 1));
    std::vector<kato::Point> pts{kato::Point::seq(kato::SequenceSpec::theta())};
    for (std::uint64_t m = 0; m <= o.orbit_bound; ++m) pts.push_back(kato::Point::seq(kato::SequenceSpec::omega(), m));
    config["sampler"] = json{{"kind", "orbit points"}, {"orbit_bound", o.orbit_bound}, {"radius", kato::io::encode(radius)}};
    return kato::open_sets_from_points(space, pts, radius);
  }
  kato::OpenSetSampler sampler{kato::OpenSetSampler::FiniteAll{}};
  sampler.points_per_set = o.points;
  sampler.lattice = lattice_arg(o.lattice);
  sampler.seed = o.seed;
  if (space.kind() == kato::SpaceKind::Finite && !o.radius_given) {
    config["sampler"] = json{{"kind", "all singletons"}};
  } else {
    kato::Rational grid = rational_arg(o.grid, "--grid");
    kato::Rational radius = rational_arg(o.radius, "--radius");
    config["sampler"] = json{{"kind", "ball grid"}, {"grid", kato::io::encode(grid)}, {"radius", kato::io::encode(radius)}};
    sampler.kind = kato::OpenSetSampler::BallGrid{grid, radius};
  }
  return kato::materialize(sampler, space);
}

void add_sampler_flags(CLI::App* cmd, SamplerOptions& o) {
  cmd->add_option("--grid", o.grid, "Ball-grid spacing (rational)");
  cmd->add_option("--radius", o.radius, "Ball radius (rational); on finite spaces switches from singletons to balls")
      ->each([&o](const std::string&) { o.radius_given = true; });
  cmd->add_option("--points", o.points, "Sample points per open set");
  cmd->add_option("--lattice", o.lattice, "Sample lattice: dyadic, uniform or random");
  cmd->add_option("--seed", o.seed, "Seed for the random lattice");
  cmd->add_option("--orbit-bound", o.orbit_bound, "Shift spaces: orbit points sigma^m(omega), m <= bound");
}

void write_trace(const std::string& path, const std::string& system, const kato::MultiMapping& f,
                 const std::vector<std::pair<std::string, const kato::Evidence*>>& evidence, const kato::OrbitPolicy& pol) {
  std::ofstream out(path);
  if (!out) throw kato::Error(kato::ErrorKind::InvalidArgument, "cannot write " + path);
  out << "system,pair_id,n,d_H_num,d_H_den,flagged\n";
  for (const auto& [label, ev] : evidence) {
    for (const auto& w : ev->witnesses) {
      const std::string id = label + "/" + std::to_string(w.u_index) + "-" + std::to_string(w.v_index);
      auto a = kato::point_trajectory(f, w.x, w.n, pol);
      auto b = kato::point_trajectory(f, w.y, w.n, pol);
      for (std::uint64_t n = 1; n <= w.n; ++n) {
        kato::Distance d = kato::hausdorff_distance(a[n].set, b[n].set);
        out << system << "," << id << "," << n << "," << d.value.get_num().get_str() << ","
            << d.value.get_den().get_str() << "," << (d.upper_bound ? "true" : "false") << "\n";
      }
    }
  }
}

// ---------------------------------------------------------------------------

struct ReproduceOptions {
  std::string only;
  std::string golden;
  std::string out;
  unsigned threads = 0;
};

int cmd_reproduce(const ReproduceOptions& o) {
  const auto start = Clock::now();
  const json expected = o.golden.empty() ? kato::golden::embedded_expectations() : kato::io::load_json_file(o.golden);
  std::vector<std::string> names = kato::golden::system_names();
  if (!o.only.empty()) {
    if (std::find(names.begin(), names.end(), o.only) == names.end())
      throw kato::Error(kato::ErrorKind::InvalidArgument, "--only: unknown system \"" + o.only + "\"");
    names = {o.only};
  }
  std::vector<kato::golden::SystemRun> runs;
  json results = json::array();
  for (const auto& name : names) {
    runs.push_back(kato::golden::run_system(name, o.threads));
    const auto& r = runs.back();
    results.push_back(json{{"name", r.name}, {"config", r.config}, {"checks", r.checks}, {"details", r.details},
                           {"timing_ms", r.timing_ms}});
  }
  const auto mismatches = kato::golden::compare(runs, expected);
  json diff = json::array();
  for (const auto& m : mismatches)
    diff.push_back(json{{"system", m.system}, {"check", m.check}, {"expected", m.expected}, {"actual", m.actual}});
  json config{{"systems", names}, {"golden", o.golden.empty() ? "embedded" : o.golden}};
  json rep = report("reproduce", std::move(config), std::move(results), start);
  rep["mismatches"] = diff;
  emit(rep, o.out);
  for (const auto& m : mismatches)
    std::cerr << "MISMATCH " << m.system << "." << m.check << ": expected " << m.expected << ", got " << m.actual << "\n";
  std::cerr << runs.size() << " systems, " << (mismatches.empty() ? "all golden verdicts match" : std::to_string(mismatches.size()) + " mismatches") << "\n";
  return mismatches.empty() ? 0 : 1;
}

struct AnalyzeOptions {
  std::string system;
  std::string delta = "1/4";
  std::string epsilon = "1/10";
  std::uint64_t horizon = 64;
  std::string policy = "exact";
  bool exhaustive = false;
  bool estimate_delta = false;
  std::string trace;
  std::string out;
  unsigned threads = 0;
  SamplerOptions sampler;
};

int cmd_analyze(const AnalyzeOptions& o) {
  const auto start = Clock::now();
  const json sys_json = kato::io::load_json_file(o.system);
  const kato::MultiMapping f = kato::io::decode_system(sys_json);
  const std::string name = system_name(sys_json, o.system);
  const kato::Rational delta = rational_arg(o.delta, "--delta");
  const kato::Rational epsilon = rational_arg(o.epsilon, "--epsilon");
  kato::DetectorParams params;
  params.horizon = o.horizon;
  params.policy = policy_arg(o.policy, o.horizon);
  params.exhaustive = o.exhaustive;
  params.threads = o.threads;

  json config{{"name", name}, {"system", kato::io::encode(f)}, {"delta", kato::io::encode(delta)},
              {"epsilon", kato::io::encode(epsilon)}, {"horizon", o.horizon}, {"policy", policy_json(params.policy)},
              {"exhaustive", o.exhaustive}};
  const auto sets = open_sets(f.space(), o.sampler, config);
  const auto pairs = kato::all_set_pairs(sets.size());
  kato::KatoReport k = kato::kato_verdict(f, delta, epsilon, sets, pairs, params);
  json results{{"sensitivity", kato::io::encode(k.sensitivity)},
               {"accessibility", kato::io::encode(k.accessibility)},
               {"kato", kato::to_string(k.combined)}};
  if (o.estimate_delta) {
    kato::Rational est = kato::estimate_sensitivity_constant(f, sets, params);
    results["sensitivity_constant_estimate"] =
        json{{"delta", kato::io::encode(est)},
             {"note", "largest delta on the grid diameter*j/1024 at which sensitivity is established (bisection)"}};
  }
  if (!o.trace.empty()) {
    write_trace(o.trace, name, f, {{"sensitivity", &k.sensitivity}, {"accessibility", &k.accessibility}}, params.policy);
    config["trace"] = o.trace;
  }
  emit(report("analyze", std::move(config), std::move(results), start), o.out);
  return 0;
}

kato::Point point_arg(const std::string& text, const kato::Space& space) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    j = text;
  }
  return kato::io::decode_point(j, space, "--point");
}

struct OrbitOptions {
  std::string system;
  std::string point;
  std::uint64_t n = 8;
  std::string policy = "exact";
  std::string csv;
  std::string out;
};

int cmd_orbit(const OrbitOptions& o) {
  const auto start = Clock::now();
  const json sys_json = kato::io::load_json_file(o.system);
  const kato::MultiMapping f = kato::io::decode_system(sys_json);
  const kato::Point x = point_arg(o.point, f.space());
  const kato::OrbitPolicy pol = policy_arg(o.policy, std::max<std::uint64_t>(o.n, 1));
  auto traj = kato::point_trajectory(f, x, o.n, pol);
  json steps = json::array();
  for (const auto& s : traj)
    steps.push_back(json{{"n", s.step}, {"size", s.set.size()}, {"truncated", s.truncated}, {"set", kato::io::encode(s.set)}});
  if (!o.csv.empty()) {
    std::ofstream out(o.csv);
    if (!out) throw kato::Error(kato::ErrorKind::InvalidArgument, "cannot write " + o.csv);
    out << "system,n,point\n";
    for (const auto& s : traj)
      for (const auto& p : s.set.points()) out << system_name(sys_json, o.system) << "," << s.step << "," << p.describe() << "\n";
  }
  json config{{"system", kato::io::encode(f)}, {"point", kato::io::encode(x)}, {"n", o.n}, {"policy", policy_json(pol)}};
  emit(report("orbit", std::move(config), json{{"steps", std::move(steps)}}, start), o.out);
  return 0;
}

int cmd_hausdorff(const std::string& input, const std::string& out) {
  const auto start = Clock::now();
  const json j = kato::io::load_json_file(input);
  if (!j.is_object() || !j.contains("space")) throw kato::Error(kato::ErrorKind::Schema, "$: missing field \"space\"");
  const kato::Space space = kato::io::decode_space(j.at("space"), "$.space");
  if (!j.contains("A") || !j.contains("B")) throw kato::Error(kato::ErrorKind::Schema, "$: fields \"A\" and \"B\" are required");
  const kato::FiniteSet a = kato::io::decode_set(j.at("A"), space, "$.A");
  const kato::FiniteSet b = kato::io::decode_set(j.at("B"), space, "$.B");
  json results{{"d_H", kato::io::encode(kato::hausdorff_distance(a, b))},
               {"directed_AB", kato::io::encode(kato::directed_distance(a, b))},
               {"directed_BA", kato::io::encode(kato::directed_distance(b, a))}};
  json config{{"space", kato::io::encode(space)}, {"A", kato::io::encode(a)}, {"B", kato::io::encode(b)}};
  emit(report("hausdorff", std::move(config), std::move(results), start), out);
  return 0;
}

int cmd_conjugate(const std::string& system, const std::string& homeo, const std::string& out) {
  const json sys_json = kato::io::load_json_file(system);
  const kato::MultiMapping f = kato::io::decode_system(sys_json);
  const kato::Homeomorphism t = kato::io::decode_homeomorphism(kato::io::load_json_file(homeo), f.space());
  json g = json{{"name", system_name(sys_json, system) + "-conjugate"}};
  g.update(kato::io::encode(kato::conjugate_system(f, t)));
  emit(g, out);
  return 0;
}

struct PreserveOptions {
  std::string system;
  std::string homeo;
  std::string delta = "49/100";
  std::string epsilon = "1/10";
  std::uint64_t horizon = 64;
  std::uint64_t n_max = 6;
  bool exhaustive = false;
  std::string out;
  unsigned threads = 0;
  SamplerOptions sampler;
};

int cmd_preserve(const PreserveOptions& o) {
  const auto start = Clock::now();
  const kato::MultiMapping f = kato::io::decode_system(kato::io::load_json_file(o.system));
  const kato::Homeomorphism t = kato::io::decode_homeomorphism(kato::io::load_json_file(o.homeo), f.space());
  const kato::ConjugatePair pair = kato::ConjugatePair::from(f, t);
  const kato::Rational delta = rational_arg(o.delta, "--delta");
  const kato::Rational epsilon = rational_arg(o.epsilon, "--epsilon");
  kato::DetectorParams params;
  params.horizon = o.horizon;
  params.exhaustive = o.exhaustive;
  params.threads = o.threads;
  json config{{"system", kato::io::encode(f)}, {"homeomorphism", kato::io::encode(t)}, {"delta", kato::io::encode(delta)},
              {"epsilon", kato::io::encode(epsilon)}, {"horizon", o.horizon}, {"n_max", o.n_max}, {"exhaustive", o.exhaustive}};
  const auto sets = open_sets(f.space(), o.sampler, config);
  std::vector<kato::Point> samples;
  for (const auto& s : sets) samples.push_back(s.center);
  const kato::Evidence conj = kato::check_conjugacy(pair, samples, o.n_max);
  const kato::PreservationReport r = kato::preservation_suite(pair, delta, epsilon, sets, params);
  json results{{"conjugate_system", kato::io::encode(pair.g)},
               {"conjugacy", kato::io::encode(conj, 5)},
               {"lipschitz", json{{"lower", kato::io::encode(r.bounds.lower)}, {"upper", kato::io::encode(r.bounds.upper)},
                                  {"sampled", r.bounds.sampled}}},
               {"delta_g", kato::io::encode(r.delta_g)},
               {"epsilon_g", kato::io::encode(r.epsilon_g)},
               {"sensitivity", json{{"F", kato::io::encode(r.sensitivity_f)}, {"G", kato::io::encode(r.sensitivity_g)},
                                    {"agree", r.sensitivity_agrees}}},
               {"accessibility", json{{"F", kato::io::encode(r.accessibility_f)}, {"G", kato::io::encode(r.accessibility_g)},
                                      {"agree", r.accessibility_agrees}}},
               {"notes", r.notes}};
  emit(report("preserve", std::move(config), std::move(results), start), o.out);
  return 0;
}

struct ShiftOptions {
  std::uint64_t m = 100;
  std::uint64_t l = 1000;
  std::uint64_t n = 200;
  std::string epsilon = "1/20";
  std::string out;
};

int cmd_shift_demo(const ShiftOptions& o) {
  const auto start = Clock::now();
  const kato::ShiftSystem sys(o.l, o.m);
  const kato::Rational eps = rational_arg(o.epsilon, "--epsilon");
  json config{{"M", o.m}, {"L", o.l}, {"N", o.n}, {"epsilon", kato::io::encode(eps)}};

  const kato::Evidence iso = kato::isolated_point_check(sys, kato::make_rational(1, 2));
  const kato::NonAccessibilityReport cert = kato::nonaccessibility_certificate(sys, o.n);
  json certs = json::array();
  for (const auto& c : cert.certificates)
    certs.push_back(json{{"n", c.n}, {"l", c.l}, {"d_H", kato::io::encode(c.hausdorff)}});
  const auto pairs = kato::orbit_point_pairs(sys);
  const kato::Evidence s1 = kato::sigma_accessibility_experiment(sys, eps, pairs, o.n, 1);
  const kato::Evidence s2 = kato::sigma_accessibility_experiment(sys, eps, pairs, o.n, 2);
  json theta = json::array();
  for (std::uint64_t m = 0; m <= o.m; ++m)
    theta.push_back(json{{"m", m}, {"sigma_n", kato::theta_pair_requirement(m, eps, 1)},
                         {"sigma2_n", kato::theta_pair_requirement(m, eps, 2)}});
  const kato::CylinderReport cyl = kato::verify_cylinder(sys, "11011110011111111000");
  json cylinder{{"cylinder", cyl.cylinder}, {"matches_omega", cyl.matches_omega}, {"other_members", cyl.other_members},
                {"isolates_omega", cyl.isolates_omega()}};
  if (cyl.first_mismatch) cylinder["first_mismatch"] = *cyl.first_mismatch;

  json results{{"isolated_point_check", kato::io::encode(iso, 12)},
               {"nonaccessibility_certificate",
                json{{"verdict", !cert.first_failure && cert.certificates.size() == o.n ? "Established" : "Refuted"},
                     {"enumeration_checked_through", cert.enumeration_checked_through},
                     {"first_failure", cert.first_failure ? json(*cert.first_failure) : json(nullptr)},
                     {"certificates", std::move(certs)}}},
               {"sigma_accessibility", kato::io::encode(s1, 10)},
               {"sigma2_accessibility", kato::io::encode(s2, 10)},
               {"theta_pair_requirements", std::move(theta)},
               {"cylinder", std::move(cylinder)},
               {"density_block_10", kato::io::encode(kato::omega_density_at_block(10))}};
  emit(report("shift-demo", std::move(config), std::move(results), start), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kato-dyn: sensitivity, accessibility and Kato chaos of multiple mappings"};
  app.set_version_flag("--version", kato::kVersion);
  app.require_subcommand(1);
  std::function<int()> action;

  ReproduceOptions rep;
  auto* reproduce = app.add_subcommand("reproduce", "Run the pinned reference systems against the golden verdicts");
  reproduce->add_option("--only", rep.only, "Run a single system");
  reproduce->add_option("--golden", rep.golden, "Golden expectation file (default: built in)");
  reproduce->add_option("--out", rep.out, "Write the report here instead of stdout");
  reproduce->add_option("--threads", rep.threads, "Worker threads (0: KATO_DYN_THREADS or hardware)");
  reproduce->callback([&] { action = [&] { return cmd_reproduce(rep); }; });

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Run the detectors on a system JSON file");
  analyze->add_option("system", an.system, "System JSON")->required();
  analyze->add_option("--delta", an.delta, "Sensitivity constant (rational)");
  analyze->add_option("--epsilon", an.epsilon, "Accessibility tolerance (rational)");
  analyze->add_option("--horizon", an.horizon, "Largest n searched");
  analyze->add_option("--policy", an.policy, "exact or pruned:TOL");
  analyze->add_flag("--exhaustive", an.exhaustive, "Finite spaces: search until every pair orbit cycles");
  analyze->add_flag("--estimate-delta", an.estimate_delta, "Also bisect for the largest established delta");
  analyze->add_option("--trace", an.trace, "CSV of d_H along every witness pair");
  analyze->add_option("--out", an.out, "Write the report here instead of stdout");
  analyze->add_option("--threads", an.threads, "Worker threads");
  add_sampler_flags(analyze, an.sampler);
  analyze->callback([&] { action = [&] { return cmd_analyze(an); }; });

  OrbitOptions orb;
  auto* orbit = app.add_subcommand("orbit", "Print the set-valued orbit of a point");
  orbit->add_option("system", orb.system, "System JSON")->required();
  orbit->add_option("--point", orb.point, "Point as JSON or p/q")->required();
  orbit->add_option("--n", orb.n, "Number of steps");
  orbit->add_option("--policy", orb.policy, "exact or pruned:TOL");
  orbit->add_option("--csv", orb.csv, "CSV of every orbit point");
  orbit->add_option("--out", orb.out, "Write the report here instead of stdout");
  orbit->callback([&] { action = [&] { return cmd_orbit(orb); }; });

  std::string h_input, h_out;
  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance of two finite sets");
  hausdorff->add_option("input", h_input, "JSON with space, A and B")->required();
  hausdorff->add_option("--out", h_out, "Write the report here instead of stdout");
  hausdorff->callback([&] { action = [&] { return cmd_hausdorff(h_input, h_out); }; });

  std::string c_system, c_homeo, c_out;
  auto* conjugate = app.add_subcommand("conjugate", "Transport a system through a homeomorphism");
  conjugate->add_option("system", c_system, "System JSON")->required();
  conjugate->add_option("homeomorphism", c_homeo, "Homeomorphism JSON")->required();
  conjugate->add_option("--out", c_out, "Write the system here instead of stdout");
  conjugate->callback([&] { action = [&] { return cmd_conjugate(c_system, c_homeo, c_out); }; });

  PreserveOptions pre;
  auto* preserve = app.add_subcommand("preserve", "Paired detector runs on a system and its conjugate");
  preserve->add_option("system", pre.system, "System JSON")->required();
  preserve->add_option("homeomorphism", pre.homeo, "Homeomorphism JSON")->required();
  preserve->add_option("--delta", pre.delta, "Sensitivity constant for F");
  preserve->add_option("--epsilon", pre.epsilon, "Accessibility tolerance for F");
  preserve->add_option("--horizon", pre.horizon, "Largest n searched");
  preserve->add_option("--n-max", pre.n_max, "Steps of the set-level commutation check");
  preserve->add_flag("--exhaustive", pre.exhaustive, "Finite spaces: search until every pair orbit cycles");
  preserve->add_option("--out", pre.out, "Write the report here instead of stdout");
  preserve->add_option("--threads", pre.threads, "Worker threads");
  add_sampler_flags(preserve, pre.sampler);
  preserve->callback([&] { action = [&] { return cmd_preserve(pre); }; });

  ShiftOptions sh;
  auto* shift = app.add_subcommand("shift-demo", "Experiments on X = {theta} u orb(omega) with F = {sigma, sigma^2}");
  shift->add_option("--M", sh.m, "Orbit points sigma^m(omega), m <= M");
  shift->add_option("--L", sh.l, "Truncation horizon");
  shift->add_option("--N", sh.n, "Steps searched");
  shift->add_option("--epsilon", sh.epsilon, "Accessibility tolerance");
  shift->add_option("--out", sh.out, "Write the report here instead of stdout");
  shift->callback([&] { action = [&] { return cmd_shift_demo(sh); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const kato::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
