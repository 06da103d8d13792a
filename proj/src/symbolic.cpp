#include "kato/symbolic.hpp"

#include <map>

#include "kato/error.hpp"
#include "kato/orbit.hpp"

namespace kato {

ShiftSystem::ShiftSystem(std::uint64_t horizon, std::uint64_t orbit_bound)
    : space_(Space::shift(horizon)), m_(orbit_bound) {
  if (m_ < 1) throw Error(ErrorKind::InvalidArgument, "orbit bound M must be at least 1");
  if (horizon < 2 * m_ + 2)
    throw Error(ErrorKind::HorizonTooShort, "L = " + std::to_string(horizon) + " is below 2M + 2 = " + std::to_string(2 * m_ + 2));
}

MultiMapping ShiftSystem::mapping() const {
  return MultiMapping(space_, {SelfMap::shift_power(1), SelfMap::shift_power(2)});
}

Point ShiftSystem::theta() const { return Point::seq(SequenceSpec::theta()); }

Point ShiftSystem::omega(std::uint64_t m) const { return Point::seq(SequenceSpec::omega(), m); }

std::vector<Point> ShiftSystem::enumerated_points() const {
  std::vector<Point> pts{theta()};
  for (std::uint64_t m = 0; m <= m_; ++m) pts.push_back(omega(m));
  return pts;
}

Evidence isolated_point_check(const ShiftSystem& sys, const Rational& delta) {
  if (sgn(delta) <= 0 || delta > make_rational(1, 2)) throw Error(ErrorKind::InvalidArgument, "gap must lie in (0, 1/2]");
  Evidence ev;
  ev.horizon = sys.horizon();
  const Point theta = sys.theta();
  bool all_positive = true;
  for (std::uint64_t m = 0; m <= sys.orbit_bound(); ++m) {
    Point x = sys.omega(m);
    Distance d = point_distance(sys.space(), x, theta);
    if (d.upper_bound || sgn(d.value) == 0) all_positive = false;
    if (d.upper_bound) ev.unresolved.push_back(m);
    else if (d.value < delta) ev.refuted.push_back(m);
    ev.witnesses.push_back(Witness{m, 0, std::move(x), theta, 0, std::move(d)});
  }
  if (!ev.refuted.empty()) ev.verdict = Verdict::Refuted;
  else if (!ev.unresolved.empty()) ev.verdict = Verdict::Undetermined;
  else ev.verdict = Verdict::Established;
  if (all_positive)
    ev.notes.push_back("d(sigma^m omega, theta) > 0 for every m <= " + std::to_string(sys.orbit_bound()));
  if (!ev.refuted.empty()) {
    const std::uint64_t m = ev.refuted.front();
    ev.notes.push_back("sigma^" + std::to_string(m) + " omega is within " + to_string(ev.witnesses[m].distance.value) +
                       " of theta: it starts at a zero run of omega, and the zero runs grow without bound, so theta is "
                       "a limit point of the orbit");
  }
  ev.params = {{"property", "isolation of theta"}, {"delta", to_string(delta)},
               {"L", std::to_string(sys.horizon())}, {"M", std::to_string(sys.orbit_bound())}};
  return ev;
}

NonAccessibilityReport nonaccessibility_certificate(const ShiftSystem& sys, std::uint64_t steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
  if (sys.horizon() < 2 * steps + 1)
    throw Error(ErrorKind::HorizonTooShort,
                "L = " + std::to_string(sys.horizon()) + " is below 2N + 1 = " + std::to_string(2 * steps + 1));
  NonAccessibilityReport r{sys.horizon(), steps, {}, std::nullopt, 0};
  const Space& space = sys.space();
  const FiniteSet theta_set = FiniteSet::singleton(space, sys.theta());
  const MultiMapping f = sys.mapping();
  const Rational half = make_rational(1, 2);
  for (std::uint64_t n = 1; n <= steps; ++n) {
    std::vector<Point> shifts;
    for (std::uint64_t l = n; l <= 2 * n; ++l) shifts.push_back(sys.omega(l));
    FiniteSet image = FiniteSet::make(space, std::move(shifts));
    if (n <= 10) {
      if (!(iterate_point(f, sys.omega(), n, OrbitPolicy::exact(n)).set == image))
        throw Error(ErrorKind::InvalidArgument, "word enumeration disagrees with the shift window at n = " + std::to_string(n));
      r.enumeration_checked_through = n;
    }
    std::optional<std::uint64_t> l;
    for (std::uint64_t c = n; c <= 2 * n && !l; ++c)
      if (omega_bit(c)) l = c;
    Distance d = hausdorff_distance(theta_set, image);
    if (!l || d.upper_bound || d.value < half) {
      if (!r.first_failure) r.first_failure = n;
      continue;
    }
    r.certificates.push_back(NonAccessibilityCertificate{n, *l, std::move(d)});
  }
  return r;
}

std::vector<std::pair<Point, Point>> orbit_point_pairs(const ShiftSystem& sys) {
  std::vector<std::pair<Point, Point>> pairs;
  for (std::uint64_t a = 0; a <= sys.orbit_bound(); ++a)
    for (std::uint64_t b = a; b <= sys.orbit_bound(); ++b) pairs.emplace_back(sys.omega(a), sys.omega(b));
  return pairs;
}

Evidence sigma_accessibility_experiment(const ShiftSystem& sys, const Rational& epsilon,
                                        const std::vector<std::pair<Point, Point>>& pairs, std::uint64_t steps,
                                        unsigned power) {
  if (power != 1 && power != 2) throw Error(ErrorKind::InvalidArgument, "power must be 1 or 2");
  if (epsilon <= make_rational(1, static_cast<long>(sys.horizon() + 1)))
    throw Error(ErrorKind::HorizonTooShort, "epsilon " + to_string(epsilon) + " is not resolvable at L = " +
                                                std::to_string(sys.horizon()));
  // One singleton open set per distinct point.
  std::map<Point, std::size_t> index;
  std::vector<OpenSet> sets;
  auto set_of = [&](const Point& p) {
    auto [it, inserted] = index.emplace(p, sets.size());
    if (inserted) sets.push_back(OpenSet{p, Rational(0), {p}});
    return it->second;
  };
  std::vector<SetPair> set_pairs;
  for (const auto& [x, y] : pairs) {
    if (!belongs_to(x, sys.space()) || !belongs_to(y, sys.space()))
      throw Error(ErrorKind::VariantMismatch, "pair points must be sequences");
    std::size_t u = set_of(x);
    set_pairs.emplace_back(u, set_of(y));
  }
  DetectorParams params;
  params.horizon = steps;
  Evidence ev = classical_accessibility(SelfMap::shift_power(power), sys.space(), epsilon, sets, set_pairs, params);

  std::size_t ones = 0, zeros = 0, mixed = 0;
  for (const auto& w : ev.witnesses) {
    if (w.x == w.y) continue;
    const std::uint64_t s = power * w.n;
    // Agreement window: indices below the first disagreement.
    mpz_class k = w.distance.value.get_den() / w.distance.value.get_num();
    const std::uint64_t len = k.get_ui() - 1;
    bool all1 = true, all0 = true;
    for (std::uint64_t i = 0; i < len; ++i) {
      bool b = seq_bit(w.x, s + i);
      all1 = all1 && b;
      all0 = all0 && !b;
    }
    if (all1) ++ones;
    else if (all0) ++zeros;
    else ++mixed;
  }
  ev.notes.push_back("agreement windows: " + std::to_string(ones) + " in common ones, " + std::to_string(zeros) +
                     " in common zeros, " + std::to_string(mixed) + " mixed");
  ev.params.insert(ev.params.begin(), {"power", std::to_string(power)});
  ev.params.emplace_back("L", std::to_string(sys.horizon()));
  ev.params.emplace_back("M", std::to_string(sys.orbit_bound()));
  return ev;
}

std::uint64_t theta_pair_requirement(std::uint64_t m, const Rational& epsilon, unsigned power) {
  if (sgn(epsilon) <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  if (power != 1 && power != 2) throw Error(ErrorKind::InvalidArgument, "power must be 1 or 2");
  // Need omega zero at positions t .. t+J-1 where t = m + power n and J = floor(1/epsilon).
  if (epsilon < make_rational(1, 50)) throw Error(ErrorKind::InvalidArgument, "epsilon too small for a zero-run search");
  const std::uint64_t run = floor_u64(Rational(1) / epsilon);
  if (run == 0) return 1;
  for (std::uint64_t b = run;; ++b) {
    const std::uint64_t z = omega_block_zero_start(b);
    for (std::uint64_t t = z; t + run <= z + b; ++t)
      if (t >= m + power && (t - m) % power == 0) return (t - m) / power;
  }
}

CylinderReport verify_cylinder(const ShiftSystem& sys, std::string_view bits) {
  CylinderReport r;
  r.cylinder = std::string(bits);
  for (char c : bits)
    if (c != '0' && c != '1') throw Error(ErrorKind::InvalidArgument, "cylinder must be a 0/1 string");
  if (bits.size() > sys.horizon()) throw Error(ErrorKind::HorizonTooShort, "cylinder longer than L");
  auto matches = [&](const Point& p) {
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (seq_bit(p, i) != (bits[i] == '1')) return false;
    return true;
  };
  r.matches_omega = true;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (omega_bit(i) != (bits[i] == '1')) {
      r.matches_omega = false;
      r.first_mismatch = i;
      break;
    }
  }
  for (std::uint64_t m = 1; m <= sys.orbit_bound(); ++m)
    if (matches(sys.omega(m))) r.other_members.push_back(m);
  return r;
}

Rational omega_density_at_block(std::uint64_t m) {
  return natural_density([](std::uint64_t i) { return omega_bit(i); }, omega_block_zero_start(m));
}

}  // namespace kato
