#pragma once

// The shift-space counterexample X = {theta} u orb(omega, sigma) with
// F = {sigma, sigma^2}, truncated at M orbit points and horizon L.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kato/detectors.hpp"
#include "kato/spaces.hpp"

namespace kato {

class ShiftSystem {
 public:
  /// Requires M >= 1 and L >= 2M + 2.
  ShiftSystem(std::uint64_t horizon, std::uint64_t orbit_bound);

  const Space& space() const noexcept { return space_; }
  std::uint64_t horizon() const noexcept { return space_.horizon(); }
  std::uint64_t orbit_bound() const noexcept { return m_; }

  /// {sigma, sigma^2}.
  MultiMapping mapping() const;
  Point theta() const;
  /// sigma^m(omega).
  Point omega(std::uint64_t m = 0) const;
  /// theta followed by sigma^m(omega) for m = 0..M.
  std::vector<Point> enumerated_points() const;

 private:
  Space space_;
  std::uint64_t m_;
};

/// Established iff d(sigma^m omega, theta) >= delta for every m <= M.
/// Witnesses hold every distance (u_index = m); refuted lists the m below delta.
Evidence isolated_point_check(const ShiftSystem& sys, const Rational& delta);

struct NonAccessibilityCertificate {
  std::uint64_t n;
  /// Some l in [n, 2n] with omega_l = 1, so d(theta, sigma^l omega) = 1.
  std::uint64_t l;
  Distance hausdorff;
};

struct NonAccessibilityReport {
  std::uint64_t horizon;
  std::uint64_t steps;
  std::vector<NonAccessibilityCertificate> certificates;
  std::optional<std::uint64_t> first_failure;
  /// Largest n for which {sigma^l omega : n <= l <= 2n} was checked against exact word enumeration.
  std::uint64_t enumeration_checked_through = 0;
};

/// For n = 1..N, F^n(theta) = {theta} and F^n(omega) = {sigma^l omega : n <= l <= 2n};
/// exhibits l with omega_l = 1 and the exact d_H. Throws HorizonTooShort if L < 2N + 1.
NonAccessibilityReport nonaccessibility_certificate(const ShiftSystem& sys, std::uint64_t steps);

/// Classical accessibility of sigma^power (power 1 or 2) on the given point pairs:
/// n <= N with d(sigma^(power n) x, sigma^(power n) y) < epsilon.
/// Requires epsilon > 1/(L+1), otherwise throws HorizonTooShort.
Evidence sigma_accessibility_experiment(const ShiftSystem& sys, const Rational& epsilon,
                                        const std::vector<std::pair<Point, Point>>& pairs, std::uint64_t steps,
                                        unsigned power);

/// All pairs (sigma^a omega, sigma^b omega), 0 <= a <= b <= M.
std::vector<std::pair<Point, Point>> orbit_point_pairs(const ShiftSystem& sys);

/// Smallest n >= 1 with d(sigma^(power n) theta, sigma^(power n + m) omega) < epsilon,
/// found from the zero runs of omega.
std::uint64_t theta_pair_requirement(std::uint64_t m, const Rational& epsilon, unsigned power);

struct CylinderReport {
  std::string cylinder;
  bool matches_omega = false;
  std::optional<std::size_t> first_mismatch;
  /// m in [1, M] whose sigma^m omega also starts with the cylinder.
  std::vector<std::uint64_t> other_members;
  bool isolates_omega() const { return matches_omega && other_members.empty(); }
};

CylinderReport verify_cylinder(const ShiftSystem& sys, std::string_view bits);

/// Density of omega's one-set over the prefix that stops at the first zero of block m.
Rational omega_density_at_block(std::uint64_t m);

}  // namespace kato
