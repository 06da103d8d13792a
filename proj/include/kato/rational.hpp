#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kato {

/// Arbitrary-precision exact rational, always kept in canonical form.
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws Error(InvalidArgument) on a zero denominator.
Rational make_rational(long num, long den = 1);
Rational make_rational(const mpz_class& num, const mpz_class& den);

/// Parses "p/q", "p" or a decimal-free integer pair written as "p / q".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// floor(q) for q >= 0 as an unsigned integer; throws if it does not fit.
std::uint64_t floor_u64(const Rational& q);

/// Fractional part in [0, 1).
Rational frac(const Rational& q);

inline Rational abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  if (sgn(d) < 0) d = -d;
  return d;
}

}  // namespace kato
