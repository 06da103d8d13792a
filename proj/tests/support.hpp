#pragma once

// Seeded generators shared by the property tests.

#include <random>
#include <vector>

#include "kato/rational.hpp"
#include "kato/spaces.hpp"

namespace kato::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

  /// Uniform p/q with 1 <= q <= max_den and 0 <= p <= q.
  Rational unit(long max_den = 1000) {
    long q = 1 + static_cast<long>(below(static_cast<std::uint64_t>(max_den)));
    long p = static_cast<long>(below(static_cast<std::uint64_t>(q) + 1));
    return make_rational(p, q);
  }

  /// Same, excluding 1 (circle representatives).
  Rational turns(long max_den = 1000) {
    Rational r = unit(max_den);
    return r == 1 ? Rational(0) : r;
  }

  bool coin() { return below(2) == 1; }

  std::vector<bool> bits(std::size_t n) {
    std::vector<bool> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = coin();
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace kato::testing
