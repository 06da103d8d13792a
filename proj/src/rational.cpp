#include "kato/rational.hpp"

#include <limits>

#include "kato/error.hpp"

namespace kato {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::VariantMismatch: return "VariantMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::BlowupRefused: return "BlowupRefused";
    case ErrorKind::UndecidableForSpace: return "UndecidableForSpace";
    case ErrorKind::HorizonTooShort: return "HorizonTooShort";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "denominator zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "denominator zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

mpz_class parse_integer(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && text[b] == ' ') ++b;
  while (e > b && text[e - 1] == ' ') --e;
  std::string_view body = text.substr(b, e - b);
  if (body.empty()) throw Error(ErrorKind::InvalidArgument, "empty integer in rational");
  std::size_t i = (body[0] == '-' || body[0] == '+') ? 1 : 0;
  if (i == body.size()) throw Error(ErrorKind::InvalidArgument, "bad integer '" + std::string(body) + "'");
  for (std::size_t k = i; k < body.size(); ++k) {
    if (body[k] < '0' || body[k] > '9')
      throw Error(ErrorKind::InvalidArgument, "bad integer '" + std::string(body) + "'");
  }
  std::string digits(body[0] == '+' ? body.substr(1) : body);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::uint64_t floor_u64(const Rational& q) {
  if (sgn(q) < 0) throw Error(ErrorKind::InvalidArgument, "floor of negative rational");
  mpz_class f = q.get_num() / q.get_den();
  if (f > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max())))
    throw Error(ErrorKind::InvalidArgument, "rational too large");
  return std::stoull(f.get_str());
}

Rational frac(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational r = q - Rational(f);
  return r;
}

}  // namespace kato
