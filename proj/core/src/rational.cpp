#include "penning/rational.hpp"

#include <cctype>
#include <cmath>

#include "penning/errors.hpp"

namespace penning {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

bool is_rational_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) text.remove_prefix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return all_digits(text);
  return all_digits(text.substr(0, slash)) && all_digits(text.substr(slash + 1));
}

Rational parse_rational(std::string_view text) {
  if (!is_rational_literal(text)) {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos && Integer(s.substr(slash + 1)) == 0) {
    throw ParseError("zero denominator in '" + s + "'");
  }
  Rational q(s, 10);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  Integer rn = sqrt(num);
  Integer rd = sqrt(den);
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value cannot be made rational");
  Rational q(x);
  q.canonicalize();
  return q;
}

}  // namespace penning
