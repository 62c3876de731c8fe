#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace penning {

/// Arbitrary-precision rational; always kept canonical (reduced, positive
/// denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q". Throws ParseError on anything else, including
/// decimals and zero denominators.
Rational parse_rational(std::string_view text);

/// True when `text` looks like an exact rational literal ("3", "-3/2").
bool is_rational_literal(std::string_view text);

std::string to_string(const Rational& q);

/// Exact square root of a non-negative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double into a rational.
Rational from_double(double x);

}  // namespace penning
