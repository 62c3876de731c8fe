#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

#include "penning/rational.hpp"

namespace penning {

/// Ladder symbols of the three bosonic modes (a, b, c) and the single
/// fermionic mode f. The `d` suffix marks the creation operator.
enum class Symbol : std::uint8_t { a, ad, b, bd, c, cd, f, fd };

/// Bosonic modes only; the fermion is handled separately because it is
/// nilpotent.
enum class Mode : std::uint8_t { a = 0, b = 1, c = 2 };

inline constexpr std::array<Mode, 3> kBosonicModes{Mode::a, Mode::b, Mode::c};

enum class Grade : std::uint8_t { even, odd, mixed };

std::string_view to_string(Symbol s);
std::string_view to_string(Grade g);
Symbol parse_symbol(std::string_view token);

/// Normal-ordered monomial
///   (a†)^pa a^qa (b†)^pb b^qb (c†)^pc c^qc (f†)^pf f^qf
/// The bosonic modes commute with each other and with f, so this written
/// order is the canonical operator.
struct Monomial {
  std::array<std::uint16_t, 3> create{};
  std::array<std::uint16_t, 3> annihilate{};
  std::uint8_t fcreate = 0;
  std::uint8_t fannihilate = 0;

  static Monomial unit() { return {}; }
  static Monomial of(Symbol s);

  std::uint16_t raise(Mode m) const { return create[static_cast<int>(m)]; }
  std::uint16_t lower(Mode m) const { return annihilate[static_cast<int>(m)]; }

  int degree() const;
  int parity() const { return (fcreate + fannihilate) % 2; }
  bool is_unit() const { return degree() == 0; }

  /// Change in (Na, Nb, Nc, Nf) produced by acting on a number state.
  std::array<int, 4> net_change() const;

  Monomial dagger() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Storage order: higher degree first, then lexicographically descending in
/// (pa, qa, pb, qb, pc, qc, pf, qf). The unit monomial is always last.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const;
};

/// Exact polynomial in the ladder operators with rational coefficients, kept
/// in normal order. Zero coefficients are never stored, so equal operators
/// have identical term maps.
class OperatorPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  OperatorPoly() = default;
  OperatorPoly(const Rational& c);  // NOLINT: constants promote implicitly

  static OperatorPoly symbol(Symbol s);
  static OperatorPoly monomial(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  /// Parity shared by all monomials; the zero polynomial counts as even.
  Grade grade() const;

  /// Largest creation exponent of mode `m` over all monomials.
  int max_raise(Mode m) const;
  int degree() const;

  /// Hermitian conjugate (coefficients are real).
  OperatorPoly dagger() const;

  void add_term(const Monomial& m, const Rational& c);

  OperatorPoly& operator+=(const OperatorPoly& o);
  OperatorPoly& operator-=(const OperatorPoly& o);
  OperatorPoly& operator*=(const Rational& s);

  friend OperatorPoly operator+(OperatorPoly x, const OperatorPoly& y) { return x += y; }
  friend OperatorPoly operator-(OperatorPoly x, const OperatorPoly& y) { return x -= y; }
  friend OperatorPoly operator-(OperatorPoly x) { return x *= Rational(-1); }
  friend OperatorPoly operator*(const Rational& s, OperatorPoly x) { return x *= s; }
  friend OperatorPoly operator*(const OperatorPoly& x, const OperatorPoly& y);

  friend bool operator==(const OperatorPoly& x, const OperatorPoly& y) {
    return x.terms_ == y.terms_;
  }

 private:
  Terms terms_;
};

OperatorPoly add(const OperatorPoly& p, const OperatorPoly& q);
OperatorPoly scale(const Rational& s, const OperatorPoly& p);
bool equals(const OperatorPoly& p, const OperatorPoly& q);

/// Normal-ordered product p·q.
OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q);

/// Graded bracket pq - (-1)^{|p||q|} qp. Throws GradingError when either
/// operand is of mixed grade.
OperatorPoly supercommutator(const OperatorPoly& p, const OperatorPoly& q);

OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q);
OperatorPoly anticommutator(const OperatorPoly& p, const OperatorPoly& q);

Grade grade(const OperatorPoly& p);

/// Symbol relabellings that preserve the canonical relations.
///   ab_exchange: a <-> b, a† <-> b†, f <-> f†
///   spin_flip:   f <-> f†
enum class Automorphism : std::uint8_t { ab_exchange, spin_flip };

std::string_view to_string(Automorphism m);
/// Accepts "ab_exchange" and "spin_flip"; throws UnknownNameError otherwise.
Automorphism parse_automorphism(std::string_view name);

OperatorPoly apply_automorphism(const OperatorPoly& p, Automorphism map);

/// Text form, e.g. "3/2 ad a - 1 bd^2 f + 1/2". Tokens: a ad b bd c cd f fd,
/// optional `^n` exponents, rational coefficients. The empty operator prints
/// as "0".
std::string to_string(const OperatorPoly& p);

/// Parses the text form. Factors inside a term are multiplied in the order
/// written, so "a ad" yields "1 ad a + 1".
OperatorPoly parse_poly(std::string_view text);

}  // namespace penning
