#include "penning/operator_poly.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <utility>
#include <vector>

#include "penning/errors.hpp"

namespace penning {

namespace {

constexpr std::array<std::string_view, 8> kSymbolNames{"a", "ad", "b", "bd", "c", "cd", "f", "fd"};

auto ordering_key(const Monomial& m) {
  return std::make_tuple(m.degree(), m.create[0], m.annihilate[0], m.create[1], m.annihilate[1],
                         m.create[2], m.annihilate[2], m.fcreate, m.fannihilate);
}

/// Normal-ordered fermionic word (f†)^p f^q.
struct FermionWord {
  std::uint8_t p = 0;
  std::uint8_t q = 0;
};

struct FermionTerm {
  FermionWord word;
  int sign;
};

/// (f†)^p1 f^q1 (f†)^p2 f^q2 reduced with f f† = 1 - f†f and f² = f†² = 0.
/// At most two terms survive.
int fermion_product(FermionWord x, FermionWord y, std::array<FermionTerm, 2>& out) {
  int n = 0;
  if (x.q == 1 && y.p == 1) {
    // f†^p1 (1 - f†f) f^q2
    out[n++] = {{x.p, y.q}, +1};
    if (x.p == 0 && y.q == 0) out[n++] = {{1, 1}, -1};
    return n;
  }
  if (x.q == 1) {
    if (y.q == 1) return 0;
    out[n++] = {{x.p, 1}, +1};
    return n;
  }
  if (y.p == 1) {
    if (x.p == 1) return 0;
    out[n++] = {{1, y.q}, +1};
    return n;
  }
  out[n++] = {{x.p, y.q}, +1};
  return n;
}

/// Coefficients of a^q (a†)^p = Σ_k k! C(q,k) C(p,k) (a†)^{p-k} a^{q-k}.
void reorder_coefficients(int q, int p, std::vector<Integer>& out) {
  const int kmax = std::min(q, p);
  out.resize(static_cast<std::size_t>(kmax) + 1);
  Integer c = 1;
  out[0] = c;
  for (int k = 0; k < kmax; ++k) {
    c *= (q - k) * (p - k);
    c /= (k + 1);
    out[static_cast<std::size_t>(k) + 1] = c;
  }
}

void multiply_monomials(const Monomial& x, const Monomial& y, const Rational& coeff,
                        OperatorPoly& out) {
  std::array<FermionTerm, 2> fterms{};
  const int nf = fermion_product({x.fcreate, x.fannihilate}, {y.fcreate, y.fannihilate}, fterms);
  if (nf == 0) return;

  std::array<std::vector<Integer>, 3> weights;
  for (int m = 0; m < 3; ++m) reorder_coefficients(x.annihilate[m], y.create[m], weights[m]);

  Monomial r;
  Rational c;
  for (std::size_t ka = 0; ka < weights[0].size(); ++ka) {
    for (std::size_t kb = 0; kb < weights[1].size(); ++kb) {
      for (std::size_t kc = 0; kc < weights[2].size(); ++kc) {
        const std::array<std::size_t, 3> ks{ka, kb, kc};
        for (int m = 0; m < 3; ++m) {
          const auto k = static_cast<std::uint16_t>(ks[m]);
          r.create[m] = static_cast<std::uint16_t>(x.create[m] + y.create[m] - k);
          r.annihilate[m] = static_cast<std::uint16_t>(x.annihilate[m] + y.annihilate[m] - k);
        }
        Integer w = weights[0][ka] * weights[1][kb] * weights[2][kc];
        for (int i = 0; i < nf; ++i) {
          r.fcreate = fterms[i].word.p;
          r.fannihilate = fterms[i].word.q;
          c = coeff * w;
          if (fterms[i].sign < 0) c = -c;
          out.add_term(r, c);
        }
      }
    }
  }
}

// ---- text form -------------------------------------------------------------

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_space();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char get() {
    skip_space();
    return s_[pos_++];
  }
  std::string_view number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    return s_.substr(start, pos_ - start);
  }
  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("operator parse error at offset " + std::to_string(pos_) + ": " + what +
                     " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

OperatorPoly power(const OperatorPoly& x, unsigned n) {
  OperatorPoly r(Rational(1));
  for (unsigned i = 0; i < n; ++i) r = multiply(r, x);
  return r;
}

void append_factor(std::string& out, std::string_view name, int exponent) {
  if (exponent == 0) return;
  if (!out.empty()) out += ' ';
  out += name;
  if (exponent > 1) {
    out += '^';
    out += std::to_string(exponent);
  }
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    append_factor(s, kSymbolNames[2 * i + 1], m.create[i]);
    append_factor(s, kSymbolNames[2 * i], m.annihilate[i]);
  }
  append_factor(s, "fd", m.fcreate);
  append_factor(s, "f", m.fannihilate);
  return s;
}

}  // namespace

// ---- symbols ---------------------------------------------------------------

std::string_view to_string(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::even: return "even";
    case Grade::odd: return "odd";
    case Grade::mixed: return "mixed";
  }
  return "mixed";
}

Symbol parse_symbol(std::string_view token) {
  for (std::size_t i = 0; i < kSymbolNames.size(); ++i) {
    if (kSymbolNames[i] == token) return static_cast<Symbol>(i);
  }
  throw ParseError("unknown ladder symbol '" + std::string(token) + "'");
}

// ---- Monomial --------------------------------------------------------------

Monomial Monomial::of(Symbol s) {
  Monomial m;
  const auto idx = static_cast<int>(s);
  if (s == Symbol::f) {
    m.fannihilate = 1;
  } else if (s == Symbol::fd) {
    m.fcreate = 1;
  } else if (idx % 2 == 0) {
    m.annihilate[idx / 2] = 1;
  } else {
    m.create[idx / 2] = 1;
  }
  return m;
}

int Monomial::degree() const {
  int d = fcreate + fannihilate;
  for (int i = 0; i < 3; ++i) d += create[i] + annihilate[i];
  return d;
}

std::array<int, 4> Monomial::net_change() const {
  return {create[0] - annihilate[0], create[1] - annihilate[1], create[2] - annihilate[2],
          fcreate - fannihilate};
}

Monomial Monomial::dagger() const {
  Monomial m;
  m.create = annihilate;
  m.annihilate = create;
  m.fcreate = fannihilate;
  m.fannihilate = fcreate;
  return m;
}

bool MonomialOrder::operator()(const Monomial& x, const Monomial& y) const {
  return ordering_key(x) > ordering_key(y);
}

// ---- OperatorPoly ----------------------------------------------------------

OperatorPoly::OperatorPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial::unit(), c);
}

OperatorPoly OperatorPoly::symbol(Symbol s) { return monomial(Monomial::of(s)); }

OperatorPoly OperatorPoly::monomial(const Monomial& m, const Rational& c) {
  OperatorPoly p;
  p.add_term(m, c);
  return p;
}

Rational OperatorPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Grade OperatorPoly::grade() const {
  bool even = false;
  bool odd = false;
  for (const auto& [m, c] : terms_) (m.parity() ? odd : even) = true;
  if (even && odd) return Grade::mixed;
  return odd ? Grade::odd : Grade::even;
}

int OperatorPoly::max_raise(Mode m) const {
  int r = 0;
  for (const auto& [mono, c] : terms_) r = std::max<int>(r, mono.raise(m));
  return r;
}

int OperatorPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

OperatorPoly OperatorPoly::dagger() const {
  OperatorPoly p;
  for (const auto& [m, c] : terms_) p.terms_.emplace(m.dagger(), c);
  return p;
}

void OperatorPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

OperatorPoly& OperatorPoly::operator+=(const OperatorPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

OperatorPoly& OperatorPoly::operator-=(const OperatorPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

OperatorPoly& OperatorPoly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

OperatorPoly operator*(const OperatorPoly& x, const OperatorPoly& y) { return multiply(x, y); }

OperatorPoly add(const OperatorPoly& p, const OperatorPoly& q) { return p + q; }
OperatorPoly scale(const Rational& s, const OperatorPoly& p) { return s * p; }
bool equals(const OperatorPoly& p, const OperatorPoly& q) { return p == q; }

OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q) {
  OperatorPoly out;
  Rational c;
  for (const auto& [mx, cx] : p.terms()) {
    for (const auto& [my, cy] : q.terms()) {
      c = cx * cy;
      multiply_monomials(mx, my, c, out);
    }
  }
  return out;
}

Grade grade(const OperatorPoly& p) { return p.grade(); }

OperatorPoly supercommutator(const OperatorPoly& p, const OperatorPoly& q) {
  const Grade gp = p.grade();
  const Grade gq = q.grade();
  if (gp == Grade::mixed || gq == Grade::mixed) {
    throw GradingError("supercommutator needs operands of definite grade, got " +
                       std::string(to_string(gp)) + " and " + std::string(to_string(gq)));
  }
  if (gp == Grade::odd && gq == Grade::odd) return multiply(p, q) + multiply(q, p);
  return multiply(p, q) - multiply(q, p);
}

OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q) {
  return multiply(p, q) - multiply(q, p);
}

OperatorPoly anticommutator(const OperatorPoly& p, const OperatorPoly& q) {
  return multiply(p, q) + multiply(q, p);
}

// ---- automorphisms ---------------------------------------------------------

std::string_view to_string(Automorphism m) {
  return m == Automorphism::ab_exchange ? "ab_exchange" : "spin_flip";
}

Automorphism parse_automorphism(std::string_view name) {
  if (name == "ab_exchange") return Automorphism::ab_exchange;
  if (name == "spin_flip") return Automorphism::spin_flip;
  throw UnknownNameError("unknown automorphism '" + std::string(name) + "'");
}

OperatorPoly apply_automorphism(const OperatorPoly& p, Automorphism map) {
  static const OperatorPoly kF = OperatorPoly::symbol(Symbol::f);
  static const OperatorPoly kFd = OperatorPoly::symbol(Symbol::fd);

  OperatorPoly out;
  for (const auto& [m, c] : p.terms()) {
    Monomial bosonic = m;
    bosonic.fcreate = 0;
    bosonic.fannihilate = 0;
    if (map == Automorphism::ab_exchange) {
      std::swap(bosonic.create[0], bosonic.create[1]);
      std::swap(bosonic.annihilate[0], bosonic.annihilate[1]);
    }
    // (f†)^p f^q  ->  f^p (f†)^q, which needs re-ordering when p = q = 1.
    OperatorPoly fermion(Rational(1));
    if (m.fcreate) fermion = multiply(fermion, kF);
    if (m.fannihilate) fermion = multiply(fermion, kFd);
    out += multiply(OperatorPoly::monomial(bosonic, c), fermion);
  }
  return out;
}

// ---- text form -------------------------------------------------------------

std::string to_string(const OperatorPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Rational mag = abs(c);
    out += mag.get_str();
    if (!m.is_unit()) {
      out += ' ';
      out += monomial_text(m);
    }
  }
  return out;
}

OperatorPoly parse_poly(std::string_view text) {
  Lexer lex(text);
  if (lex.done()) lex.fail("empty input");

  OperatorPoly result;
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    char ch = lex.peek();
    if (ch == '+' || ch == '-') {
      lex.get();
      sign = ch == '-' ? -1 : 1;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff(sign);
    bool has_content = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      const auto num = lex.number();
      try {
        coeff *= parse_rational(num);
      } catch (const ParseError&) {
        lex.fail("bad coefficient '" + std::string(num) + "'");
      }
      has_content = true;
      if (lex.peek() == '*') lex.get();
    }

    OperatorPoly term(coeff);
    while (std::isalpha(static_cast<unsigned char>(lex.peek()))) {
      const auto name = lex.word();
      Symbol s;
      try {
        s = parse_symbol(name);
      } catch (const ParseError&) {
        lex.fail("unknown symbol '" + std::string(name) + "'");
      }
      unsigned exponent = 1;
      if (lex.peek() == '^') {
        lex.get();
        const auto e = lex.number();
        if (e.empty() || e.find('/') != std::string_view::npos) lex.fail("bad exponent");
        exponent = static_cast<unsigned>(std::stoul(std::string(e)));
      }
      term = multiply(term, power(OperatorPoly::symbol(s), exponent));
      has_content = true;
      if (lex.peek() == '*') lex.get();
    }
    if (!has_content) lex.fail("empty term");
    result += term;
  }
  return result;
}

}  // namespace penning
