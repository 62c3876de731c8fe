#include "penning/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "penning/errors.hpp"
#include "penning/parallel.hpp"

namespace penning {

namespace {

// ---- relation text ---------------------------------------------------------
//
// Relations are written the way they are read on paper:
//   "[Jbar, F+1] = 2 F+1"      commutator-style bracket
//   "{F+1, F-1} = J"           anticommutator-style bracket
//   "{F+1, F-1} = -1/3 H1 + 2/3 H2 + 1/3 H3"
// Terms on the right are separated by " + " / " - "; a bare rational is a
// multiple of the unit. Generator names may themselves contain '+' or '-'.

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

LinearCombination parse_combination(std::string_view text) {
  LinearCombination lc;
  const auto tokens = split_ws(text);
  int sign = 1;
  std::optional<Rational> coeff;
  auto flush_name = [&](const std::string& name) {
    Rational c = coeff.value_or(Rational(1)) * sign;
    lc.terms.emplace_back(name, c);
    coeff.reset();
    sign = 1;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string tok = tokens[i];
    if (tok == "+" || tok == "-") {
      if (coeff) {
        lc.constant += *coeff * sign;
        coeff.reset();
      }
      sign = tok == "-" ? -1 : 1;
      continue;
    }
    if (is_rational_literal(tok)) {
      Rational q = parse_rational(tok);
      coeff = q;
      const bool last = i + 1 == tokens.size();
      if (last || tokens[i + 1] == "+" || tokens[i + 1] == "-") {
        lc.constant += q * sign;
        coeff.reset();
        sign = 1;
      }
      continue;
    }
    if (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) {
      sign *= tok[0] == '-' ? -1 : 1;
      tok.erase(0, 1);
    }
    flush_name(tok);
  }
  return lc;
}

Relation parse_relation(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ParseError("relation without '=': " + std::string(text));
  std::string_view lhs = text.substr(0, eq);
  const auto open = lhs.find_first_of("[{");
  const auto comma = lhs.find(',');
  const auto close = lhs.find_first_of("]}");
  if (open == std::string_view::npos || comma == std::string_view::npos ||
      close == std::string_view::npos) {
    throw ParseError("malformed bracket: " + std::string(text));
  }
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return std::string(s);
  };
  Relation r;
  r.lhs = trim(lhs.substr(open + 1, comma - open - 1));
  r.rhs = trim(lhs.substr(comma + 1, close - comma - 1));
  r.value = parse_combination(text.substr(eq + 1));
  r.text = std::string(text);
  return r;
}

RelationTable table(std::initializer_list<std::string_view> lines, bool complete = true) {
  RelationTable t;
  t.complete = complete;
  for (auto line : lines) t.entries.push_back(parse_relation(line));
  return t;
}

Generator gen(std::string name, std::string_view text) {
  Generator g;
  g.name = std::move(name);
  g.op = parse_poly(text);
  g.grade = g.op.grade();
  return g;
}

// ---- generator definitions -------------------------------------------------

std::vector<Generator> su11_plus_generators() {
  return {gen("J", "ad a + fd f"), gen("Jbar", "ad a - fd f + 1"), gen("F+1", "ad f"),
          gen("F-1", "a fd")};
}

std::vector<Generator> su11_minus_generators() {
  return {gen("K", "bd b + fd f"), gen("Kbar", "bd b - fd f + 1"), gen("F+2", "bd fd"),
          gen("F-2", "b f")};
}

std::vector<Generator> so3_generators() {
  return {gen("Lbar", "ad a + cd c + 1"), gen("L", "1/2 ad a - 1/2 cd c"), gen("E+2", "ad c"),
          gen("E-2", "a cd")};
}

const RelationTable& so3_su11_table() {
  static const RelationTable t = table({
      "[L, E+2] = E+2",
      "[L, E-2] = -E-2",
      "[E+2, E-2] = 2 L",
      "[K, F+2] = 2 F+2",
      "[K, F-2] = -2 F-2",
      "{F+2, F-2} = Kbar",
  });
  return t;
}

GeneratorSet make_su11_plus() {
  return {CaseId::su11_plus,
          su11_plus_generators(),
          table({
              "[Jbar, F+1] = 2 F+1",
              "[Jbar, F-1] = -2 F-1",
              "{F+1, F-1} = J",
          }),
          {{"F+1", "F-1"}},
          {{Rational(11, 6), Rational(18, 11)}}};
}

GeneratorSet make_su11_minus() {
  return {CaseId::su11_minus,
          su11_minus_generators(),
          table({
              "[K, F+2] = 2 F+2",
              "[K, F-2] = -2 F-2",
              "{F+2, F-2} = Kbar",
          }),
          {{"F+2", "F-2"}},
          {{Rational(9, 4), Rational(2, 9)}}};
}

GeneratorSet make_so3_su11() {
  auto gens = so3_generators();
  for (auto& g : su11_minus_generators()) gens.push_back(std::move(g));
  return {CaseId::so3_su11,
          std::move(gens),
          so3_su11_table(),
          {{"E+2", "E-2"}, {"F+2", "F-2"}},
          {{Rational(3, 2), Rational(2, 3)}}};
}

GeneratorSet make_su21() {
  std::vector<Generator> gens{
      gen("M", "ad a + cd c + fd f + 1/2"),
      gen("Mbar", "bd b + 1/2"),
      gen("Lt", "1/2 ad a + 1/2 cd c + fd f"),
      gen("L", "1/2 ad a - 1/2 cd c"),
      gen("E+2", "ad c"),
      gen("E-2", "a cd"),
      gen("F+1", "ad f"),
      gen("F-1", "a fd"),
      gen("F+3", "cd f"),
      gen("F-3", "c fd"),
  };
  return {CaseId::su21,
          std::move(gens),
          table({
              "[L, E+2] = E+2",
              "[L, E-2] = -E-2",
              "[E+2, E-2] = 2 L",
              "{F+1, F-1} = Lt + L",
              "{F+3, F-3} = Lt - L",
              "{F+1, F-3} = E+2",
              "{F-1, F+3} = E-2",
              "[Lt, F+1] = -1/2 F+1",
              "[Lt, F-1] = 1/2 F-1",
              "[Lt, F+3] = -1/2 F+3",
              "[Lt, F-3] = 1/2 F-3",
              "[L, F+1] = 1/2 F+1",
              "[L, F-1] = -1/2 F-1",
              "[L, F+3] = -1/2 F+3",
              "[L, F-3] = 1/2 F-3",
              "[E+2, F+3] = F+1",
              "[E-2, F-3] = -F-1",
              "[E+2, F-1] = -F-3",
              "[E-2, F+1] = F+3",
          }),
          {{"E+2", "E-2"}, {"F+1", "F-1"}, {"F+3", "F-3"}},
          {{Rational(3, 2), Rational(4, 3)}}};
}

GeneratorSet make_su211() {
  std::vector<Generator> gens{
      gen("H0", "ad a - bd b + cd c + fd f"),
      gen("H1", "bd b + cd c + 1"),
      gen("H2", "ad a + bd b + 1"),
      gen("H3", "ad a - bd b + cd c + 3 fd f - 1"),
      gen("E+1", "bd cd"),
      gen("E-1", "b c"),
      gen("E+2", "ad c"),
      gen("E-2", "a cd"),
      gen("E+3", "ad bd"),
      gen("E-3", "a b"),
      gen("F+1", "ad f"),
      gen("F-1", "a fd"),
      gen("F+2", "bd fd"),
      gen("F-2", "b f"),
      gen("F+3", "cd f"),
      gen("F-3", "c fd"),
  };
  return {CaseId::su211,
          std::move(gens),
          table({
              // even-even
              "[H1, E+1] = 2 E+1",
              "[H1, E-1] = -2 E-1",
              "[H1, E+2] = -E+2",
              "[H1, E-2] = E-2",
              "[H1, E+3] = E+3",
              "[H1, E-3] = -E-3",
              "[H2, E+1] = E+1",
              "[H2, E-1] = -E-1",
              "[H2, E+2] = E+2",
              "[H2, E-2] = -E-2",
              "[H2, E+3] = 2 E+3",
              "[H2, E-3] = -2 E-3",
              "[E+2, E-3] = -E-1",
              "[E-2, E+3] = E+1",
              "[E+3, E-1] = -E+2",
              "[E-3, E+1] = E-2",
              "[E+1, E+2] = -E+3",
              "[E-1, E-2] = E-3",
              "[E+1, E-1] = -H1",
              "[E+2, E-2] = -H1 + H2",
              "[E+3, E-3] = -H2",
              // odd-odd
              "{F+2, F+3} = E+1",
              "{F-2, F-3} = E-1",
              "{F+1, F-3} = E+2",
              "{F-1, F+3} = E-2",
              "{F+1, F+2} = E+3",
              "{F-1, F-2} = E-3",
              "{F+1, F-1} = -1/3 H1 + 2/3 H2 + 1/3 H3",
              "{F+2, F-2} = 1/3 H1 + 1/3 H2 - 1/3 H3",
              "{F+3, F-3} = 2/3 H1 - 1/3 H2 + 1/3 H3",
              // even-odd
              "[H3, F+1] = -2 F+1",
              "[H3, F-1] = 2 F-1",
              "[H3, F+2] = 2 F+2",
              "[H3, F-2] = -2 F-2",
              "[H3, F+3] = -2 F+3",
              "[H3, F-3] = 2 F-3",
              "[H1, F+2] = F+2",
              "[H1, F-2] = -F-2",
              "[H1, F+3] = F+3",
              "[H1, F-3] = -F-3",
              "[H2, F+1] = F+1",
              "[H2, F-1] = -F-1",
              "[H2, F+2] = F+2",
              "[H2, F-2] = -F-2",
              "[E+1, F-2] = -F+3",
              "[E-1, F+2] = F-3",
              "[E+1, F-3] = -F+2",
              "[E-1, F+3] = F-2",
              "[E+3, F-1] = -F+2",
              "[E-3, F+1] = F-2",
              "[E+3, F-2] = -F+1",
              "[E-3, F+2] = F-1",
              "[E+2, F+3] = F+1",
              "[E-2, F-3] = -F-1",
              "[E+2, F-1] = -F-3",
              "[E-2, F+1] = F+3",
          }),
          {{"E+1", "E-1"}, {"E+2", "E-2"}, {"E+3", "E-3"}, {"F+1", "F-1"}, {"F+2", "F-2"},
           {"F+3", "F-3"}},
          {}};
}

GeneratorSet make_osp26() {
  constexpr std::array<std::string_view, 6> bosons{"a", "ad", "b", "bd", "c", "cd"};
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < bosons.size(); ++i) {
    for (std::size_t j = i; j < bosons.size(); ++j) {
      const std::string text = std::string(bosons[i]) + " " + std::string(bosons[j]);
      gens.push_back(gen(std::string(bosons[i]) + "." + std::string(bosons[j]), text));
    }
  }
  gens.push_back(gen("fd.f", "fd f"));
  for (auto x : bosons) {
    for (std::string_view y : {"f", "fd"}) {
      gens.push_back(gen(std::string(x) + "." + std::string(y), std::string(x) + " " + std::string(y)));
    }
  }
  // Conjugate pairs follow from (x y)† = y† x†.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const OperatorPoly d = gens[i].op.dagger();
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[j].op == d) pairs.emplace_back(gens[i].name, gens[j].name);
    }
  }
  return {CaseId::osp26, std::move(gens), RelationTable{{}, false}, std::move(pairs), {}};
}

std::string bracket_text(const Generator& x, const Generator& y) {
  const bool anti = x.grade == Grade::odd && y.grade == Grade::odd;
  return std::string(anti ? "{" : "[") + x.name + ", " + y.name + (anti ? "}" : "]");
}

int graded_sign(Grade x, Grade y) { return (x == Grade::odd && y == Grade::odd) ? 1 : -1; }

Grade bracket_grade(Grade x, Grade y) { return x == y ? Grade::even : Grade::odd; }

}  // namespace

// ---- CaseId ----------------------------------------------------------------

std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::su11_plus: return "su11_plus";
    case CaseId::su11_minus: return "su11_minus";
    case CaseId::so3_su11: return "so3_su11";
    case CaseId::su21: return "su21";
    case CaseId::su211: return "su211";
    case CaseId::osp26: return "osp26";
  }
  return "?";
}

CaseId parse_case(std::string_view name) {
  for (CaseId id : kAllCases) {
    if (to_string(id) == name) return id;
  }
  throw UnknownNameError("unknown case '" + std::string(name) + "'");
}

// ---- GeneratorSet ----------------------------------------------------------

GeneratorSet::GeneratorSet(CaseId id, std::vector<Generator> generators, RelationTable relations,
                           std::vector<std::pair<std::string, std::string>> conjugate_pairs,
                           std::vector<ParameterPoint> points)
    : id_(id),
      generators_(std::move(generators)),
      relations_(std::move(relations)),
      conjugate_pairs_(std::move(conjugate_pairs)),
      points_(std::move(points)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.op.grade() == Grade::mixed) {
      throw GradingError("generator " + g.name + " has no definite grade");
    }
    if (!index_.emplace(g.name, i).second) {
      throw std::logic_error("duplicate generator name " + g.name);
    }
  }
  auto check = [&](const std::string& n) {
    if (n != "1" && !contains(n)) {
      throw UnknownNameError("relation refers to unknown generator '" + n + "'");
    }
  };
  for (const auto& r : relations_.entries) {
    check(r.lhs);
    check(r.rhs);
    for (const auto& [n, c] : r.value.terms) check(n);
  }
  for (const auto& [x, y] : conjugate_pairs_) {
    check(x);
    check(y);
  }
}

bool GeneratorSet::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

std::size_t GeneratorSet::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownNameError("no generator '" + std::string(name) + "'");
  return it->second;
}

const Generator& GeneratorSet::operator[](std::string_view name) const {
  return generators_[index_of(name)];
}

std::vector<std::string> GeneratorSet::even_names() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) {
    if (g.grade == Grade::even) out.push_back(g.name);
  }
  return out;
}

std::vector<std::string> GeneratorSet::odd_names() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) {
    if (g.grade == Grade::odd) out.push_back(g.name);
  }
  return out;
}

OperatorPoly GeneratorSet::evaluate(const LinearCombination& lc) const {
  OperatorPoly p(lc.constant);
  for (const auto& [name, c] : lc.terms) p += c * (*this)[name].op;
  return p;
}

std::optional<OperatorPoly> GeneratorSet::expected_bracket(std::size_t i, std::size_t j) const {
  const auto& x = generators_[i];
  const auto& y = generators_[j];
  for (const auto& r : relations_.entries) {
    if (r.lhs == x.name && r.rhs == y.name) return evaluate(r.value);
    if (r.lhs == y.name && r.rhs == x.name) {
      // [y, x} = -(-1)^{|x||y|} [x, y}
      return Rational(graded_sign(x.grade, y.grade)) * evaluate(r.value);
    }
  }
  if (relations_.complete) return OperatorPoly{};
  return std::nullopt;
}

GeneratorSet GeneratorSet::without(std::string_view name) const {
  std::vector<Generator> gens;
  for (const auto& g : generators_) {
    if (g.name != name) gens.push_back(g);
  }
  RelationTable t;
  t.complete = relations_.complete;
  for (const auto& r : relations_.entries) {
    bool mentions = r.lhs == name || r.rhs == name;
    for (const auto& [n, c] : r.value.terms) mentions = mentions || n == name;
    if (!mentions) t.entries.push_back(r);
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : conjugate_pairs_) {
    if (p.first != name && p.second != name) pairs.push_back(p);
  }
  return {id_, std::move(gens), std::move(t), std::move(pairs), points_};
}

GeneratorSet GeneratorSet::transformed(Automorphism map) const {
  std::vector<Generator> gens = generators_;
  for (auto& g : gens) {
    g.op = apply_automorphism(g.op, map);
    g.grade = g.op.grade();
  }
  return {id_, std::move(gens), relations_, conjugate_pairs_, points_};
}

GeneratorSet catalog(CaseId id) {
  switch (id) {
    case CaseId::su11_plus: return make_su11_plus();
    case CaseId::su11_minus: return make_su11_minus();
    case CaseId::so3_su11: return make_so3_su11();
    case CaseId::su21: return make_su21();
    case CaseId::su211: return make_su211();
    case CaseId::osp26: return make_osp26();
  }
  throw UnknownNameError("unknown case");
}

OperatorPoly four_frequency_hamiltonian() { return parse_poly("ad a - bd b + cd c + fd f"); }

// ---- verification ----------------------------------------------------------

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass(); }));
}

VerificationReport verify_relations(const GeneratorSet& set) {
  const auto& gens = set.generators();
  const std::size_t n = gens.size();

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::optional<IdentityCheck>> slots(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    auto expected = set.expected_bracket(i, j);
    if (!expected) return;
    const OperatorPoly actual = supercommutator(gens[i].op, gens[j].op);
    IdentityCheck c;
    c.identity = bracket_text(gens[i], gens[j]) + " = " + to_string(*expected);
    c.residual = actual - *expected;
    if (!actual.is_zero() && actual.grade() != bracket_grade(gens[i].grade, gens[j].grade)) {
      c.identity += " (grade violation)";
      if (c.residual.is_zero()) c.residual = actual;
    }
    slots[k] = std::move(c);
  });

  VerificationReport report;
  report.id = set.id();
  for (auto& s : slots) {
    if (s) report.checks.push_back(std::move(*s));
  }
  for (const auto& [x, y] : set.conjugate_pairs()) {
    IdentityCheck c;
    c.identity = x + "^dagger = " + y;
    c.residual = set[x].op.dagger() - set[y].op;
    report.checks.push_back(std::move(c));
  }
  return report;
}

bool commutes_with_hamiltonian(const OperatorPoly& gen, const TrapParameters& params) {
  if (!params.is_exact()) {
    throw UnsupportedError("exact commutation needs rational frequencies");
  }
  return supercommutator(hamiltonian_poly(params), gen).is_zero();
}

VerificationReport hamiltonian_commutation(const GeneratorSet& set) {
  VerificationReport report;
  report.id = set.id();
  auto check_against = [&](const OperatorPoly& h, const std::string& label) {
    for (const auto& g : set.generators()) {
      IdentityCheck c;
      c.identity = "[H(" + label + "), " + g.name + "] = 0";
      c.residual = supercommutator(h, g.op);
      report.checks.push_back(std::move(c));
    }
  };
  if (set.id() == CaseId::su211) {
    check_against(four_frequency_hamiltonian(), "four equal frequencies");
  }
  for (const auto& p : set.points()) {
    const auto params = TrapParameters::exact(p.sigma, p.g);
    check_against(hamiltonian_poly(params),
                  "sigma=" + p.sigma.get_str() + ", g=" + p.g.get_str());
  }
  return report;
}

std::vector<std::string> higher_order_generators() {
  return {"ad c^2", "a cd^2", "bd^4 cd", "b^4 c", "a b^8", "ad bd^8", "b c fd"};
}

std::vector<HigherOrderCheck> higher_order_checks() {
  const auto params = TrapParameters::exact(Rational(9, 4), Rational(2, 3));
  std::vector<HigherOrderCheck> out;
  for (const auto& text : higher_order_generators()) {
    out.push_back({text, commutes_with_hamiltonian(parse_poly(text), params)});
  }
  return out;
}

NotClosedError::NotClosedError(std::string lhs, std::string rhs, OperatorPoly residual)
    : std::runtime_error("bracket of " + lhs + " and " + rhs +
                         " leaves the span; residual " + to_string(residual)),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)),
      residual_(std::move(residual)) {}

LinearCombination StructureConstants::bracket(std::size_t i, std::size_t j) const {
  LinearCombination lc;
  const auto& row = coefficients[i][j];
  for (std::size_t k = 0; k + 1 < basis.size(); ++k) {
    if (sgn(row[k]) != 0) lc.terms.emplace_back(basis[k], row[k]);
  }
  lc.constant = row.back();
  return lc;
}

namespace {

/// Exact span-membership solver over monomial coordinates. Vectors are
/// inserted in order; each stored vector has a pivot monomial that no later
/// vector touches, so a single forward sweep reduces any target.
class SpanSolver {
 public:
  explicit SpanSolver(std::size_t columns) : columns_(columns) {}

  /// Returns false when `v` is already in the span.
  bool insert(const OperatorPoly& v, std::size_t column) {
    std::vector<Rational> combo(columns_);
    combo[column] = 1;
    OperatorPoly r = v;
    reduce(r, combo);
    if (r.is_zero()) return false;
    const Monomial pivot = r.terms().begin()->first;
    const Rational inv = 1 / r.terms().begin()->second;
    r *= inv;
    for (auto& c : combo) c *= inv;
    rows_.push_back({pivot, std::move(r), std::move(combo)});
    return true;
  }

  /// Coefficients over the inserted columns, or the non-zero remainder.
  std::pair<std::vector<Rational>, OperatorPoly> solve(const OperatorPoly& target) const {
    std::vector<Rational> combo(columns_);
    OperatorPoly r = target;
    for (const auto& row : rows_) {
      const Rational t = r.coefficient(row.pivot);
      if (sgn(t) == 0) continue;
      r -= t * row.vec;
      for (std::size_t k = 0; k < columns_; ++k) combo[k] += t * row.combo[k];
    }
    return {std::move(combo), std::move(r)};
  }

 private:
  struct Row {
    Monomial pivot;
    OperatorPoly vec;
    std::vector<Rational> combo;
  };

  void reduce(OperatorPoly& r, std::vector<Rational>& combo) const {
    for (const auto& row : rows_) {
      const Rational t = r.coefficient(row.pivot);
      if (sgn(t) == 0) continue;
      r -= t * row.vec;
      for (std::size_t k = 0; k < columns_; ++k) combo[k] -= t * row.combo[k];
    }
  }

  std::size_t columns_;
  std::vector<Row> rows_;
};

}  // namespace

StructureConstants structure_constants(const GeneratorSet& set) {
  const auto& gens = set.generators();
  const std::size_t n = gens.size();

  SpanSolver solver(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!solver.insert(gens[i].op, i)) {
      throw std::logic_error("generator " + gens[i].name + " is linearly dependent on the others");
    }
  }
  if (!solver.insert(OperatorPoly(Rational(1)), n)) {
    throw std::logic_error("the unit lies in the span of the generators");
  }

  StructureConstants sc;
  for (const auto& g : gens) sc.basis.push_back(g.name);
  sc.basis.emplace_back("1");
  sc.coefficients.assign(n, std::vector<std::vector<Rational>>(n));

  std::vector<std::optional<NotClosedError>> errors(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto [combo, remainder] = solver.solve(supercommutator(gens[i].op, gens[j].op));
      if (!remainder.is_zero()) {
        errors[i].emplace(gens[i].name, gens[j].name, std::move(remainder));
        return;
      }
      sc.coefficients[i][j] = std::move(combo);
    }
  });
  for (auto& e : errors) {
    if (e) throw *e;
  }
  return sc;
}

JacobiReport graded_jacobi_check(const GeneratorSet& set) {
  const auto& gens = set.generators();
  const std::size_t n = gens.size();

  std::vector<std::vector<OperatorPoly>> br(n, std::vector<OperatorPoly>(n));
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) br[i][j] = supercommutator(gens[i].op, gens[j].op);
  });

  auto parity = [&](std::size_t i) { return gens[i].grade == Grade::odd ? 1 : 0; };
  auto sign = [](int e) { return Rational(e % 2 == 0 ? 1 : -1); };

  std::vector<std::vector<std::array<std::string, 3>>> failures(n);
  parallel_for(n, [&](std::size_t x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        OperatorPoly sum = sign(parity(x) * parity(z)) * supercommutator(gens[x].op, br[y][z]);
        sum += sign(parity(y) * parity(x)) * supercommutator(gens[y].op, br[z][x]);
        sum += sign(parity(z) * parity(y)) * supercommutator(gens[z].op, br[x][y]);
        if (!sum.is_zero()) failures[x].push_back({gens[x].name, gens[y].name, gens[z].name});
      }
    }
  });

  JacobiReport report;
  report.triples = n * n * n;
  for (auto& f : failures) {
    for (auto& t : f) report.failures.push_back(std::move(t));
  }
  return report;
}

std::optional<LadderResult> ladder_action(const GeneratorSet& set, std::string_view name,
                                          const StateLabel& state, const FockBasis& basis) {
  const OperatorPoly& op = set[name].op;
  if (!basis.contains(state)) throw DomainError("state outside the truncated basis");
  for (Mode m : kBosonicModes) {
    const int occupation = m == Mode::a ? state.na : m == Mode::b ? state.nb : state.nc;
    if (occupation + op.max_raise(m) >= basis.cutoff(m)) {
      throw DomainError("image of the state may leave the truncated basis");
    }
  }
  const SparseOperator mat = to_matrix(op, basis);
  const auto col = static_cast<Eigen::Index>(basis.index(state));
  // Column access on a row-major matrix: scan the column through a transpose.
  const SparseOperator::Matrix t = mat.matrix().transpose();
  std::optional<LadderResult> result;
  for (SparseOperator::Matrix::InnerIterator it(t, col); it; ++it) {
    if (result) throw std::logic_error("generator " + std::string(name) + " is not a ladder");
    result = LadderResult{basis.state(static_cast<std::size_t>(it.col())), it.value()};
  }
  return result;
}

VerificationReport complete_set_identities(CaseId id) {
  const Rational sigma(3, 2);
  VerificationReport report;
  report.id = id;

  auto add = [&](std::string identity, const OperatorPoly& lhs, const OperatorPoly& rhs) {
    report.checks.push_back({std::move(identity), lhs - rhs});
  };

  if (id == CaseId::so3_su11) {
    const auto set = catalog(id);
    const auto c = constants_of_motion(TrapParameters::exact(sigma, Rational(2, 3)));
    const Rational two_thirds(2, 3), third(1, 3), half(1, 2);
    add("Lbar = 2 Hrho + 2/3 Hphi + Hz", set["Lbar"].op, 2 * c.H_rho + two_thirds * c.H_phi + c.H_z);
    add("L = Hrho + 1/3 Hphi - 1/2 Hz", set["L"].op, c.H_rho + third * c.H_phi - half * c.H_z);
    add("Kbar = 2 Hrho - 2/3 Hphi - 2 Hf", set["Kbar"].op,
        2 * c.H_rho - two_thirds * c.H_phi - 2 * c.H_f);
    add("K = 2 Hrho + 2/3 Hphi + 2 Hf", set["K"].op, 2 * c.H_rho + two_thirds * c.H_phi + 2 * c.H_f);
    return report;
  }
  if (id == CaseId::su21) {
    const auto set = catalog(id);
    const auto c = constants_of_motion(TrapParameters::exact(sigma, Rational(4, 3)));
    const Rational two_thirds(2, 3), third(1, 3), half(1, 2);
    add("Mbar = 2 Hrho - 2/3 Hphi", set["Mbar"].op, 2 * c.H_rho - two_thirds * c.H_phi);
    add("M = 2 Hrho + 2/3 Hphi + Hz + Hf", set["M"].op,
        2 * c.H_rho + two_thirds * c.H_phi + c.H_z + c.H_f);
    add("Lt = Hrho + 1/3 Hphi + 1/2 Hz + Hf", set["Lt"].op,
        c.H_rho + third * c.H_phi + half * c.H_z + c.H_f);
    add("L = Hrho + 1/3 Hphi - 1/2 Hz", set["L"].op, c.H_rho + third * c.H_phi - half * c.H_z);
    add("Hf = 2 Lt - M", c.H_f, 2 * set["Lt"].op - set["M"].op);
    return report;
  }
  throw UnknownNameError("complete-set identities exist for so3_su11 and su21 only");
}

IsomorphismReport check_isomorphism(const GeneratorSet& from, const GeneratorSet& to,
                                    Automorphism map) {
  IsomorphismReport report;
  const auto mapped = from.transformed(map);
  for (const auto& g : mapped.generators()) {
    auto it = std::find_if(to.generators().begin(), to.generators().end(),
                           [&](const Generator& h) { return h.op == g.op; });
    if (it == to.generators().end()) {
      report.unmatched.push_back(g.name);
    } else {
      report.name_map[g.name] = it->name;
    }
  }
  if (!report.unmatched.empty()) return report;

  const std::size_t n = from.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto& xi = from.generators()[i];
      const auto& xj = from.generators()[j];
      auto src = from.expected_bracket(i, j);
      auto dst = to.expected_bracket(to.index_of(report.name_map[xi.name]),
                                     to.index_of(report.name_map[xj.name]));
      if (!src && !dst) continue;
      if (!src || !dst) {
        report.table_mismatches.push_back(bracket_text(xi, xj) + ": listed on one side only");
        continue;
      }
      // Carry the source bracket through the map and compare in the target.
      if (apply_automorphism(*src, map) != *dst) {
        report.table_mismatches.push_back(bracket_text(xi, xj));
      }
    }
  }
  return report;
}

NumericReport numeric_cross_check(const GeneratorSet& set, const FockBasis& basis, double tol) {
  const auto& gens = set.generators();
  const std::size_t n = gens.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> residuals(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    auto expected = set.expected_bracket(i, j);
    const OperatorPoly target =
        expected ? *expected : supercommutator(gens[i].op, gens[j].op);
    residuals[k] = check_bracket_numeric(gens[i].op, gens[j].op, target, basis, tol).residual;
  });

  NumericReport report;
  report.brackets = pairs.size();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    report.max_residual = std::max(report.max_residual, residuals[k]);
    if (residuals[k] > tol) {
      report.failures.push_back(bracket_text(gens[pairs[k].first], gens[pairs[k].second]));
    }
  }
  return report;
}

}  // namespace penning
