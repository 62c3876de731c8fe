#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "penning/fock.hpp"
#include "penning/operator_poly.hpp"
#include "penning/trap.hpp"

namespace penning {

/// The superalgebra realizations carried by the catalog.
enum class CaseId { su11_plus, su11_minus, so3_su11, su21, su211, osp26 };

inline constexpr std::array<CaseId, 6> kAllCases{CaseId::su11_plus, CaseId::su11_minus,
                                                 CaseId::so3_su11,  CaseId::su21,
                                                 CaseId::su211,     CaseId::osp26};

std::string_view to_string(CaseId id);
/// Throws UnknownNameError for anything but the six ids above.
CaseId parse_case(std::string_view name);

struct Generator {
  std::string name;
  OperatorPoly op;
  Grade grade = Grade::even;
};

/// Exact linear combination of generator names plus a multiple of the unit.
struct LinearCombination {
  std::vector<std::pair<std::string, Rational>> terms;
  Rational constant;
};

/// One expected bracket [lhs, rhs} = value.
struct Relation {
  std::string lhs;
  std::string rhs;
  LinearCombination value;
  std::string text;
};

/// When `complete` is set, every bracket not listed is expected to vanish.
struct RelationTable {
  std::vector<Relation> entries;
  bool complete = false;
};

struct ParameterPoint {
  Rational sigma;
  Rational g;
};

class GeneratorSet {
 public:
  GeneratorSet(CaseId id, std::vector<Generator> generators, RelationTable relations,
               std::vector<std::pair<std::string, std::string>> conjugate_pairs,
               std::vector<ParameterPoint> points);

  CaseId id() const { return id_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const RelationTable& relations() const { return relations_; }
  const std::vector<std::pair<std::string, std::string>>& conjugate_pairs() const {
    return conjugate_pairs_;
  }
  /// Points (sigma, g) at which the set commutes with the trap hamiltonian.
  const std::vector<ParameterPoint>& points() const { return points_; }

  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;
  const Generator& operator[](std::string_view name) const;

  std::vector<std::string> even_names() const;
  std::vector<std::string> odd_names() const;

  OperatorPoly evaluate(const LinearCombination& lc) const;

  /// Expected bracket of generators i and j from the table (with graded
  /// antisymmetry applied for reversed pairs). Unlisted pairs give zero for
  /// a complete table and nullopt otherwise.
  std::optional<OperatorPoly> expected_bracket(std::size_t i, std::size_t j) const;

  /// Copy with a generator removed; relations mentioning it are dropped.
  GeneratorSet without(std::string_view name) const;

  /// Copy with `map` applied to every generator; names and table unchanged.
  GeneratorSet transformed(Automorphism map) const;

 private:
  CaseId id_;
  std::vector<Generator> generators_;
  RelationTable relations_;
  std::vector<std::pair<std::string, std::string>> conjugate_pairs_;
  std::vector<ParameterPoint> points_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

GeneratorSet catalog(CaseId id);

/// Hypothetical four-equal-frequency hamiltonian a†a - b†b + c†c + f†f.
OperatorPoly four_frequency_hamiltonian();

// ---- verification ----------------------------------------------------------

/// One checked identity; `residual` is the exact difference lhs - rhs.
struct IdentityCheck {
  std::string identity;
  OperatorPoly residual;
  bool pass() const { return residual.is_zero(); }
};

struct VerificationReport {
  CaseId id{};
  std::vector<IdentityCheck> checks;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

/// Every pairwise supercommutator compared with the relation table. For a
/// complete table, unlisted brackets must vanish. Grade consistency of each
/// bracket and the declared hermitian-conjugate pairs are checked as well.
VerificationReport verify_relations(const GeneratorSet& set);

/// True iff [H, gen} vanishes exactly. Throws UnsupportedError when the
/// frequencies at `params` are not rational.
bool commutes_with_hamiltonian(const OperatorPoly& gen, const TrapParameters& params);

/// Each generator against the hamiltonian at every declared point; the
/// four-equal-frequency set is checked against its hypothetical hamiltonian.
VerificationReport hamiltonian_commutation(const GeneratorSet& set);

struct HigherOrderCheck {
  std::string generator;
  bool commutes = false;
};

/// The cubic-and-higher generators that commute with H at sigma = 9/4,
/// g = 2/3. Closure is not attempted.
std::vector<HigherOrderCheck> higher_order_checks();
std::vector<std::string> higher_order_generators();

class NotClosedError : public std::runtime_error {
 public:
  NotClosedError(std::string lhs, std::string rhs, OperatorPoly residual);
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }
  const OperatorPoly& residual() const { return residual_; }

 private:
  std::string lhs_;
  std::string rhs_;
  OperatorPoly residual_;
};

/// coefficients[i][j] expresses [g_i, g_j} over (g_0, ..., g_{n-1}, 1).
struct StructureConstants {
  std::vector<std::string> basis;  // generator names followed by "1"
  std::vector<std::vector<std::vector<Rational>>> coefficients;

  std::size_t size() const { return basis.size() - 1; }
  LinearCombination bracket(std::size_t i, std::size_t j) const;
};

/// Throws NotClosedError naming the first bracket outside span ∪ {unit}, and
/// std::logic_error when the generators are linearly dependent.
StructureConstants structure_constants(const GeneratorSet& set);

struct JacobiReport {
  std::size_t triples = 0;
  std::vector<std::array<std::string, 3>> failures;
};

/// Graded Jacobi identity over all ordered generator triples.
JacobiReport graded_jacobi_check(const GeneratorSet& set);

struct LadderResult {
  StateLabel state;
  double amplitude = 0.0;
};

/// Image of a number state under one generator; nullopt when it vanishes.
/// Throws DomainError when the state, or its image, does not fit in `basis`.
std::optional<LadderResult> ladder_action(const GeneratorSet& set, std::string_view name,
                                          const StateLabel& state, const FockBasis& basis);

/// Complete-set identities relating the so3_su11 or su21 generators to the
/// constants of motion at sigma = 3/2. Throws UnknownNameError for other
/// cases.
VerificationReport complete_set_identities(CaseId id);

/// Result of carrying one realization onto another through an automorphism.
struct IsomorphismReport {
  std::map<std::string, std::string> name_map;  // empty if some image is missing
  std::vector<std::string> unmatched;
  std::vector<std::string> table_mismatches;
  bool ok() const { return unmatched.empty() && table_mismatches.empty(); }
};

/// Maps every generator of `from` through `map`, matches the images with
/// generators of `to`, and compares the two relation tables under that name
/// map (including brackets implied zero by completeness).
IsomorphismReport check_isomorphism(const GeneratorSet& from, const GeneratorSet& to,
                                    Automorphism map);

/// Numeric cross-check: each pairwise bracket built from truncated matrices
/// against the expected bracket (table, or exact engine when the table is
/// silent), on the interior subspace of `basis`.
struct NumericReport {
  std::size_t brackets = 0;
  double max_residual = 0.0;
  std::vector<std::string> failures;
};

NumericReport numeric_cross_check(const GeneratorSet& set, const FockBasis& basis,
                                  double tol = 1e-12);

}  // namespace penning
