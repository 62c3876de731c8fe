#pragma once

#include <Eigen/SparseCore>

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "penning/operator_poly.hpp"

namespace penning {

/// Occupation numbers |Na, Nb, Nc, Nf>.
struct StateLabel {
  int na = 0;
  int nb = 0;
  int nc = 0;
  int nf = 0;

  friend bool operator==(const StateLabel&, const StateLabel&) = default;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

/// Truncated product basis: Na < Ca, Nb < Cb, Nc < Cc, Nf in {0, 1}.
/// Index order is lexicographic in (Na, Nb, Nc, Nf) with Nf fastest.
class FockBasis {
 public:
  FockBasis(int ca, int cb, int cc);
  explicit FockBasis(int cutoff) : FockBasis(cutoff, cutoff, cutoff) {}

  const std::array<int, 3>& cutoffs() const { return cutoffs_; }
  int cutoff(Mode m) const { return cutoffs_[static_cast<int>(m)]; }
  std::size_t dimension() const { return dim_; }

  bool contains(const StateLabel& s) const;
  std::size_t index(const StateLabel& s) const;
  StateLabel state(std::size_t index) const;

 private:
  std::array<int, 3> cutoffs_;
  std::size_t dim_;
};

/// Real sparse matrix on a FockBasis. Explicit zeros are pruned.
class SparseOperator {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim);
  explicit SparseOperator(Matrix m);

  std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double at(std::size_t row, std::size_t col) const;
  std::size_t nonzeros() const { return static_cast<std::size_t>(m_.nonZeros()); }

  /// Largest absolute entry.
  double max_abs() const;
  SparseOperator transpose() const;

  friend SparseOperator operator*(const SparseOperator& x, const SparseOperator& y);
  friend SparseOperator operator+(const SparseOperator& x, const SparseOperator& y);
  friend SparseOperator operator-(const SparseOperator& x, const SparseOperator& y);
  friend SparseOperator operator*(double s, const SparseOperator& x);

  /// Coordinate-list dump, one "row col value" line per stored entry, in
  /// row-major order.
  void write_coo(std::ostream& os) const;

 private:
  Matrix m_;
};

SparseOperator ladder_matrix(Symbol symbol, const FockBasis& basis);

/// Sum over monomials of the product of ladder matrices in written order.
SparseOperator to_matrix(const OperatorPoly& p, const FockBasis& basis);

using Margin = std::array<int, 3>;

/// Diagonal projector onto Na < Ca - ma, Nb < Cb - mb, Nc < Cc - mc.
/// Throws DomainError when a margin is negative or not below its cutoff.
SparseOperator interior_projector(const FockBasis& basis, const Margin& margin);

/// Per-mode margin that keeps every intermediate state of a product of the
/// given operators inside the basis: the sum of the operators' largest
/// creation exponents.
Margin product_margin(std::span<const OperatorPoly* const> factors);

struct NumericCheck {
  double residual = 0.0;
  bool pass = true;
};

/// max |P (M(lhs) - M(rhs)) P| on the interior subspace.
NumericCheck check_relation_numeric(const OperatorPoly& lhs, const OperatorPoly& rhs,
                                    const FockBasis& basis, const Margin& margin,
                                    double tol = 1e-12);

/// Forms the graded bracket of x and y from matrix products and compares it
/// with `expected` on the interior subspace. The margin is computed from the
/// operands so truncation cannot leak into the checked block.
NumericCheck check_bracket_numeric(const OperatorPoly& x, const OperatorPoly& y,
                                   const OperatorPoly& expected, const FockBasis& basis,
                                   double tol = 1e-12);

}  // namespace penning
