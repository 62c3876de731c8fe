#include "penning/fock.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "penning/errors.hpp"

namespace penning {

// ---- FockBasis -------------------------------------------------------------

FockBasis::FockBasis(int ca, int cb, int cc) : cutoffs_{ca, cb, cc} {
  for (int c : cutoffs_) {
    if (c <= 0) throw DomainError("Fock cutoffs must be positive");
  }
  dim_ = static_cast<std::size_t>(ca) * static_cast<std::size_t>(cb) *
         static_cast<std::size_t>(cc) * 2u;
}

bool FockBasis::contains(const StateLabel& s) const {
  return s.na >= 0 && s.na < cutoffs_[0] && s.nb >= 0 && s.nb < cutoffs_[1] && s.nc >= 0 &&
         s.nc < cutoffs_[2] && (s.nf == 0 || s.nf == 1);
}

std::size_t FockBasis::index(const StateLabel& s) const {
  if (!contains(s)) throw DomainError("state outside the truncated basis");
  return ((static_cast<std::size_t>(s.na) * cutoffs_[1] + s.nb) * cutoffs_[2] + s.nc) * 2 +
         static_cast<std::size_t>(s.nf);
}

StateLabel FockBasis::state(std::size_t i) const {
  if (i >= dim_) throw DomainError("basis index out of range");
  StateLabel s;
  s.nf = static_cast<int>(i % 2);
  i /= 2;
  s.nc = static_cast<int>(i % cutoffs_[2]);
  i /= cutoffs_[2];
  s.nb = static_cast<int>(i % cutoffs_[1]);
  s.na = static_cast<int>(i / cutoffs_[1]);
  return s;
}

// ---- SparseOperator --------------------------------------------------------

SparseOperator::SparseOperator(std::size_t dim)
    : m_(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) {}

SparseOperator::SparseOperator(Matrix m) : m_(std::move(m)) {
  m_.prune(0.0, 0.0);
  m_.makeCompressed();
}

double SparseOperator::at(std::size_t row, std::size_t col) const {
  return m_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

double SparseOperator::max_abs() const {
  double best = 0.0;
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k) {
    for (Matrix::InnerIterator it(m_, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

SparseOperator SparseOperator::transpose() const { return SparseOperator(Matrix(m_.transpose())); }

SparseOperator operator*(const SparseOperator& x, const SparseOperator& y) {
  return SparseOperator(SparseOperator::Matrix(x.m_ * y.m_));
}

SparseOperator operator+(const SparseOperator& x, const SparseOperator& y) {
  return SparseOperator(SparseOperator::Matrix(x.m_ + y.m_));
}

SparseOperator operator-(const SparseOperator& x, const SparseOperator& y) {
  return SparseOperator(SparseOperator::Matrix(x.m_ - y.m_));
}

SparseOperator operator*(double s, const SparseOperator& x) {
  return SparseOperator(SparseOperator::Matrix(s * x.m_));
}

void SparseOperator::write_coo(std::ostream& os) const {
  const auto old = os.precision(17);
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
    for (Matrix::InnerIterator it(m_, r); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  os.precision(old);
}

// ---- construction ----------------------------------------------------------

SparseOperator ladder_matrix(Symbol symbol, const FockBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.dimension());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(basis.dimension());
  for (std::size_t col = 0; col < basis.dimension(); ++col) {
    StateLabel s = basis.state(col);
    double amp = 0.0;
    switch (symbol) {
      case Symbol::a: amp = std::sqrt(s.na); --s.na; break;
      case Symbol::ad: ++s.na; amp = std::sqrt(s.na); break;
      case Symbol::b: amp = std::sqrt(s.nb); --s.nb; break;
      case Symbol::bd: ++s.nb; amp = std::sqrt(s.nb); break;
      case Symbol::c: amp = std::sqrt(s.nc); --s.nc; break;
      case Symbol::cd: ++s.nc; amp = std::sqrt(s.nc); break;
      case Symbol::f: amp = s.nf == 1 ? 1.0 : 0.0; s.nf = 0; break;
      case Symbol::fd: amp = s.nf == 0 ? 1.0 : 0.0; s.nf = 1; break;
    }
    if (amp == 0.0 || !basis.contains(s)) continue;
    entries.emplace_back(static_cast<Eigen::Index>(basis.index(s)),
                         static_cast<Eigen::Index>(col), amp);
  }
  SparseOperator::Matrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return SparseOperator(std::move(m));
}

SparseOperator to_matrix(const OperatorPoly& p, const FockBasis& basis) {
  std::array<SparseOperator, 8> ladders;
  for (int i = 0; i < 8; ++i) ladders[i] = ladder_matrix(static_cast<Symbol>(i), basis);

  const auto n = static_cast<Eigen::Index>(basis.dimension());
  SparseOperator::Matrix identity(n, n);
  identity.setIdentity();

  SparseOperator::Matrix total(n, n);
  for (const auto& [m, c] : p.terms()) {
    SparseOperator::Matrix term = identity;
    auto apply = [&](Symbol s, int times) {
      for (int k = 0; k < times; ++k) {
        term = SparseOperator::Matrix(term * ladders[static_cast<int>(s)].matrix());
      }
    };
    apply(Symbol::ad, m.create[0]);
    apply(Symbol::a, m.annihilate[0]);
    apply(Symbol::bd, m.create[1]);
    apply(Symbol::b, m.annihilate[1]);
    apply(Symbol::cd, m.create[2]);
    apply(Symbol::c, m.annihilate[2]);
    apply(Symbol::fd, m.fcreate);
    apply(Symbol::f, m.fannihilate);
    total += to_double(c) * term;
  }
  return SparseOperator(std::move(total));
}

SparseOperator interior_projector(const FockBasis& basis, const Margin& margin) {
  for (int i = 0; i < 3; ++i) {
    if (margin[i] < 0 || margin[i] >= basis.cutoffs()[i]) {
      throw DomainError("interior margin " + std::to_string(margin[i]) +
                        " must lie in [0, cutoff) for mode " + std::to_string(i));
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.dimension());
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const StateLabel s = basis.state(i);
    if (s.na < basis.cutoffs()[0] - margin[0] && s.nb < basis.cutoffs()[1] - margin[1] &&
        s.nc < basis.cutoffs()[2] - margin[2]) {
      entries.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), 1.0);
    }
  }
  SparseOperator::Matrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return SparseOperator(std::move(m));
}

Margin product_margin(std::span<const OperatorPoly* const> factors) {
  Margin margin{0, 0, 0};
  for (const OperatorPoly* p : factors) {
    for (Mode m : kBosonicModes) margin[static_cast<int>(m)] += p->max_raise(m);
  }
  return margin;
}

NumericCheck check_relation_numeric(const OperatorPoly& lhs, const OperatorPoly& rhs,
                                    const FockBasis& basis, const Margin& margin, double tol) {
  const SparseOperator proj = interior_projector(basis, margin);
  const SparseOperator diff = proj * (to_matrix(lhs, basis) - to_matrix(rhs, basis)) * proj;
  NumericCheck out;
  out.residual = diff.max_abs();
  out.pass = out.residual <= tol;
  return out;
}

NumericCheck check_bracket_numeric(const OperatorPoly& x, const OperatorPoly& y,
                                   const OperatorPoly& expected, const FockBasis& basis,
                                   double tol) {
  const Grade gx = x.grade();
  const Grade gy = y.grade();
  if (gx == Grade::mixed || gy == Grade::mixed) {
    throw GradingError("numeric bracket needs operands of definite grade");
  }
  const double sign = (gx == Grade::odd && gy == Grade::odd) ? 1.0 : -1.0;

  const std::array<const OperatorPoly*, 3> ops{&x, &y, &expected};
  Margin margin = product_margin(std::span<const OperatorPoly* const>(ops.data(), 2));
  for (Mode m : kBosonicModes) {
    auto& v = margin[static_cast<int>(m)];
    v = std::max(v, expected.max_raise(m));
  }

  const SparseOperator mx = to_matrix(x, basis);
  const SparseOperator my = to_matrix(y, basis);
  const SparseOperator bracket = mx * my + sign * (my * mx);
  const SparseOperator proj = interior_projector(basis, margin);
  const SparseOperator diff = proj * (bracket - to_matrix(expected, basis)) * proj;
  NumericCheck out;
  out.residual = diff.max_abs();
  out.pass = out.residual <= tol;
  return out;
}

}  // namespace penning
