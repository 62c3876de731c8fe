#pragma once

#include <cstddef>
#include <vector>

namespace penning {

/// Nodes are eigenvalues of the Jacobi matrix. Weights come from
/// 1 / sum_k p_k(x)^2 over the orthonormal polynomials, accumulated in log
/// space, so the far-tail weights keep their relative accuracy.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

/// Gauss-Laguerre rule for the weight t^alpha e^{-t} on [0, inf).
QuadratureRule gauss_laguerre(std::size_t n, double alpha = 0.0);

/// Gauss-Hermite rule for the weight e^{-x^2} on the real line.
QuadratureRule gauss_hermite(std::size_t n);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by three-term recurrence.
double laguerre(int n, double alpha, double x);

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
double hermite(int n, double x);

/// Radical-inverse (Halton) point in [0, 1) for the given prime base.
double halton(std::size_t index, unsigned base);

}  // namespace penning
