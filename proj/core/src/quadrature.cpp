#include "penning/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "penning/errors.hpp"

namespace penning {

namespace {

// diag[k] = a_k, off[k] = b_{k+1} of the recurrence
//   b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
QuadratureRule gauss_rule(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0) {
  const auto n = diag.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);

  QuadratureRule rule;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = solver.eigenvalues()(i);
    double prev = 0.0;
    double cur = 1.0 / std::sqrt(mu0);
    double sum = cur * cur;
    double log_scale = 0.0;  // true values are the stored ones times e^{log_scale}
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const double b_prev = k == 0 ? 0.0 : off(k - 1);
      const double next = ((x - diag(k)) * cur - b_prev * prev) / off(k);
      prev = cur;
      cur = next;
      sum += cur * cur;
      if (std::abs(cur) > 1e100) {
        prev *= 1e-100;
        cur *= 1e-100;
        sum *= 1e-200;
        log_scale += 100.0 * std::numbers::ln10;
      }
    }
    const double log_w = -std::log(sum) - 2.0 * log_scale;
    rule.nodes.push_back(x);
    rule.log_weights.push_back(log_w);
    rule.weights.push_back(std::exp(log_w));
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_laguerre(std::size_t n, double alpha) {
  if (n == 0) throw DomainError("quadrature needs at least one node");
  if (!(alpha > -1.0)) throw DomainError("Laguerre weight needs alpha > -1");
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag(m), off(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i < m; ++i) {
    diag(i) = 2.0 * static_cast<double>(i) + 1.0 + alpha;
    if (i + 1 < m) {
      const double k = static_cast<double>(i + 1);
      off(i) = std::sqrt(k * (k + alpha));
    }
  }
  return gauss_rule(diag, off, std::tgamma(alpha + 1.0));
}

QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw DomainError("quadrature needs at least one node");
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) off(i) = std::sqrt(static_cast<double>(i + 1) / 2.0);
  return gauss_rule(diag, off, std::sqrt(std::numbers::pi));
}

double laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double halton(std::size_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

}  // namespace penning
