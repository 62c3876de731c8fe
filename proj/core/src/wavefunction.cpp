#include "penning/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "penning/errors.hpp"
#include "penning/parallel.hpp"
#include "penning/quadrature.hpp"

namespace penning {

namespace {

constexpr double kPi = std::numbers::pi;

struct Factors {
  double radial;  // (rho/r0)^|M| e^{-t/2} L(t)
  double axial;   // e^{-zeta^2/2} H(zeta)
};

/// t = (k/2)(rho/r0)^2, the Laguerre argument.
double radial_scale(const WaveParams& wp) { return 0.5 * wp.k / (wp.r0 * wp.r0); }

Factors factors(const CylindricalNumbers& q, const WaveParams& wp, double rho, double z) {
  const int m = std::abs(q.m);
  const int n = (q.n - m) / 2;
  const double x = rho / wp.r0;
  const double t = 0.5 * wp.k * x * x;
  const double zeta = z / wp.s0;
  Factors f;
  f.radial = std::pow(x, m) * std::exp(-0.5 * t) * laguerre(n, m, t);
  f.axial = std::exp(-0.5 * zeta * zeta) * hermite(q.k, zeta);
  return f;
}

}  // namespace

WaveParams WaveParams::from_sigma(double sigma) {
  if (!(sigma > std::sqrt(2.0)) || !std::isfinite(sigma)) {
    throw DomainError("sigma must exceed sqrt(2)");
  }
  WaveParams wp;
  wp.sigma = sigma;
  wp.Omega = std::sqrt(sigma * sigma - 2.0);
  wp.k = wp.Omega / sigma;
  wp.r0 = 1.0 / std::sqrt(sigma);
  wp.s0 = 1.0;
  return wp;
}

void validate(const CylindricalNumbers& q) {
  if (q.k < 0) throw InvalidQuantumNumbers("K must be non-negative");
  if (q.n < std::abs(q.m)) throw InvalidQuantumNumbers("N must be at least |M|");
  if ((q.n - std::abs(q.m)) % 2 != 0) throw InvalidQuantumNumbers("N - |M| must be even");
}

double normalization(int n, int k, int abs_m, const WaveParams& wp) {
  validate({n, k, abs_m});
  const int nr = (n - abs_m) / 2;
  const double log_c2 = (abs_m + 1) * std::log(0.5 * wp.k) + std::lgamma(nr + 1.0) -
                        2.0 * std::log(wp.r0) - std::log(wp.s0) - k * std::numbers::ln2 -
                        1.5 * std::log(kPi) - std::lgamma(nr + abs_m + 1.0) - std::lgamma(k + 1.0);
  return std::exp(0.5 * log_c2);
}

std::complex<double> psi(const CylindricalNumbers& q, const WaveParams& wp, double rho, double phi,
                         double z) {
  validate(q);
  if (rho < 0.0) throw DomainError("rho must be non-negative");
  const auto f = factors(q, wp, rho, z);
  const double c = normalization(q.n, q.k, std::abs(q.m), wp);
  return c * f.radial * f.axial * std::polar(1.0, q.m * phi);
}

double energy_nkm(const CylindricalNumbers& q, double sigma) {
  validate(q);
  const double omega = std::sqrt(sigma * sigma - 2.0);
  return 0.5 * (omega * q.n + 2.0 * q.k - sigma * q.m + omega + 1.0);
}

Rational energy_nkm_exact(const CylindricalNumbers& q, const TrapParameters& params) {
  validate(q);
  const auto& f = params.exact_frequencies();
  Rational e = (f.Omega * q.n + 2 * f.omega_z * q.k - f.omega_c * q.m + f.Omega + f.omega_z) / 2;
  e.canonicalize();
  return e;
}

std::vector<CylindricalPoint> sample_points(const WaveParams& wp, std::size_t count) {
  const double rho_max = 4.0 * wp.r0 / std::sqrt(wp.k);
  std::vector<CylindricalPoint> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back({rho_max * halton(i, 2), -4.0 + 8.0 * halton(i, 3)});
  }
  return out;
}

PdeResidual pde_residual(const CylindricalNumbers& q, const WaveParams& wp,
                         const std::vector<CylindricalPoint>& samples, double energy_shift) {
  validate(q);
  const int m = std::abs(q.m);
  const int n = (q.n - m) / 2;
  const double a = radial_scale(wp);
  const double c = normalization(q.n, q.k, m, wp);
  const double e = energy_nkm(q, wp.sigma) + energy_shift;

  std::vector<double> residual(samples.size());
  std::vector<double> magnitude(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const double rho = samples[i].rho;
    const double zeta = samples[i].z / wp.s0;
    const double t = a * rho * rho;

    // R = u v w with u = (rho/r0)^m, v = e^{-t/2}, w = L_n^{(m)}(t).
    const double u = std::pow(rho / wp.r0, m);
    const double du = m * u / rho;
    const double d2u = m * (m - 1) * u / (rho * rho);
    const double v = std::exp(-0.5 * t);
    const double dv = -a * rho * v;
    const double d2v = (a * a * rho * rho - a) * v;
    const double w = laguerre(n, m, t);
    const double lp = -laguerre(n - 1, m + 1, t);
    const double lpp = laguerre(n - 2, m + 2, t);
    const double dw = lp * 2.0 * a * rho;
    const double d2w = lpp * 4.0 * a * a * rho * rho + lp * 2.0 * a;

    const double r = u * v * w;
    const double dr = du * v * w + u * dv * w + u * v * dw;
    const double d2r = d2u * v * w + u * d2v * w + u * v * d2w +
                       2.0 * (du * dv * w + du * v * dw + u * dv * dw);

    // Z = e^{-zeta^2/2} H_K(zeta)
    const double g = std::exp(-0.5 * zeta * zeta);
    const double h = hermite(q.k, zeta);
    const double hp = 2.0 * q.k * hermite(q.k - 1, zeta);
    const double hpp = 4.0 * q.k * (q.k - 1) * hermite(q.k - 2, zeta);
    const double zf = g * h;
    const double d2z = g * (hpp - 2.0 * zeta * hp + (zeta * zeta - 1.0) * h) / (wp.s0 * wp.s0);

    const double laplacian = (d2r + dr / rho - q.m * q.m * r / (rho * rho)) * zf + r * d2z;
    const double potential = wp.Omega * wp.Omega / 8.0 * rho * rho +
                             0.5 * samples[i].z * samples[i].z - 0.5 * wp.sigma * q.m;
    const double hpsi = -0.5 * laplacian + potential * r * zf;
    residual[i] = c * std::abs(hpsi - e * r * zf);
    magnitude[i] = std::abs(e) * c * std::abs(r * zf);
  });

  PdeResidual out;
  const double scale = samples.empty() ? 0.0 : *std::max_element(magnitude.begin(), magnitude.end());
  const double eps = 1e-6 * scale;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.max_absolute = std::max(out.max_absolute, residual[i]);
    const double denom = magnitude[i] + eps;
    if (denom > 0.0) out.max_relative = std::max(out.max_relative, residual[i] / denom);
  }
  return out;
}

namespace {

Eigen::MatrixXd gram_at(const std::vector<CylindricalNumbers>& states, const WaveParams& wp,
                        std::size_t nodes) {
  const auto lag = gauss_laguerre(nodes);
  const auto her = gauss_hermite(nodes);
  const double a = radial_scale(wp);
  const std::size_t grid = nodes * nodes;

  // Weight of each (t, z) node pair with the Gaussian factors divided out.
  std::vector<double> weight(grid);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      weight[i * nodes + j] = std::exp(lag.log_weights[i] + lag.nodes[i]) *
                              std::exp(her.log_weights[j] + her.nodes[j] * her.nodes[j]);
    }
  }

  std::vector<std::vector<double>> values(states.size(), std::vector<double>(grid));
  parallel_for(states.size(), [&](std::size_t s) {
    for (std::size_t i = 0; i < nodes; ++i) {
      const double rho = std::sqrt(lag.nodes[i] / a);
      for (std::size_t j = 0; j < nodes; ++j) {
        values[s][i * nodes + j] = psi(states[s], wp, rho, 0.0, her.nodes[j] * wp.s0).real();
      }
    }
  });

  // rho d rho = dt / (2a); the phi integral gives 2 pi or 0.
  const double measure = 2.0 * kPi / (2.0 * a) * wp.s0;
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = x; y < n; ++y) {
      if (states[x].m != states[y].m) continue;
      double sum = 0.0;
      const auto& vx = values[x];
      const auto& vy = values[y];
      for (std::size_t p = 0; p < grid; ++p) sum += weight[p] * vx[p] * vy[p];
      g(x, y) = g(y, x) = measure * sum;
    }
  }
  return g;
}

}  // namespace

OverlapResult overlap_matrix(const std::vector<CylindricalNumbers>& states, const WaveParams& wp,
                             double tolerance, std::size_t max_nodes) {
  for (const auto& q : states) validate(q);
  OverlapResult out;
  out.nodes = 40;
  out.gram = gram_at(states, wp, out.nodes);
  while (out.nodes * 2 <= max_nodes) {
    const std::size_t next = out.nodes * 2;
    Eigen::MatrixXd g = gram_at(states, wp, next);
    const double change = states.empty() ? 0.0 : (g - out.gram).cwiseAbs().maxCoeff();
    out.gram = std::move(g);
    out.nodes = next;
    if (change < tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

int radial_node_count(const CylindricalNumbers& q, const WaveParams& wp, double rho_max,
                      std::size_t steps) {
  validate(q);
  int count = 0;
  double previous = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double rho = rho_max * static_cast<double>(i) / static_cast<double>(steps);
    const double r = factors(q, wp, rho, 0.0).radial;
    if (r == 0.0) continue;
    if (previous != 0.0 && (r > 0) != (previous > 0)) ++count;
    previous = r;
  }
  return count;
}

std::vector<ProfileSample> profile(const CylindricalNumbers& q, const WaveParams& wp,
                                   double rho_max, std::size_t rho_steps,
                                   const std::vector<double>& z_values, double phi) {
  validate(q);
  if (!(rho_max > 0.0) || rho_steps == 0) throw DomainError("profile needs a positive rho range");
  std::vector<ProfileSample> out;
  for (double z : z_values) {
    for (std::size_t i = 0; i <= rho_steps; ++i) {
      const double rho = rho_max * static_cast<double>(i) / static_cast<double>(rho_steps);
      out.push_back({rho, z, psi(q, wp, rho, phi, z)});
    }
  }
  return out;
}

}  // namespace penning
