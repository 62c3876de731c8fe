#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "penning/rational.hpp"
#include "penning/trap.hpp"

namespace penning {

/// Length and frequency scales in natural units hbar = m = omega_z = 1.
struct WaveParams {
  double sigma = 1.5;
  double k = 1.0 / 3.0;  // Omega / sigma
  double Omega = 0.5;
  double r0 = 0.0;  // sigma^{-1/2}
  double s0 = 1.0;

  /// Throws DomainError unless sigma > sqrt(2).
  static WaveParams from_sigma(double sigma);
};

/// Throws InvalidQuantumNumbers unless N >= |M|, N - |M| is even and K >= 0.
void validate(const CylindricalNumbers& q);

/// Normalization constant, computed through log-Gamma.
double normalization(int n, int k, int abs_m, const WaveParams& wp);

std::complex<double> psi(const CylindricalNumbers& q, const WaveParams& wp, double rho, double phi,
                         double z);

/// (1/2)[Omega N + 2K - sigma M + Omega + 1], units of hbar omega_z.
double energy_nkm(const CylindricalNumbers& q, double sigma);
/// Exact version; throws UnsupportedError when Omega is irrational.
Rational energy_nkm_exact(const CylindricalNumbers& q, const TrapParameters& params);

struct CylindricalPoint {
  double rho = 0.0;
  double z = 0.0;
};

/// Quasi-random points (Halton bases 2 and 3) with rho in (0, 4 r0 k^{-1/2})
/// and z in (-4, 4).
std::vector<CylindricalPoint> sample_points(const WaveParams& wp, std::size_t count);

struct PdeResidual {
  double max_relative = 0.0;
  double max_absolute = 0.0;
};

/// Evaluates H psi - (E + shift) psi from analytic derivatives of the
/// Laguerre and Hermite factors. The relative residual divides by
/// |E| |psi| + eps, with eps = 1e-6 times the largest |E| |psi| over the
/// samples, so points near radial nodes do not dominate.
PdeResidual pde_residual(const CylindricalNumbers& q, const WaveParams& wp,
                         const std::vector<CylindricalPoint>& samples, double energy_shift = 0.0);

struct OverlapResult {
  Eigen::MatrixXd gram;
  std::size_t nodes = 0;   // per axis, for the accepted rule
  bool converged = false;  // successive doublings agreed within tolerance
};

/// Gram matrix of the states by product quadrature: Gauss-Laguerre in
/// alpha rho^2, the phi integral in closed form, Gauss-Hermite in z. Node
/// counts start at 40 and double until the matrix moves by less than
/// `tolerance`.
OverlapResult overlap_matrix(const std::vector<CylindricalNumbers>& states, const WaveParams& wp,
                             double tolerance = 1e-10, std::size_t max_nodes = 320);

/// Positive roots of the radial profile, counted from sign changes on a grid
/// over (0, rho_max].
int radial_node_count(const CylindricalNumbers& q, const WaveParams& wp, double rho_max,
                      std::size_t steps = 4000);

struct ProfileSample {
  double rho = 0.0;
  double z = 0.0;
  std::complex<double> value;
};

/// psi at phi on the grid rho in [0, rho_max] (rho_steps + 1 points) times
/// the given z values, rho varying fastest within each z.
std::vector<ProfileSample> profile(const CylindricalNumbers& q, const WaveParams& wp,
                                   double rho_max, std::size_t rho_steps,
                                   const std::vector<double>& z_values, double phi = 0.0);

}  // namespace penning
