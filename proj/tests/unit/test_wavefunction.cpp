#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "penning/errors.hpp"
#include "penning/quadrature.hpp"
#include "penning/trap.hpp"
#include "penning/wavefunction.hpp"

using namespace penning;

namespace {

std::vector<CylindricalNumbers> states_up_to(int max_n, int max_k) {
  std::vector<CylindricalNumbers> out;
  for (int n = 0; n <= max_n; ++n) {
    for (int m = -n; m <= n; m += 2) {
      for (int k = 0; k <= max_k; ++k) out.push_back({n, k, m});
    }
  }
  return out;
}

}  // namespace

TEST(Quadrature, LaguerreMoments) {
  const auto rule = gauss_laguerre(10);
  double sum = 0.0, cubic = 0.0, ninth = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i];
    cubic += rule.weights[i] * x * x * x;
    ninth += rule.weights[i] * std::pow(x, 9);
    EXPECT_NEAR(std::exp(rule.log_weights[i]), rule.weights[i], 1e-14 * rule.weights[i]);
  }
  EXPECT_NEAR(sum, 1.0, 1e-13);
  EXPECT_NEAR(cubic, 6.0, 1e-12);
  EXPECT_NEAR(ninth, 362880.0, 1e-8);

  const auto gen = gauss_laguerre(8, 2.0);
  double m0 = 0.0;
  for (double w : gen.weights) m0 += w;
  EXPECT_NEAR(m0, 2.0, 1e-13);  // Gamma(3)
}

TEST(Quadrature, HermiteMoments) {
  const auto rule = gauss_hermite(12);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double sum = 0.0, second = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    sum += rule.weights[i];
    second += rule.weights[i] * x * x;
    odd += rule.weights[i] * x * x * x;
  }
  EXPECT_NEAR(sum, sqrt_pi, 1e-13);
  EXPECT_NEAR(second, sqrt_pi / 2.0, 1e-13);
  EXPECT_NEAR(odd, 0.0, 1e-13);
}

TEST(Quadrature, TailWeightsStayPositive) {
  const auto rule = gauss_hermite(320);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    EXPECT_TRUE(std::isfinite(rule.log_weights[i]));
  }
  // Symmetric rule.
  EXPECT_NEAR(rule.log_weights.front(), rule.log_weights.back(),
              1e-8 * std::abs(rule.log_weights.front()));
}

TEST(Polynomials, RecurrenceValues) {
  for (double x : {0.0, 0.3, 1.7, 4.2}) {
    EXPECT_DOUBLE_EQ(laguerre(0, 1.0, x), 1.0);
    EXPECT_NEAR(laguerre(2, 0.0, x), 1.0 - 2.0 * x + x * x / 2.0, 1e-13);
    EXPECT_NEAR(laguerre(1, 2.0, x), 3.0 - x, 1e-14);
    EXPECT_NEAR(hermite(3, x), 8 * x * x * x - 12 * x, 1e-12);
    EXPECT_NEAR(hermite(2, x), 4 * x * x - 2, 1e-13);
  }
  EXPECT_EQ(laguerre(-1, 0.0, 1.0), 0.0);
  EXPECT_EQ(hermite(-1, 1.0), 0.0);
  EXPECT_EQ(hermite(1, 0.0), 0.0);
}

TEST(Polynomials, Halton) {
  EXPECT_DOUBLE_EQ(halton(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(halton(3, 2), 0.75);
  EXPECT_DOUBLE_EQ(halton(1, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(halton(4, 3), 4.0 / 9.0);
}

TEST(WaveParams, Scales) {
  const auto wp = WaveParams::from_sigma(1.5);
  EXPECT_NEAR(wp.Omega, 0.5, 1e-15);
  EXPECT_NEAR(wp.k, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(wp.r0, 1.0 / std::sqrt(1.5), 1e-15);
  EXPECT_EQ(wp.s0, 1.0);
  EXPECT_THROW(WaveParams::from_sigma(1.4), DomainError);
  EXPECT_THROW(WaveParams::from_sigma(std::sqrt(2.0)), DomainError);
}

TEST(Normalization, UnitNormsByQuadrature) {
  for (double sigma : {1.5, 2.25}) {
    const auto wp = WaveParams::from_sigma(sigma);
    const auto states = states_up_to(4, 3);
    const auto result = overlap_matrix(states, wp);
    EXPECT_TRUE(result.converged);
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = 0; j < states.size(); ++j) {
        const double expected = i == j ? 1.0 : 0.0;
        EXPECT_NEAR(result.gram(i, j), expected, 1e-8)
            << "sigma=" << sigma << " (" << states[i].n << "," << states[i].k << ","
            << states[i].m << ") (" << states[j].n << "," << states[j].k << "," << states[j].m
            << ")";
      }
    }
  }
}

TEST(Normalization, GramExample) {
  const auto wp = WaveParams::from_sigma(1.5);
  const std::vector<CylindricalNumbers> states{{0, 0, 0}, {2, 0, 0}, {2, 0, 2}, {0, 1, 0}};
  const auto result = overlap_matrix(states, wp);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(result.gram(i, i), 1.0, 1e-8);
    for (int j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_LT(std::abs(result.gram(i, j)), 1e-8);
      }
    }
    if (i != 2) {
      EXPECT_EQ(result.gram(i, 2), 0.0);
      EXPECT_EQ(result.gram(2, i), 0.0);
    }
  }
}

TEST(Normalization, ClosedFormRatios) {
  const auto wp = WaveParams::from_sigma(1.5);
  for (int k = 0; k < 5; ++k) {
    const double c0 = normalization(2, k, 0, wp);
    const double c1 = normalization(2, k + 1, 0, wp);
    EXPECT_NEAR(c1 * c1 / (c0 * c0), 1.0 / (2.0 * (k + 1)), 1e-14);
  }
  // Ground state: C^2 = (k/2) / (r0^2 s0 pi^{3/2}).
  const double c = normalization(0, 0, 0, wp);
  EXPECT_NEAR(c * c, (wp.k / 2.0) / (wp.r0 * wp.r0 * std::pow(std::numbers::pi, 1.5)), 1e-14);
  EXPECT_GT(normalization(4, 3, 4, wp), 0.0);
}

TEST(Psi, Symmetries) {
  const auto wp = WaveParams::from_sigma(1.8);
  for (const CylindricalNumbers q : {CylindricalNumbers{3, 1, 1}, CylindricalNumbers{4, 2, 2},
                                     CylindricalNumbers{2, 0, 0}}) {
    const CylindricalNumbers mirrored{q.n, q.k, -q.m};
    for (double rho : {0.1, 0.7, 1.9}) {
      for (double phi : {0.0, 0.4, 2.5}) {
        for (double z : {-1.2, 0.3}) {
          const auto v = psi(q, wp, rho, phi, z);
          const auto w = psi(mirrored, wp, rho, phi, z);
          EXPECT_NEAR(std::abs(w - std::conj(v)), 0.0, 1e-15 * std::max(1.0, std::abs(v)));
          EXPECT_NEAR(std::abs(w - psi(q, wp, rho, -phi, z)), 0.0, 1e-15 * std::max(1.0, std::abs(v)));
          const auto shifted = psi(q, wp, rho, phi + 2.0 * std::numbers::pi, z);
          EXPECT_NEAR(std::abs(v - shifted), 0.0, 1e-14 * std::max(1e-300, std::abs(v)) + 1e-300);
        }
      }
    }
  }
  EXPECT_EQ(psi({2, 1, 0}, wp, 0.5, 0.3, 0.0), std::complex<double>(0.0, 0.0));
  const auto ground = psi({0, 0, 0}, wp, 0.5, 0.0, 0.2);
  EXPECT_EQ(ground, psi({0, 0, 0}, wp, 0.5, 1.3, 0.2));
  EXPECT_EQ(ground.imag(), 0.0);
}

TEST(Psi, InvalidQuantumNumbers) {
  const auto wp = WaveParams::from_sigma(1.5);
  EXPECT_THROW(psi({1, 0, 0}, wp, 0.5, 0.0, 0.0), InvalidQuantumNumbers);
  EXPECT_THROW(psi({1, 0, 3}, wp, 0.5, 0.0, 0.0), InvalidQuantumNumbers);
  EXPECT_THROW(psi({2, -1, 0}, wp, 0.5, 0.0, 0.0), InvalidQuantumNumbers);
  EXPECT_THROW(energy_nkm({3, 0, 0}, 1.5), InvalidQuantumNumbers);
  EXPECT_NO_THROW(validate({3, 0, -3}));
}

TEST(Psi, RadialNodes) {
  const auto wp = WaveParams::from_sigma(1.5);
  const double rho_max = 4.0 * wp.r0 / std::sqrt(wp.k);
  for (const auto& q : states_up_to(6, 0)) {
    EXPECT_EQ(radial_node_count(q, wp, rho_max), (q.n - std::abs(q.m)) / 2)
        << q.n << " " << q.m;
  }
}

TEST(Psi, ProfileLayout) {
  const auto wp = WaveParams::from_sigma(1.5);
  const auto samples = profile({2, 1, 2}, wp, 2.0, 10, {-0.5, 0.5});
  ASSERT_EQ(samples.size(), 22u);
  EXPECT_EQ(samples[0].rho, 0.0);
  EXPECT_EQ(samples[0].z, -0.5);
  EXPECT_DOUBLE_EQ(samples[10].rho, 2.0);
  EXPECT_EQ(samples[11].z, 0.5);
  EXPECT_EQ(samples[3].value, psi({2, 1, 2}, wp, samples[3].rho, 0.0, -0.5));
}

TEST(Energy, Examples) {
  EXPECT_NEAR(energy_nkm({0, 0, 0}, 1.5), 0.75, 1e-15);
  const double omega = std::sqrt(2.25 * 2.25 - 2.0);
  EXPECT_NEAR(energy_nkm({0, 0, 0}, 2.25), (omega + 1.0) / 2.0, 1e-15);
  EXPECT_NEAR(energy_nkm({3, 2, 1}, 1.7) - energy_nkm({3, 1, 1}, 1.7), 1.0, 1e-14);
  const auto params = TrapParameters::exact(Rational(3, 2), Rational(2, 3));
  EXPECT_EQ(energy_nkm_exact({0, 0, 0}, params), Rational(3, 4));
  // (N, K, M) = (2, 0, 2) is Nb = 2: (1/2)(2 Omega + Omega + 1 - 2 sigma).
  EXPECT_EQ(energy_nkm_exact({2, 0, 2}, params), Rational(1, 2) * (Rational(3, 2) + 1 - 3));
  for (const auto& q : states_up_to(6, 4)) {
    EXPECT_NEAR(energy_nkm(q, 1.5), to_double(energy_nkm_exact(q, params)), 1e-13);
  }
  EXPECT_THROW(energy_nkm_exact({0, 0, 0}, TrapParameters::exact(Rational(2), Rational(2))),
               UnsupportedError);
}

TEST(Energy, MatchesTrapModel) {
  for (const auto& params : {TrapParameters::exact(Rational(3, 2), Rational(2, 3)),
                             TrapParameters::exact(Rational(9, 4), Rational(2, 9))}) {
    const Rational wg = params.exact_frequencies().omega_g;
    for (const auto& q : states_up_to(6, 4)) {
      const auto b = quantum_number_map(q);
      for (int nf = 0; nf < 2; ++nf) {
        EXPECT_EQ(energy_nkm_exact(q, params) + wg * (Rational(nf) - Rational(1, 2)),
                  energy_exact({b.na, b.nb, b.nc, nf}, params));
      }
    }
  }
}

TEST(PdeResidual, EigenstatesSatisfyTheEquation) {
  const auto wp = WaveParams::from_sigma(1.5);
  const auto samples = sample_points(wp, 100);
  ASSERT_EQ(samples.size(), 100u);
  for (const auto& s : samples) {
    EXPECT_GT(s.rho, 0.0);
    EXPECT_LT(s.rho, 4.0 * wp.r0 / std::sqrt(wp.k));
    EXPECT_GT(s.z, -4.0);
    EXPECT_LT(s.z, 4.0);
  }
  EXPECT_LT(pde_residual({0, 0, 0}, wp, samples).max_relative, 1e-10);
  EXPECT_LT(pde_residual({2, 1, 0}, wp, samples).max_relative, 1e-8);
  for (const auto& q : states_up_to(4, 3)) {
    EXPECT_LT(pde_residual(q, wp, samples).max_relative, 1e-8) << q.n << " " << q.k << " " << q.m;
  }
  const auto other = WaveParams::from_sigma(2.7);
  EXPECT_LT(pde_residual({4, 2, -2}, other, sample_points(other, 100)).max_relative, 1e-8);
}

TEST(PdeResidual, DetectsWrongEnergy) {
  const auto wp = WaveParams::from_sigma(1.5);
  const auto samples = sample_points(wp, 100);
  const double delta = 1e-3;
  const CylindricalNumbers q{2, 1, 0};
  const double e = energy_nkm(q, wp.sigma);
  const auto shifted = pde_residual(q, wp, samples, delta);
  // The relative residual divides by the shifted energy.
  const double expected = delta / (std::abs(e) + delta);
  EXPECT_NEAR(shifted.max_relative, expected, 1e-5 * expected);
  double max_psi = 0.0;
  for (const auto& s : samples) max_psi = std::max(max_psi, std::abs(psi(q, wp, s.rho, 0.0, s.z)));
  EXPECT_NEAR(shifted.max_absolute, delta * max_psi, 1e-6 * delta * max_psi);
}
