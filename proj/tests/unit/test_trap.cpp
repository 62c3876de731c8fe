#include <gtest/gtest.h>

#include <cmath>

#include "penning/catalog.hpp"
#include "penning/errors.hpp"
#include "penning/fock.hpp"
#include "penning/trap.hpp"
#include "penning/wavefunction.hpp"

using namespace penning;

namespace {

OperatorPoly P(std::string_view text) { return parse_poly(text); }

TrapParameters exact(long sn, long sd, long gn, long gd) {
  return TrapParameters::exact(Rational(sn, sd), Rational(gn, gd));
}

}  // namespace

TEST(Frequencies, RationalPoints) {
  const auto f1 = exact(9, 4, 2, 9).exact_frequencies();
  EXPECT_EQ(f1.omega_plus, Rational(2));
  EXPECT_EQ(f1.omega_minus, Rational(1, 4));
  EXPECT_EQ(f1.omega_z, Rational(1));
  EXPECT_EQ(f1.omega_g, Rational(1, 4));

  const auto f2 = exact(3, 2, 4, 3).exact_frequencies();
  EXPECT_EQ(f2.omega_plus, Rational(1));
  EXPECT_EQ(f2.omega_minus, Rational(1, 2));
  EXPECT_EQ(f2.omega_g, Rational(1));
  EXPECT_EQ(f2.k, Rational(1, 3));

  const auto f3 = exact(11, 6, 18, 11).exact_frequencies();
  EXPECT_EQ(f3.omega_plus, Rational(3, 2));
  EXPECT_EQ(f3.omega_minus, Rational(1, 3));
  EXPECT_EQ(f3.omega_g, Rational(3, 2));
}

TEST(Frequencies, DomainAndExactness) {
  EXPECT_THROW(exact(7, 5, 2, 1), DomainError);  // 49/25 < 2
  EXPECT_THROW(TrapParameters::approximate(1.4, 2.0), DomainError);
  EXPECT_THROW(TrapParameters::approximate(std::sqrt(2.0), 2.0), DomainError);
  const auto p = exact(2, 1, 2, 1);  // Omega = sqrt(2)
  EXPECT_FALSE(p.is_exact());
  EXPECT_THROW(p.exact_frequencies(), UnsupportedError);
  EXPECT_NEAR(p.frequencies().Omega, std::sqrt(2.0), 1e-15);
}

TEST(Frequencies, Identities) {
  for (double sigma : {1.42, 1.5, 2.0, 3.7, 50.0}) {
    const auto f = TrapParameters::approximate(sigma, 2.0).frequencies();
    EXPECT_NEAR(f.omega_plus * f.omega_minus, 0.5, 1e-12);
    EXPECT_NEAR(f.omega_plus - f.omega_minus, f.Omega, 1e-12);
    EXPECT_NEAR(f.omega_plus + f.omega_minus, sigma, 1e-12);
    EXPECT_GT(f.k, 0.0);
    EXPECT_LE(f.k, 1.0);
  }
  const auto f = exact(9, 4, 2, 3).exact_frequencies();
  EXPECT_EQ(f.omega_plus * f.omega_minus, Rational(1, 2));
  EXPECT_EQ(f.omega_plus - f.omega_minus, f.Omega);
}

TEST(Energy, HandValues) {
  EXPECT_EQ(energy_exact({0, 0, 0, 0}, exact(3, 2, 4, 3)), Rational(1, 4));
  EXPECT_EQ(energy_exact({1, 0, 0, 0}, exact(3, 2, 2, 3)), Rational(3, 2));
  EXPECT_EQ(energy_exact({0, 0, 1, 0}, exact(3, 2, 2, 3)), Rational(3, 2));
  EXPECT_EQ(energy_exact({1, 0, 0, 0}, exact(9, 4, 2, 3)), Rational(3));
  EXPECT_EQ(energy_exact({0, 0, 2, 0}, exact(9, 4, 2, 3)), Rational(3));
  EXPECT_NEAR(energy({0, 0, 0, 0}, exact(3, 2, 4, 3)), 0.25, 1e-15);
}

TEST(Hamiltonian, PaperForms) {
  EXPECT_EQ(hamiltonian_poly(exact(3, 2, 2, 3)),
            P("ad a + cd c + 1") - Rational(1, 2) * P("bd b - fd f + 1"));
  const auto su21 = catalog(CaseId::su21);
  EXPECT_EQ(hamiltonian_poly(exact(3, 2, 4, 3)),
            su21["M"].op - Rational(1, 2) * su21["Mbar"].op);
  // 2 a†a - 1/4 b†b + c†c + 3/4 f†f + 1 at sigma = 9/4, g = 2/3
  EXPECT_EQ(hamiltonian_poly(exact(9, 4, 2, 3)),
            P("2 ad a - 1/4 bd b + cd c + 3/4 fd f + 1"));
}

TEST(Hamiltonian, DiagonalMatchesEnergy) {
  const FockBasis basis(5);
  for (const auto& params : {exact(3, 2, 4, 3), exact(9, 4, 2, 3)}) {
    const auto h = to_matrix(hamiltonian_poly(params), basis);
    EXPECT_LE(h.nonzeros(), basis.dimension());
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      EXPECT_NEAR(h.at(i, i), energy(basis.state(i), params), 1e-12);
    }
  }
}

TEST(ConstantsOfMotion, DecomposeHamiltonian) {
  for (const auto& g : {Rational(2, 3), Rational(4, 3), Rational(2)}) {
    const auto params = TrapParameters::exact(Rational(3, 2), g);
    const auto c = constants_of_motion(params);
    EXPECT_EQ(c.H_rho + c.H_phi + c.H_z + c.H_f, hamiltonian_poly(params));
    EXPECT_EQ(c.H_rho, Rational(1, 4) * P("ad a + bd b + 1"));
    EXPECT_EQ(c.H_phi, Rational(-3, 4) * c.L_z);
    const OperatorPoly h = hamiltonian_poly(params);
    const std::array<const OperatorPoly*, 5> all{&c.H_rho, &c.H_phi, &c.H_z, &c.H_f, &c.L_z};
    for (auto* x : all) {
      EXPECT_TRUE(supercommutator(h, *x).is_zero());
      for (auto* y : all) EXPECT_TRUE(supercommutator(*x, *y).is_zero());
    }
  }
}

TEST(QuantumNumbers, MapAndInverse) {
  EXPECT_EQ(quantum_number_map({2, 0, 0}), (BosonicState{1, 1, 0}));
  EXPECT_EQ(quantum_number_map({1, 3, 1}), (BosonicState{0, 1, 3}));
  EXPECT_THROW(quantum_number_map({1, 0, 0}), InvalidQuantumNumbers);
  EXPECT_THROW(quantum_number_map({1, 0, 3}), InvalidQuantumNumbers);
  EXPECT_THROW(quantum_number_map({2, -1, 0}), InvalidQuantumNumbers);
  for (int n = 0; n <= 6; ++n) {
    for (int m = -n; m <= n; m += 2) {
      const CylindricalNumbers q{n, 2, m};
      EXPECT_EQ(inverse_quantum_number_map(quantum_number_map(q)), q);
    }
  }
}

TEST(QuantumNumbers, SpectrumEquivalence) {
  for (const auto& params : {exact(3, 2, 4, 3), exact(9, 4, 2, 9), exact(11, 6, 18, 11)}) {
    for (int n = 0; n <= 6; ++n) {
      for (int m = -n; m <= n; m += 2) {
        for (int k = 0; k <= 6; ++k) {
          const CylindricalNumbers q{n, k, m};
          const auto b = quantum_number_map(q);
          for (int nf = 0; nf <= 1; ++nf) {
            const Rational spin = params.exact_frequencies().omega_g * (Rational(nf) - Rational(1, 2));
            EXPECT_EQ(energy_exact({b.na, b.nb, b.nc, nf}, params),
                      energy_nkm_exact(q, params) + spin);
          }
        }
      }
    }
  }
}

TEST(PhysicalSigma, PaperEstimates) {
  using namespace constants;
  const double electron = sigma_from_physical({elementary_charge, electron_mass, 6.0, 10.0, 0.003});
  EXPECT_GE(electron, 2e3);
  EXPECT_LE(electron, 4e3);
  const double proton = sigma_from_physical({elementary_charge, proton_mass, 5.0, 50.0, 0.001});
  EXPECT_GE(proton, 5.0);
  EXPECT_LE(proton, 12.0);
  const double doubled = sigma_from_physical({elementary_charge, proton_mass, 10.0, 50.0, 0.001});
  EXPECT_NEAR(doubled, 2.0 * proton, 1e-12 * proton);
  EXPECT_THROW(sigma_from_physical({elementary_charge, proton_mass, 5.0, -50.0, 0.001}),
               DomainError);
}

TEST(LargeSigma, Limit) {
  EXPECT_EQ(large_sigma_energy({0, 0, 0, 0}, 1.0, 2.0), 0.0);
  for (int na = 0; na < 4; ++na) {
    EXPECT_DOUBLE_EQ(large_sigma_energy({na, 0, 0, 1}, 3.0, 2.0),
                     large_sigma_energy({na + 1, 0, 0, 0}, 3.0, 2.0));
  }
  // With omega_c fixed, E = energy(...) * omega_z and omega_z = omega_c / sigma.
  const double sigma = 1e6;
  const double omega_c = 1.0;
  for (const StateLabel s : {StateLabel{0, 0, 0, 0}, StateLabel{2, 0, 0, 1}, StateLabel{1, 3, 2, 0}}) {
    const double g = 2.002;
    const double e = energy(s, TrapParameters::approximate(sigma, g)) * omega_c / sigma;
    const double limit = large_sigma_energy(s, omega_c, g);
    EXPECT_NEAR(e, limit, 1e-5 * std::max(1.0, std::abs(limit)));
  }
}
