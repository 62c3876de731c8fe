#pragma once

#include <optional>

#include "penning/fock.hpp"
#include "penning/operator_poly.hpp"
#include "penning/rational.hpp"

namespace penning {

/// Characteristic frequencies in units of the axial frequency.
template <typename T>
struct Frequencies {
  T omega_c;      // cyclotron, equal to sigma
  T Omega;        // sqrt(sigma^2 - 2)
  T omega_plus;   // modified cyclotron
  T omega_minus;  // magnetron
  T omega_z;      // axial, 1
  T omega_g;      // spin, |g| sigma / 2
  T k;            // Omega / omega_c
};

/// (sigma, g) with the derived frequencies. Construction from rationals keeps
/// everything exact whenever sigma^2 - 2 is a rational square; otherwise, and
/// for decimal inputs, only the double-precision frequencies exist.
class TrapParameters {
 public:
  /// Throws DomainError unless sigma > sqrt(2).
  static TrapParameters exact(const Rational& sigma, const Rational& g);
  static TrapParameters approximate(double sigma, double g);

  double sigma() const { return approx_.omega_c; }
  double g() const { return g_; }
  const std::optional<Rational>& sigma_rational() const { return sigma_q_; }
  const std::optional<Rational>& g_rational() const { return g_q_; }

  /// True when the frequencies are known exactly.
  bool is_exact() const { return exact_.has_value(); }
  const Frequencies<double>& frequencies() const { return approx_; }
  /// Throws UnsupportedError when the frequencies are not rational.
  const Frequencies<Rational>& exact_frequencies() const;

 private:
  TrapParameters() = default;

  double g_ = 0.0;
  std::optional<Rational> sigma_q_;
  std::optional<Rational> g_q_;
  Frequencies<double> approx_{};
  std::optional<Frequencies<Rational>> exact_;
};

/// Energy eigenvalue of a number state in units of hbar*omega_z:
///   w+(Na+1/2) - w-(Nb+1/2) + wz(Nc+1/2) + wg(Nf-1/2).
double energy(const StateLabel& state, const TrapParameters& params);
/// Exact version; throws UnsupportedError for inexact parameters.
Rational energy_exact(const StateLabel& state, const TrapParameters& params);

/// The full hamiltonian as an operator polynomial (units of hbar*omega_z).
/// Inexact parameters enter through the exact rational value of each double.
OperatorPoly hamiltonian_poly(const TrapParameters& params);

/// Constants of the motion in units of hbar*omega_z, with the angular
/// momentum Lz in units of hbar.
struct ConservedSet {
  OperatorPoly H_rho;  // (Omega/2)(a†a + b†b + 1)
  OperatorPoly H_phi;  // (omega_c/2)(a†a - b†b)
  OperatorPoly H_z;    // c†c + 1/2
  OperatorPoly H_f;    // omega_g (f†f - 1/2)
  OperatorPoly L_z;    // b†b - a†a
};

ConservedSet constants_of_motion(const TrapParameters& params);

/// Bosonic occupation numbers from the cylindrical quantum numbers.
struct BosonicState {
  int na = 0;
  int nb = 0;
  int nc = 0;
  friend bool operator==(const BosonicState&, const BosonicState&) = default;
};

struct CylindricalNumbers {
  int n = 0;  // principal radial number N
  int k = 0;  // axial number K̂
  int m = 0;  // angular number M̂
  friend bool operator==(const CylindricalNumbers&, const CylindricalNumbers&) = default;
};

/// Na = (N - M)/2, Nb = (N + M)/2, Nc = K. Throws InvalidQuantumNumbers
/// when N < |M|, N - M is odd, or K < 0.
BosonicState quantum_number_map(const CylindricalNumbers& q);
CylindricalNumbers inverse_quantum_number_map(const BosonicState& s);

/// Laboratory description of a trap, SI units.
struct PhysicalTrap {
  double charge;    // C
  double mass;      // kg
  double field;     // T
  double voltage;   // V
  double size;      // m, the electrode parameter d
};

namespace constants {
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double electron_mass = 9.1093837015e-31;
inline constexpr double proton_mass = 1.67262192369e-27;
}  // namespace constants

/// sigma = sqrt(q B^2 d^2 / (m V)). Throws DomainError unless qV > 0 and the
/// mass and size are positive.
double sigma_from_physical(const PhysicalTrap& trap);

/// Strong-field limit of the energy in units of hbar:
///   omega_c [(Na + g Nf / 2) - (g - 2) / 4].
double large_sigma_energy(const StateLabel& state, double omega_c, double g);

}  // namespace penning
