#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "penning/catalog.hpp"
#include "penning/fock.hpp"
#include "penning/rational.hpp"
#include "penning/trap.hpp"

namespace penning {

/// Number of values taken by each occupation number: Na < na, ..., Nf < nf.
struct StateCaps {
  int na = 3;
  int nb = 4;
  int nc = 2;
  int nf = 2;
};

/// States in index order (Na, Nb, Nc, Nf) with Nf fastest.
std::vector<StateLabel> enumerate_states(const StateCaps& caps);

struct ScanConfig {
  double sigma_min = 1.45;
  double sigma_max = 3.0;
  std::size_t steps = 1500;  // grid intervals
  double g = 2.0 / 3.0;
  std::optional<Rational> g_exact;  // set when g was given as a rational
  StateCaps caps;
  double energy_tolerance = 1e-9;
  int max_denominator = 16;

  /// Throws DomainError for sigma_min <= sqrt(2), an empty range, zero steps,
  /// or caps outside [1, ...) (nf in {1, 2}).
  void validate() const;
  double sigma_at(std::size_t i) const;
};

ScanConfig figure2_config();
ScanConfig figure3_config();

struct LevelSeries {
  std::vector<double> sigma;
  std::vector<StateLabel> states;
  std::vector<std::vector<double>> energy;  // [grid point][state]
};

LevelSeries scan_levels(const ScanConfig& config);

struct Crossing {
  double sigma = 0.0;
  std::vector<std::pair<StateLabel, StateLabel>> pairs;
};

/// Roots of E_i - E_j over the range for every state pair, bracketed on the
/// grid and refined by bisection to 1e-12; roots within 1e-9 of each other
/// are merged into one crossing. Pairs degenerate over the whole range are
/// not crossings and are skipped.
std::vector<Crossing> find_crossings(const ScanConfig& config);

/// Best rational approximation with denominator at most `max_den`.
Rational best_rational(double x, int max_den);

/// (n+, n-, nz, ng) with gcd 1.
using FrequencyRatio = std::array<long, 4>;

/// Each frequency over omega_z is approximated by a fraction with
/// denominator <= max_den; accepted when every reconstructed ratio matches
/// to 1e-12.
std::optional<FrequencyRatio> detect_rational_ratios(double sigma, double g, int max_den);
/// Exact frequencies are used when available, with the same denominator bound.
std::optional<FrequencyRatio> detect_rational_ratios(const TrapParameters& params, int max_den);

enum class Classification { none, su11_plus, su11_minus, su11_axial, so3_su11, su21 };

std::string_view to_string(Classification c);
/// Catalog case for a classification, if the catalog carries one.
std::optional<CaseId> catalog_case(Classification c);

/// Which frequencies coincide, and which of them the spin frequency joins.
/// Exact parameters compare exactly; otherwise to a relative 1e-12.
Classification classify_point(const TrapParameters& params);

struct DegenerateGroup {
  double energy = 0.0;
  std::optional<Rational> exact_energy;
  std::vector<StateLabel> members;
};

/// Partition of `states` into groups of equal energy, ordered by energy.
/// Exact parameters group exactly; otherwise a new group starts once the
/// energy exceeds the group's lowest member by more than `tolerance`.
std::vector<DegenerateGroup> degenerate_groups(const TrapParameters& params,
                                               const std::vector<StateLabel>& states,
                                               double tolerance = 1e-9);

/// A crossing examined at the nearby rational sigma.
struct ScanPoint {
  double sigma = 0.0;
  std::optional<Rational> sigma_exact;
  std::optional<FrequencyRatio> ratio;
  Classification classification = Classification::none;
  std::size_t crossing_pairs = 0;
  /// Pairs of equal energy found by direct exact evaluation; equal to
  /// crossing_pairs when the located crossings are complete.
  std::optional<std::size_t> exact_pairs;
};

struct DegeneracyReport {
  std::vector<Crossing> crossings;
  std::vector<ScanPoint> points;  // crossings with a rational frequency ratio
};

DegeneracyReport scan(const ScanConfig& config);

struct Figure1Data {
  std::vector<Rational> g_values;
  std::vector<double> sigma;
  std::vector<std::array<double, 3>> omega;  // omega_plus, omega_minus, omega_z
  std::vector<std::vector<double>> omega_g;  // [grid point][g value]
};

/// Frequency curves on sigma in (sqrt(2), sigma_max], grid points equally
/// spaced from sqrt(2) + step.
Figure1Data figure1_data(const std::vector<Rational>& g_values, double sigma_max = 3.0,
                         std::size_t steps = 400);

struct Figure1Checks {
  bool triple_intersection = false;    // omega_plus = omega_z = omega_g at 3/2, g = 4/3
  bool slopes_diverge = false;         // finite-difference slopes grow without bound at sqrt(2)
  bool axial_above_magnetron = false;  // omega_z > omega_minus on every grid point
};

Figure1Checks figure1_checks(const Figure1Data& data);

}  // namespace penning
