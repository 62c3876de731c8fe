#include "penning/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "penning/errors.hpp"
#include "penning/parallel.hpp"

namespace penning {

namespace {

constexpr double kRootTolerance = 1e-12;
constexpr double kMergeDistance = 1e-9;
constexpr double kZero = 1e-12;
constexpr int kSnapDenominator = 1000;

int sign_of(double x) { return std::abs(x) <= kZero ? 0 : (x > 0 ? 1 : -1); }

/// E_i - E_j = (sigma A + Omega B) / 2 + C, so a pair is degenerate for all
/// sigma exactly when A, B and C vanish.
bool identically_degenerate(const StateLabel& s, const StateLabel& t, const ScanConfig& cfg) {
  const int dn = (s.na - s.nb) - (t.na - t.nb);
  const int df = s.nf - t.nf;
  const bool a_zero = cfg.g_exact ? sgn(Rational(dn) + abs(*cfg.g_exact) * df) == 0
                                  : std::abs(dn + std::abs(cfg.g) * df) <= 1e-15;
  return a_zero && (s.na + s.nb) == (t.na + t.nb) && s.nc == t.nc;
}

double level(const StateLabel& s, double sigma, double g) {
  return energy(s, TrapParameters::approximate(sigma, g));
}

double bisect(const StateLabel& s, const StateLabel& t, double g, double lo, double hi) {
  auto diff = [&](double x) { return level(s, x, g) - level(t, x, g); };
  double flo = diff(lo);
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double fm = diff(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool close(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

std::vector<StateLabel> enumerate_states(const StateCaps& caps) {
  std::vector<StateLabel> out;
  for (int a = 0; a < caps.na; ++a) {
    for (int b = 0; b < caps.nb; ++b) {
      for (int c = 0; c < caps.nc; ++c) {
        for (int f = 0; f < caps.nf; ++f) out.push_back({a, b, c, f});
      }
    }
  }
  return out;
}

void ScanConfig::validate() const {
  if (!(sigma_min > std::sqrt(2.0))) throw DomainError("sigma_min must exceed sqrt(2)");
  if (!(sigma_max > sigma_min) || !std::isfinite(sigma_max)) {
    throw DomainError("sigma range is empty");
  }
  if (steps == 0) throw DomainError("grid needs at least one step");
  if (caps.na < 1 || caps.nb < 1 || caps.nc < 1 || caps.nf < 1 || caps.nf > 2) {
    throw DomainError("state caps must be at least 1, with at most 2 fermion states");
  }
  if (max_denominator < 1) throw DomainError("max denominator must be positive");
  if (!(energy_tolerance >= 0.0)) throw DomainError("energy tolerance must be non-negative");
}

double ScanConfig::sigma_at(std::size_t i) const {
  if (i == steps) return sigma_max;
  return sigma_min + (sigma_max - sigma_min) * static_cast<double>(i) / static_cast<double>(steps);
}

ScanConfig figure2_config() {
  ScanConfig c;
  c.g = 2.0 / 3.0;
  c.g_exact = Rational(2, 3);
  c.caps = {3, 4, 2, 2};
  return c;
}

ScanConfig figure3_config() {
  ScanConfig c;
  c.g = 4.0 / 3.0;
  c.g_exact = Rational(4, 3);
  c.caps = {3, 3, 2, 2};
  return c;
}

LevelSeries scan_levels(const ScanConfig& config) {
  config.validate();
  LevelSeries out;
  out.states = enumerate_states(config.caps);
  out.sigma.resize(config.steps + 1);
  out.energy.resize(config.steps + 1);
  parallel_for(config.steps + 1, [&](std::size_t i) {
    const double sigma = config.sigma_at(i);
    const auto params = TrapParameters::approximate(sigma, config.g);
    out.sigma[i] = sigma;
    auto& row = out.energy[i];
    row.reserve(out.states.size());
    for (const auto& s : out.states) row.push_back(energy(s, params));
  });
  return out;
}

std::vector<Crossing> find_crossings(const ScanConfig& config) {
  const LevelSeries series = scan_levels(config);
  const auto& states = series.states;
  const std::size_t n = states.size();
  const std::size_t grid = series.sigma.size();

  std::vector<std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>>> found(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<int> signs(grid);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (identically_degenerate(states[i], states[j], config)) continue;
      for (std::size_t k = 0; k < grid; ++k) {
        signs[k] = sign_of(series.energy[k][i] - series.energy[k][j]);
      }
      std::vector<double> roots;
      for (std::size_t k = 0; k < grid; ++k) {
        if (signs[k] == 0) {
          const std::size_t lo = k == 0 ? k : k - 1;
          const std::size_t hi = k + 1 == grid ? k : k + 1;
          if (signs[lo] * signs[hi] < 0) {
            roots.push_back(bisect(states[i], states[j], config.g, series.sigma[lo],
                                   series.sigma[hi]));
          } else {
            roots.push_back(series.sigma[k]);
          }
        } else if (k + 1 < grid && signs[k] * signs[k + 1] < 0) {
          roots.push_back(
              bisect(states[i], states[j], config.g, series.sigma[k], series.sigma[k + 1]));
        }
      }
      std::sort(roots.begin(), roots.end());
      double last = -1.0;
      for (double r : roots) {
        if (r - last > kMergeDistance) found[i].push_back({r, {i, j}});
        last = r;
      }
    }
  });

  std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  std::sort(all.begin(), all.end());

  std::vector<Crossing> out;
  double previous = -1.0;
  double sum = 0.0;
  std::size_t members = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto flush = [&] {
    if (members == 0) return;
    Crossing c;
    c.sigma = sum / static_cast<double>(members);
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [a, b] : pairs) c.pairs.emplace_back(states[a], states[b]);
    out.push_back(std::move(c));
    sum = 0.0;
    members = 0;
    pairs.clear();
  };
  for (const auto& [sigma, pair] : all) {
    if (members > 0 && sigma - previous > kMergeDistance) flush();
    sum += sigma;
    ++members;
    pairs.push_back(pair);
    previous = sigma;
  }
  flush();
  return out;
}

Rational best_rational(double x, int max_den) {
  if (max_den < 1) throw DomainError("max denominator must be positive");
  const Rational q = from_double(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer num = q.get_num(), den = q.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const Integer q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Integer r = num - a * den;
    num = den;
    den = r;
    if (den == 0) break;
  }
  if (den == 0) return Rational(p1, q1);
  const Integer k = (Integer(max_den) - q0) / q1;
  const Rational lower(p0 + k * p1, q0 + k * q1);
  const Rational upper(p1, q1);
  Rational bl = lower, bu = upper;
  bl.canonicalize();
  bu.canonicalize();
  return abs(bu - q) <= abs(bl - q) ? bu : bl;
}

namespace {

std::optional<FrequencyRatio> ratio_from(const std::array<Rational, 4>& parts) {
  Integer lcm = 1;
  for (const auto& r : parts) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t());
  std::array<Integer, 4> ints;
  Integer g = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    ints[i] = parts[i].get_num() * (lcm / parts[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  FrequencyRatio out{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Integer v = ints[i] / g;
    if (!v.fits_slong_p()) return std::nullopt;
    out[i] = v.get_si();
  }
  return out;
}

}  // namespace

std::optional<FrequencyRatio> detect_rational_ratios(double sigma, double g, int max_den) {
  const auto f = TrapParameters::approximate(sigma, g).frequencies();
  const std::array<double, 4> w{f.omega_plus, f.omega_minus, f.omega_z, f.omega_g};
  std::array<Rational, 4> parts;
  for (std::size_t i = 0; i < 4; ++i) {
    parts[i] = best_rational(w[i] / f.omega_z, max_den);
    if (!close(parts[i].get_d(), w[i] / f.omega_z)) return std::nullopt;
  }
  return ratio_from(parts);
}

std::optional<FrequencyRatio> detect_rational_ratios(const TrapParameters& params, int max_den) {
  if (!params.is_exact()) return detect_rational_ratios(params.sigma(), params.g(), max_den);
  const auto& f = params.exact_frequencies();
  std::array<Rational, 4> parts{f.omega_plus / f.omega_z, f.omega_minus / f.omega_z, Rational(1),
                                f.omega_g / f.omega_z};
  for (auto& p : parts) {
    p.canonicalize();
    if (p.get_den() > max_den) return std::nullopt;
  }
  return ratio_from(parts);
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::none: return "none";
    case Classification::su11_plus: return "su11_plus";
    case Classification::su11_minus: return "su11_minus";
    case Classification::su11_axial: return "su11_axial";
    case Classification::so3_su11: return "so3_su11";
    case Classification::su21: return "su21";
  }
  return "?";
}

std::optional<CaseId> catalog_case(Classification c) {
  switch (c) {
    case Classification::su11_plus: return CaseId::su11_plus;
    case Classification::su11_minus: return CaseId::su11_minus;
    case Classification::so3_su11: return CaseId::so3_su11;
    case Classification::su21: return CaseId::su21;
    default: return std::nullopt;
  }
}

Classification classify_point(const TrapParameters& params) {
  bool plus_z, g_plus, g_minus, g_z;
  if (params.is_exact()) {
    const auto& f = params.exact_frequencies();
    plus_z = f.omega_plus == f.omega_z;
    g_plus = f.omega_g == f.omega_plus;
    g_minus = f.omega_g == f.omega_minus;
    g_z = f.omega_g == f.omega_z;
  } else {
    const auto& f = params.frequencies();
    plus_z = close(f.omega_plus, f.omega_z);
    g_plus = close(f.omega_g, f.omega_plus);
    g_minus = close(f.omega_g, f.omega_minus);
    g_z = close(f.omega_g, f.omega_z);
  }
  if (!g_plus && !g_minus && !g_z) return Classification::none;
  if (plus_z) return g_minus ? Classification::so3_su11 : Classification::su21;
  if (g_plus) return Classification::su11_plus;
  if (g_minus) return Classification::su11_minus;
  return Classification::su11_axial;
}

std::vector<DegenerateGroup> degenerate_groups(const TrapParameters& params,
                                               const std::vector<StateLabel>& states,
                                               double tolerance) {
  std::vector<std::size_t> order(states.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<DegenerateGroup> groups;

  if (params.is_exact()) {
    std::vector<Rational> e;
    e.reserve(states.size());
    for (const auto& s : states) e.push_back(energy_exact(s, params));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return e[x] < e[y]; });
    for (std::size_t i : order) {
      if (groups.empty() || *groups.back().exact_energy != e[i]) {
        groups.push_back({e[i].get_d(), e[i], {}});
      }
      groups.back().members.push_back(states[i]);
    }
    return groups;
  }

  std::vector<double> e;
  e.reserve(states.size());
  for (const auto& s : states) e.push_back(energy(s, params));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return e[x] < e[y]; });
  for (std::size_t i : order) {
    if (groups.empty() || e[i] - groups.back().energy > tolerance) {
      groups.push_back({e[i], std::nullopt, {}});
    }
    groups.back().members.push_back(states[i]);
  }
  return groups;
}

DegeneracyReport scan(const ScanConfig& config) {
  DegeneracyReport report;
  report.crossings = find_crossings(config);
  const auto states = enumerate_states(config.caps);

  for (const auto& c : report.crossings) {
    ScanPoint p;
    p.sigma = c.sigma;
    p.crossing_pairs = c.pairs.size();

    const Rational near = best_rational(c.sigma, kSnapDenominator);
    const bool snaps = std::abs(near.get_d() - c.sigma) <= kMergeDistance && near * near > 2;
    std::optional<TrapParameters> params;
    if (snaps) {
      p.sigma_exact = near;
      params = config.g_exact ? TrapParameters::exact(near, *config.g_exact)
                              : TrapParameters::approximate(near.get_d(), config.g);
    } else {
      params = TrapParameters::approximate(c.sigma, config.g);
    }
    p.ratio = detect_rational_ratios(*params, config.max_denominator);
    if (!p.ratio) continue;
    p.classification = classify_point(*params);

    if (params->is_exact()) {
      std::size_t count = 0;
      for (const auto& g : degenerate_groups(*params, states)) {
        const auto& m = g.members;
        for (std::size_t i = 0; i < m.size(); ++i) {
          for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (!identically_degenerate(m[i], m[j], config)) ++count;
          }
        }
      }
      p.exact_pairs = count;
    }
    report.points.push_back(std::move(p));
  }
  return report;
}

namespace {

std::array<double, 3> radial_frequencies(double sigma) {
  const double omega = std::sqrt(std::max(0.0, sigma * sigma - 2.0));
  return {(sigma + omega) / 2, (sigma - omega) / 2, 1.0};
}

}  // namespace

Figure1Data figure1_data(const std::vector<Rational>& g_values, double sigma_max,
                         std::size_t steps) {
  const double root2 = std::sqrt(2.0);
  if (!(sigma_max > root2)) throw DomainError("sigma_max must exceed sqrt(2)");
  if (steps == 0) throw DomainError("grid needs at least one step");
  Figure1Data d;
  d.g_values = g_values;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double sigma =
        i == steps ? sigma_max
                   : root2 + (sigma_max - root2) * static_cast<double>(i) / static_cast<double>(steps);
    d.sigma.push_back(sigma);
    d.omega.push_back(radial_frequencies(sigma));
    std::vector<double> wg;
    for (const auto& g : g_values) wg.push_back(std::abs(g.get_d()) * sigma / 2);
    d.omega_g.push_back(std::move(wg));
  }
  return d;
}

Figure1Checks figure1_checks(const Figure1Data& data) {
  Figure1Checks checks;

  const Rational four_thirds(4, 3);
  if (std::find(data.g_values.begin(), data.g_values.end(), four_thirds) != data.g_values.end()) {
    const auto params = TrapParameters::exact(Rational(3, 2), four_thirds);
    const auto& f = params.exact_frequencies();
    checks.triple_intersection = f.omega_plus == f.omega_z && f.omega_g == f.omega_z;
  }

  // Slope of the first grid interval as the grid refines towards sqrt(2).
  const double root2 = std::sqrt(2.0);
  const double first = data.sigma.empty() ? 1.0 : data.sigma.front() - root2;
  const auto at_root = radial_frequencies(root2);
  bool growing = true;
  double previous = 0.0;
  double initial = 0.0;
  for (int j = 0; j <= 4; ++j) {
    const double h = first / std::pow(10.0, j);
    const auto w = radial_frequencies(root2 + h);
    const double slope_plus = (w[0] - at_root[0]) / h;
    const double slope_minus = (w[1] - at_root[1]) / h;
    const double slope = std::min(slope_plus, -slope_minus);
    if (j == 0) initial = slope;
    if (j > 0 && !(slope > previous)) growing = false;
    previous = slope;
  }
  checks.slopes_diverge = growing && previous > 50.0 * initial;

  checks.axial_above_magnetron = !data.omega.empty();
  for (const auto& w : data.omega) {
    if (!(w[2] > w[1])) checks.axial_above_magnetron = false;
  }
  return checks;
}

}  // namespace penning
