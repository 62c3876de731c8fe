// penning: command-line front end for the penning core library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "penning/catalog.hpp"
#include "penning/errors.hpp"
#include "penning/fock.hpp"
#include "penning/scanner.hpp"
#include "penning/trap.hpp"
#include "penning/wavefunction.hpp"

using namespace penning;
using Json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- numbers ---------------------------------------------------------------

struct Number {
  std::string text;
  double value = 0.0;
  std::optional<Rational> exact;
};

Number parse_number(const std::string& text, const std::string& what) {
  Number n;
  n.text = text;
  if (is_rational_literal(text)) {
    n.exact = parse_rational(text);
    n.value = to_double(*n.exact);
    return n;
  }
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, n.value);
  if (ec != std::errc() || ptr != last || !std::isfinite(n.value)) {
    throw UsageError(what + ": not a number: '" + text + "'");
  }
  return n;
}

TrapParameters make_params(const Number& sigma, const Number& g) {
  if (sigma.exact && g.exact) return TrapParameters::exact(*sigma.exact, *g.exact);
  return TrapParameters::approximate(sigma.value, g.value);
}

std::string state_text(const StateLabel& s) {
  return fmt::format("|{},{},{},{}>", s.na, s.nb, s.nc, s.nf);
}

// ---- output ----------------------------------------------------------------

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  Json meta = Json::object();
  std::vector<Section> sections;
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return fmt::format("{}", v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string meta_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt::format("{}", v.get<double>());
  return v.dump();
}

void write_csv(std::ostream& os, const Report& r) {
  for (const auto& [key, value] : r.meta.items()) os << "# " << key << ": " << meta_text(value) << "\n";
  for (const auto& s : r.sections) {
    if (r.sections.size() > 1) os << "# section: " << s.name << "\n";
    for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? "," : "") << s.columns[i];
    os << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << "\n";
    }
  }
}

void write_json(std::ostream& os, const Report& r) {
  Json doc;
  doc["schema"] = 1;
  doc["meta"] = r.meta;
  for (const auto& s : r.sections) {
    Json rows = Json::array();
    for (const auto& row : s.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[s.columns[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    doc[s.name] = std::move(rows);
  }
  os << doc.dump(2) << "\n";
}

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void emit(const Report& r, const OutputOptions& out) {
  std::ostringstream buffer;
  if (out.format == "json") {
    write_json(buffer, r);
  } else {
    write_csv(buffer, r);
  }
  if (out.path.empty()) {
    std::cout << buffer.str();
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + out.path + "' for writing");
  file << buffer.str();
}

Json base_meta(const std::string& command) {
  Json m = Json::object();
  m["tool"] = "penning";
  m["version"] = PENNING_VERSION;
  m["command"] = command;
  return m;
}

void add_number_meta(Json& meta, const std::string& key, const Number& n) {
  meta[key] = n.exact ? to_string(*n.exact) : n.text;
  meta[key + "_exact"] = n.exact.has_value();
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
  std::string case_name;
  bool numeric = false;
  int cutoff = 8;
};

int cmd_verify(const VerifyOptions& opt, const OutputOptions& out) {
  std::vector<CaseId> cases;
  if (opt.case_name.empty()) {
    cases.assign(kAllCases.begin(), kAllCases.end());
  } else {
    cases.push_back(parse_case(opt.case_name));
  }
  if (opt.numeric && opt.cutoff < 3) throw UsageError("--cutoff must be at least 3");

  Report r;
  r.meta = base_meta("verify");
  r.meta["cases"] = opt.case_name.empty() ? "all" : opt.case_name;
  if (opt.numeric) r.meta["cutoff"] = opt.cutoff;

  Section s{"checks", {"case", "kind", "identity", "pass", "residual"}, {}};
  std::size_t failures = 0;
  auto add = [&](std::string_view id, const char* kind, const std::string& identity, bool pass,
                 const std::string& residual) {
    if (!pass) ++failures;
    s.rows.push_back({std::string(id), kind, identity, pass, residual});
  };
  auto add_report = [&](std::string_view id, const char* kind, const VerificationReport& rep) {
    for (const auto& c : rep.checks) add(id, kind, c.identity, c.pass(), to_string(c.residual));
  };

  for (CaseId id : cases) {
    const auto set = catalog(id);
    const auto name = to_string(id);
    r.meta["generators_" + std::string(name)] = set.size();

    add_report(name, "relation", verify_relations(set));
    add_report(name, "hamiltonian", hamiltonian_commutation(set));

    const std::string closure = fmt::format("{} generators ({} even, {} odd) closed with the unit",
                                            set.size(), set.even_names().size(),
                                            set.odd_names().size());
    try {
      structure_constants(set);
      add(name, "closure", closure, true, "0");
    } catch (const NotClosedError& e) {
      add(name, "closure", closure, false,
          "[" + e.lhs() + ", " + e.rhs() + "} leaves the span: " + to_string(e.residual()));
    } catch (const std::logic_error& e) {
      add(name, "closure", closure, false, e.what());
    }

    const auto jacobi = graded_jacobi_check(set);
    std::string bad;
    for (const auto& t : jacobi.failures) bad += (bad.empty() ? "" : "; ") + t[0] + " " + t[1] + " " + t[2];
    add(name, "jacobi", fmt::format("graded Jacobi over {} triples", jacobi.triples),
        jacobi.failures.empty(), bad.empty() ? "0" : bad);

    if (id == CaseId::so3_su11 || id == CaseId::su21) {
      add_report(name, "complete_set", complete_set_identities(id));
    }
    if (opt.numeric) {
      const auto numeric = numeric_cross_check(set, FockBasis(opt.cutoff));
      std::string failed;
      for (const auto& f : numeric.failures) failed += (failed.empty() ? "" : "; ") + f;
      add(name, "numeric",
          fmt::format("{} brackets on the interior of cutoff {}", numeric.brackets, opt.cutoff),
          numeric.failures.empty(), failed.empty() ? fmt::format("{}", numeric.max_residual) : failed);
    }
  }
  if (opt.case_name.empty()) {
    for (const auto& h : higher_order_checks()) {
      add("higher_order", "hamiltonian", "[H(sigma=9/4, g=2/3), " + h.generator + "] = 0", h.commutes,
          h.commutes ? "0" : "nonzero");
    }
  }
  r.meta["failures"] = failures;
  r.sections.push_back(std::move(s));
  emit(r, out);
  return failures == 0 ? 0 : 1;
}

// ---- spectrum --------------------------------------------------------------

struct SpectrumOptions {
  std::string sigma;
  std::string g;
  int max_na = 2;
  int max_nb = 3;
  int max_nc = 1;
};

int cmd_spectrum(const SpectrumOptions& opt, const OutputOptions& out) {
  const Number sigma = parse_number(opt.sigma, "--sigma");
  const Number g = parse_number(opt.g, "--g");
  if (opt.max_na < 0 || opt.max_nb < 0 || opt.max_nc < 0) {
    throw UsageError("occupation maxima must be non-negative");
  }
  const auto params = make_params(sigma, g);

  Report r;
  r.meta = base_meta("spectrum");
  add_number_meta(r.meta, "sigma", sigma);
  add_number_meta(r.meta, "g", g);
  r.meta["max_na"] = opt.max_na;
  r.meta["max_nb"] = opt.max_nb;
  r.meta["max_nc"] = opt.max_nc;
  r.meta["exact_energies"] = params.is_exact();

  Section s{"levels", {"Na", "Nb", "Nc", "Nf", "energy", "energy_exact"}, {}};
  for (const auto& st : enumerate_states({opt.max_na + 1, opt.max_nb + 1, opt.max_nc + 1, 2})) {
    Json exact = nullptr;
    if (params.is_exact()) exact = to_string(energy_exact(st, params));
    s.rows.push_back({st.na, st.nb, st.nc, st.nf, energy(st, params), exact});
  }
  r.sections.push_back(std::move(s));
  emit(r, out);
  return 0;
}

// ---- figure ----------------------------------------------------------------

struct FigureOptions {
  int number = 0;
  std::size_t steps = 0;
};

int cmd_figure(const FigureOptions& opt, const OutputOptions& out) {
  Report r;
  r.meta = base_meta("figure");
  r.meta["figure"] = opt.number;

  if (opt.number == 1) {
    const std::vector<Rational> gs{Rational(4, 3), Rational(2, 3)};
    const auto data = figure1_data(gs, 3.0, opt.steps ? opt.steps : 400);
    const auto checks = figure1_checks(data);
    r.meta["g_values"] = "4/3 2/3";
    r.meta["triple_intersection"] = checks.triple_intersection;
    r.meta["slopes_diverge"] = checks.slopes_diverge;
    r.meta["axial_above_magnetron"] = checks.axial_above_magnetron;
    Section s{"frequencies", {"sigma", "omega_plus", "omega_minus", "omega_z"}, {}};
    for (const auto& g : gs) s.columns.push_back("omega_g_" + to_string(g));
    for (std::size_t i = 0; i < data.sigma.size(); ++i) {
      std::vector<Json> row{data.sigma[i], data.omega[i][0], data.omega[i][1], data.omega[i][2]};
      for (double w : data.omega_g[i]) row.emplace_back(w);
      s.rows.push_back(std::move(row));
    }
    r.sections.push_back(std::move(s));
    emit(r, out);
    return 0;
  }
  if (opt.number != 2 && opt.number != 3) throw UsageError("figure must be 1, 2 or 3");

  ScanConfig config = opt.number == 2 ? figure2_config() : figure3_config();
  if (opt.steps) config.steps = opt.steps;
  const auto levels = scan_levels(config);
  const auto crossings = find_crossings(config);
  r.meta["g"] = opt.number == 2 ? "2/3" : "4/3";
  r.meta["sigma_min"] = config.sigma_min;
  r.meta["sigma_max"] = config.sigma_max;
  r.meta["steps"] = config.steps;
  r.meta["max_na"] = config.caps.na - 1;
  r.meta["max_nb"] = config.caps.nb - 1;
  r.meta["max_nc"] = config.caps.nc - 1;
  std::string where;
  for (const auto& c : crossings) where += (where.empty() ? "" : " ") + fmt::format("{:.9f}", c.sigma);
  r.meta["crossings"] = where;

  Section s{"levels", {"sigma", "Na", "Nb", "Nc", "Nf", "energy"}, {}};
  for (std::size_t i = 0; i < levels.sigma.size(); ++i) {
    for (std::size_t j = 0; j < levels.states.size(); ++j) {
      const auto& st = levels.states[j];
      s.rows.push_back({levels.sigma[i], st.na, st.nb, st.nc, st.nf, levels.energy[i][j]});
    }
  }
  r.sections.push_back(std::move(s));
  emit(r, out);
  return 0;
}

// ---- scan ------------------------------------------------------------------

struct ScanOptions {
  std::string g = "2/3";
  double sigma_min = 1.45;
  double sigma_max = 3.0;
  std::size_t steps = 1500;
  int maxden = 16;
  int max_na = 2;
  int max_nb = 3;
  int max_nc = 1;
  double tolerance = 1e-9;
};

std::string ratio_text(const std::optional<FrequencyRatio>& r) {
  if (!r) return "";
  return fmt::format("{}:{}:{}:{}", (*r)[0], (*r)[1], (*r)[2], (*r)[3]);
}

int cmd_scan(const ScanOptions& opt, const OutputOptions& out) {
  const Number g = parse_number(opt.g, "--g");
  ScanConfig config;
  config.g = g.value;
  config.g_exact = g.exact;
  config.sigma_min = opt.sigma_min;
  config.sigma_max = opt.sigma_max;
  config.steps = opt.steps;
  config.max_denominator = opt.maxden;
  config.caps = {opt.max_na + 1, opt.max_nb + 1, opt.max_nc + 1, 2};
  config.energy_tolerance = opt.tolerance;
  if (opt.maxden < 1) throw UsageError("--maxden must be positive");
  config.validate();

  const auto report = scan(config);

  Report r;
  r.meta = base_meta("scan");
  add_number_meta(r.meta, "g", g);
  r.meta["sigma_min"] = opt.sigma_min;
  r.meta["sigma_max"] = opt.sigma_max;
  r.meta["steps"] = opt.steps;
  r.meta["maxden"] = opt.maxden;
  r.meta["max_na"] = opt.max_na;
  r.meta["max_nb"] = opt.max_nb;
  r.meta["max_nc"] = opt.max_nc;
  r.meta["crossings"] = report.crossings.size();
  r.meta["points"] = report.points.size();

  Section points{"points",
                 {"sigma", "sigma_exact", "ratio", "classification", "crossing_pairs", "exact_pairs"},
                 {}};
  for (const auto& p : report.points) {
    points.rows.push_back({p.sigma, p.sigma_exact ? Json(to_string(*p.sigma_exact)) : Json(nullptr),
                           ratio_text(p.ratio), std::string(to_string(p.classification)),
                           p.crossing_pairs,
                           p.exact_pairs ? Json(*p.exact_pairs) : Json(nullptr)});
  }
  Section crossings{"crossings", {"sigma", "pairs", "states"}, {}};
  for (const auto& c : report.crossings) {
    std::string states;
    for (const auto& [a, b] : c.pairs) {
      states += (states.empty() ? "" : " ") + state_text(a) + "~" + state_text(b);
    }
    crossings.rows.push_back({c.sigma, c.pairs.size(), states});
  }
  r.sections.push_back(std::move(points));
  r.sections.push_back(std::move(crossings));
  emit(r, out);
  return 0;
}

// ---- wavefunction ----------------------------------------------------------

struct WaveOptions {
  int n = 0;
  int k = 0;
  int m = 0;
  std::string sigma = "3/2";
  std::vector<std::string> eval;
  bool profile = false;
  double rho_max = 0.0;
  std::size_t rho_steps = 200;
  std::vector<double> z_values{0.0};
  bool check = false;
};

std::vector<double> parse_triple(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_number(part, "--eval").value);
  if (v.size() != 3) throw UsageError("--eval expects rho,phi,z");
  if (v[0] < 0.0) throw UsageError("--eval needs rho >= 0");
  return v;
}

int cmd_wavefunction(const WaveOptions& opt, const OutputOptions& out) {
  const CylindricalNumbers q{opt.n, opt.k, opt.m};
  validate(q);
  const Number sigma = parse_number(opt.sigma, "--sigma");
  const auto wp = WaveParams::from_sigma(sigma.value);
  if (opt.eval.empty() && !opt.profile && !opt.check) {
    throw UsageError("wavefunction needs --eval, --profile or --check");
  }

  Report r;
  r.meta = base_meta("wavefunction");
  add_number_meta(r.meta, "sigma", sigma);
  r.meta["N"] = opt.n;
  r.meta["K"] = opt.k;
  r.meta["M"] = opt.m;
  r.meta["k"] = wp.k;
  r.meta["r0"] = wp.r0;
  r.meta["energy"] = energy_nkm(q, sigma.value);

  int status = 0;
  if (!opt.eval.empty()) {
    Section s{"values", {"rho", "phi", "z", "real", "imag"}, {}};
    for (const auto& e : opt.eval) {
      const auto p = parse_triple(e);
      const auto v = psi(q, wp, p[0], p[1], p[2]);
      s.rows.push_back({p[0], p[1], p[2], v.real(), v.imag()});
    }
    r.sections.push_back(std::move(s));
  }
  if (opt.profile) {
    const double rho_max = opt.rho_max > 0.0 ? opt.rho_max : 4.0 * wp.r0 / std::sqrt(wp.k);
    if (opt.rho_steps == 0) throw UsageError("--rho-steps must be positive");
    Section s{"profile", {"rho", "z", "real", "imag"}, {}};
    for (const auto& p : profile(q, wp, rho_max, opt.rho_steps, opt.z_values)) {
      s.rows.push_back({p.rho, p.z, p.value.real(), p.value.imag()});
    }
    r.sections.push_back(std::move(s));
  }
  if (opt.check) {
    const auto res = pde_residual(q, wp, sample_points(wp, 100));
    const bool pass = res.max_relative < 1e-8;
    if (!pass) status = 1;
    r.sections.push_back(
        {"check", {"samples", "max_relative", "max_absolute", "pass"},
         {{100, res.max_relative, res.max_absolute, pass}}});
  }
  emit(r, out);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penning-trap degeneracy superalgebras: verification, spectra and scans"};
  app.set_version_flag("--version", PENNING_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions out;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out.path, "Write output to this file instead of standard output");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check relation tables, closure, Jacobi and identities");
  v->add_option("--case", verify.case_name, "Catalog case (default: all)");
  v->add_flag("--numeric-cross-check", verify.numeric, "Compare with truncated Fock matrices");
  v->add_option("--cutoff", verify.cutoff, "Per-mode cutoff for the numeric check")
      ->capture_default_str();

  SpectrumOptions spectrum;
  auto* sp = app.add_subcommand("spectrum", "Energy levels at one (sigma, g)");
  sp->add_option("--sigma", spectrum.sigma, "omega_c / omega_z, as p/q or decimal")->required();
  sp->add_option("--g", spectrum.g, "Lande g factor, as p/q or decimal")->required();
  sp->add_option("--max-na", spectrum.max_na)->capture_default_str();
  sp->add_option("--max-nb", spectrum.max_nb)->capture_default_str();
  sp->add_option("--max-nc", spectrum.max_nc)->capture_default_str();

  FigureOptions figure;
  auto* fg = app.add_subcommand("figure", "Data for figures 1, 2 and 3");
  fg->add_option("number", figure.number, "Figure number")->required();
  fg->add_option("--steps", figure.steps, "Grid intervals (default: the figure's own)");

  ScanOptions scan_opt;
  auto* sc = app.add_subcommand("scan", "Level crossings and rational-ratio points over sigma");
  sc->add_option("--g", scan_opt.g)->capture_default_str();
  sc->add_option("--sigma-min", scan_opt.sigma_min)->capture_default_str();
  sc->add_option("--sigma-max", scan_opt.sigma_max)->capture_default_str();
  sc->add_option("--steps", scan_opt.steps)->capture_default_str();
  sc->add_option("--maxden", scan_opt.maxden)->capture_default_str();
  sc->add_option("--max-na", scan_opt.max_na)->capture_default_str();
  sc->add_option("--max-nb", scan_opt.max_nb)->capture_default_str();
  sc->add_option("--max-nc", scan_opt.max_nc)->capture_default_str();
  sc->add_option("--tolerance", scan_opt.tolerance)->capture_default_str();

  WaveOptions wave;
  auto* wf = app.add_subcommand("wavefunction", "Evaluate the coordinate-space eigenfunctions");
  wf->add_option("--N", wave.n)->required();
  wf->add_option("--K", wave.k)->required();
  wf->add_option("--M", wave.m)->required();
  wf->add_option("--sigma", wave.sigma)->capture_default_str();
  wf->add_option("--eval", wave.eval, "rho,phi,z (repeatable)");
  wf->add_flag("--profile", wave.profile, "Dump psi on a rho grid at the given z values");
  wf->add_option("--rho-max", wave.rho_max, "Profile range (default 4 r0 / sqrt(k))");
  wf->add_option("--rho-steps", wave.rho_steps)->capture_default_str();
  wf->add_option("--z", wave.z_values, "Profile z values")->delimiter(',');
  wf->add_flag("--check", wave.check, "Differential-equation residual at 100 sample points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*v) return cmd_verify(verify, out);
    if (*sp) return cmd_spectrum(spectrum, out);
    if (*fg) return cmd_figure(figure, out);
    if (*sc) return cmd_scan(scan_opt, out);
    if (*wf) return cmd_wavefunction(wave, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidQuantumNumbers& e) {
    std::cerr << "invalid quantum numbers: " << e.what() << "\n";
    return 2;
  } catch (const UnknownNameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
