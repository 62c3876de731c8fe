#include "penning/trap.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "penning/errors.hpp"

namespace penning {

namespace {

template <typename T>
Frequencies<T> derive(const T& sigma, const T& Omega, const T& g_abs) {
  Frequencies<T> f;
  f.omega_c = sigma;
  f.Omega = Omega;
  f.omega_plus = (sigma + Omega) / 2;
  f.omega_minus = (sigma - Omega) / 2;
  f.omega_z = T(1);
  f.omega_g = g_abs * sigma / 2;
  f.k = Omega / sigma;
  return f;
}

const OperatorPoly& na() {
  static const OperatorPoly p = parse_poly("ad a");
  return p;
}
const OperatorPoly& nb() {
  static const OperatorPoly p = parse_poly("bd b");
  return p;
}
const OperatorPoly& nc() {
  static const OperatorPoly p = parse_poly("cd c");
  return p;
}
const OperatorPoly& nf() {
  static const OperatorPoly p = parse_poly("fd f");
  return p;
}

Frequencies<Rational> rational_frequencies(const TrapParameters& params) {
  if (params.is_exact()) return params.exact_frequencies();
  const auto& f = params.frequencies();
  return {from_double(f.omega_c),    from_double(f.Omega),   from_double(f.omega_plus),
          from_double(f.omega_minus), from_double(f.omega_z), from_double(f.omega_g),
          from_double(f.k)};
}

template <typename T>
T energy_impl(const StateLabel& s, const Frequencies<T>& f) {
  const T half = T(1) / T(2);
  return f.omega_plus * (T(s.na) + half) - f.omega_minus * (T(s.nb) + half) +
         f.omega_z * (T(s.nc) + half) + f.omega_g * (T(s.nf) - half);
}

}  // namespace

TrapParameters TrapParameters::exact(const Rational& sigma, const Rational& g) {
  if (sgn(sigma) <= 0 || sigma * sigma <= 2) {
    throw DomainError("sigma must exceed sqrt(2), got " + sigma.get_str());
  }
  TrapParameters p;
  p.sigma_q_ = sigma;
  p.g_q_ = g;
  p.g_ = g.get_d();
  const Rational g_abs = abs(g);
  const Rational disc = sigma * sigma - 2;
  p.approx_ = derive<double>(sigma.get_d(), std::sqrt(disc.get_d()), g_abs.get_d());
  if (auto root = exact_sqrt(disc)) {
    p.exact_ = derive<Rational>(sigma, *root, g_abs);
    for (Rational* q : {&p.exact_->omega_plus, &p.exact_->omega_minus, &p.exact_->omega_g,
                        &p.exact_->k}) {
      q->canonicalize();
    }
    // Round the doubles from the exact values so both views agree.
    p.approx_ = {p.exact_->omega_c.get_d(), p.exact_->Omega.get_d(),
                 p.exact_->omega_plus.get_d(), p.exact_->omega_minus.get_d(), 1.0,
                 p.exact_->omega_g.get_d(), p.exact_->k.get_d()};
  }
  return p;
}

TrapParameters TrapParameters::approximate(double sigma, double g) {
  if (!(sigma > std::sqrt(2.0)) || !std::isfinite(sigma)) {
    throw DomainError("sigma must exceed sqrt(2), got " + std::to_string(sigma));
  }
  TrapParameters p;
  p.g_ = g;
  p.approx_ = derive<double>(sigma, std::sqrt(sigma * sigma - 2.0), std::abs(g));
  return p;
}

const Frequencies<Rational>& TrapParameters::exact_frequencies() const {
  if (!exact_) throw UnsupportedError("frequencies are not rational at these parameters");
  return *exact_;
}

double energy(const StateLabel& state, const TrapParameters& params) {
  return energy_impl<double>(state, params.frequencies());
}

Rational energy_exact(const StateLabel& state, const TrapParameters& params) {
  Rational e = energy_impl<Rational>(state, params.exact_frequencies());
  e.canonicalize();
  return e;
}

OperatorPoly hamiltonian_poly(const TrapParameters& params) {
  const auto f = rational_frequencies(params);
  const Rational half(1, 2);
  OperatorPoly h;
  h += f.omega_plus * (na() + OperatorPoly(half));
  h -= f.omega_minus * (nb() + OperatorPoly(half));
  h += f.omega_z * (nc() + OperatorPoly(half));
  h += f.omega_g * (nf() - OperatorPoly(half));
  return h;
}

ConservedSet constants_of_motion(const TrapParameters& params) {
  const auto f = rational_frequencies(params);
  const Rational half(1, 2);
  ConservedSet s;
  s.H_rho = Rational(f.Omega / 2) * (na() + nb() + OperatorPoly(Rational(1)));
  s.H_phi = Rational(f.omega_c / 2) * (na() - nb());
  s.H_z = f.omega_z * (nc() + OperatorPoly(half));
  s.H_f = f.omega_g * (nf() - OperatorPoly(half));
  s.L_z = nb() - na();
  return s;
}

BosonicState quantum_number_map(const CylindricalNumbers& q) {
  if (q.k < 0) throw InvalidQuantumNumbers("K must be non-negative");
  if (q.n < std::abs(q.m)) throw InvalidQuantumNumbers("N must be at least |M|");
  if ((q.n - q.m) % 2 != 0) throw InvalidQuantumNumbers("N - M must be even");
  return {(q.n - q.m) / 2, (q.n + q.m) / 2, q.k};
}

CylindricalNumbers inverse_quantum_number_map(const BosonicState& s) {
  if (s.na < 0 || s.nb < 0 || s.nc < 0) {
    throw InvalidQuantumNumbers("occupation numbers must be non-negative");
  }
  return {s.na + s.nb, s.nc, s.nb - s.na};
}

double sigma_from_physical(const PhysicalTrap& t) {
  if (!(t.charge * t.voltage > 0.0)) {
    throw DomainError("charge and trap voltage must have the same sign");
  }
  if (!(t.mass > 0.0) || !(t.size > 0.0)) throw DomainError("mass and trap size must be positive");
  return std::sqrt(t.charge / t.voltage * t.field * t.field * t.size * t.size / t.mass);
}

double large_sigma_energy(const StateLabel& s, double omega_c, double g) {
  return omega_c * ((s.na + 0.5 * g * s.nf) - 0.5 * ((g - 2.0) / 2.0));
}

}  // namespace penning
