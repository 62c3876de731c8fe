#include "random_poly.hpp"

namespace penning::testing {

namespace {

Monomial random_monomial(std::mt19937& rng, int max_degree, int parity) {
  std::uniform_int_distribution<int> coin(0, 1);
  Monomial m;
  if (parity == 1) {
    (coin(rng) ? m.fcreate : m.fannihilate) = 1;
  } else if (parity == 0) {
    if (coin(rng)) m.fcreate = m.fannihilate = 1;
  } else {
    m.fcreate = static_cast<std::uint8_t>(coin(rng));
    m.fannihilate = static_cast<std::uint8_t>(coin(rng));
  }
  std::uniform_int_distribution<int> slot(0, 5);
  int budget = max_degree - m.fcreate - m.fannihilate;
  std::uniform_int_distribution<int> extra(0, std::max(budget, 0));
  for (int k = extra(rng); k > 0; --k) {
    const int s = slot(rng);
    if (s % 2 == 0) {
      ++m.create[s / 2];
    } else {
      ++m.annihilate[s / 2];
    }
  }
  return m;
}

}  // namespace

OperatorPoly random_poly(std::mt19937& rng, int max_degree, int terms, int parity) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  OperatorPoly p;
  for (int t = 0; t < terms; ++t) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.add_term(random_monomial(rng, max_degree, parity), c);
  }
  return p;
}

}  // namespace penning::testing
