#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>

#include "penning/errors.hpp"
#include "penning/fock.hpp"
#include "penning/operator_poly.hpp"
#include "random_poly.hpp"

using namespace penning;
using penning::testing::random_poly;

namespace {

OperatorPoly P(std::string_view text) { return parse_poly(text); }

}  // namespace

TEST(Multiply, BosonReordering) {
  EXPECT_EQ(multiply(P("a"), P("ad")), P("ad a + 1"));
  EXPECT_EQ(multiply(P("ad a"), P("ad a")), P("ad^2 a^2 + ad a"));
  EXPECT_EQ(multiply(P("a^2"), P("ad^2")), P("ad^2 a^2 + 4 ad a + 2"));
}

TEST(Multiply, FermionRules) {
  EXPECT_TRUE(multiply(P("f"), P("f")).is_zero());
  EXPECT_TRUE(multiply(P("fd"), P("fd")).is_zero());
  EXPECT_EQ(multiply(P("f"), P("fd")), P("1 - fd f"));
  EXPECT_EQ(multiply(P("fd f"), P("fd f")), P("fd f"));
}

TEST(Multiply, ModesCommute) {
  EXPECT_EQ(multiply(P("b"), P("ad")), multiply(P("ad"), P("b")));
  EXPECT_EQ(multiply(P("f"), P("cd")), P("cd f"));
  EXPECT_EQ(multiply(P("b f"), P("bd fd")), P("bd b - bd b fd f - fd f + 1"));
}

TEST(Multiply, HighDegreeTerminates) {
  const OperatorPoly x = P("a b^8");
  const OperatorPoly y = P("ad bd^8");
  const OperatorPoly xy = multiply(x, y);
  EXPECT_EQ(xy.degree(), 18);
  EXPECT_EQ(xy.coefficient(Monomial::unit()), Rational(40320));  // 1! * 8!
}

TEST(Supercommutator, PaperExamples) {
  EXPECT_EQ(supercommutator(P("fd"), P("f")), P("1"));
  EXPECT_EQ(supercommutator(P("bd fd"), P("b f")), P("bd b - fd f + 1"));
  EXPECT_EQ(supercommutator(P("ad a"), P("ad")), P("ad"));
  EXPECT_EQ(supercommutator(P("a"), P("ad")), P("1"));
}

TEST(Supercommutator, MatchesBruteForce) {
  const OperatorPoly x = P("ad a");
  const OperatorPoly y = P("ad");
  EXPECT_EQ(supercommutator(x, y), multiply(x, y) - multiply(y, x));
  const OperatorPoly u = P("ad f");
  const OperatorPoly v = P("a fd");
  EXPECT_EQ(supercommutator(u, v), multiply(u, v) + multiply(v, u));
}

TEST(Supercommutator, RejectsMixedGrade) {
  EXPECT_THROW(supercommutator(P("ad + fd"), P("a")), GradingError);
  EXPECT_THROW(supercommutator(P("a"), P("f + 1")), GradingError);
}

TEST(Linear, AddScaleEquals) {
  const OperatorPoly p = P("3/2 ad a - bd^2 f + 1/2");
  EXPECT_TRUE(add(p, scale(Rational(-1), p)).is_zero());
  EXPECT_TRUE(equals(P("ad a + 1"), multiply(P("a"), P("ad"))));
  EXPECT_EQ(scale(Rational(2), P("fd f")), P("2 fd f"));
  EXPECT_TRUE(scale(Rational(0), p).is_zero());
}

TEST(Grade, Classification) {
  EXPECT_EQ(grade(P("ad c")), Grade::even);
  EXPECT_EQ(grade(P("bd fd")), Grade::odd);
  EXPECT_EQ(grade(P("ad + fd")), Grade::mixed);
  EXPECT_EQ(grade(OperatorPoly{}), Grade::even);
}

TEST(Automorphism, SpinFlipAndExchange) {
  EXPECT_EQ(apply_automorphism(P("fd f"), Automorphism::spin_flip), P("1 - fd f"));
  EXPECT_EQ(apply_automorphism(P("ad f"), Automorphism::ab_exchange), P("bd fd"));
  EXPECT_EQ(apply_automorphism(P("ad a + fd f"), Automorphism::ab_exchange),
            P("bd b - fd f + 1"));
  EXPECT_THROW(parse_automorphism("parity"), UnknownNameError);
  EXPECT_EQ(parse_automorphism("spin_flip"), Automorphism::spin_flip);
}

TEST(Automorphism, ExchangeIsAnInvolution) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    const OperatorPoly p = random_poly(rng, 4, 4);
    const auto once = apply_automorphism(p, Automorphism::ab_exchange);
    EXPECT_EQ(apply_automorphism(once, Automorphism::ab_exchange), p);
    const auto flip = apply_automorphism(p, Automorphism::spin_flip);
    EXPECT_EQ(apply_automorphism(flip, Automorphism::spin_flip), p);
  }
}

TEST(Automorphism, PreservesProducts) {
  std::mt19937 rng(12);
  for (int i = 0; i < 40; ++i) {
    const OperatorPoly p = random_poly(rng, 3, 3);
    const OperatorPoly q = random_poly(rng, 3, 3);
    for (auto map : {Automorphism::ab_exchange, Automorphism::spin_flip}) {
      EXPECT_EQ(apply_automorphism(multiply(p, q), map),
                multiply(apply_automorphism(p, map), apply_automorphism(q, map)));
    }
  }
}

TEST(Text, RoundTrip) {
  EXPECT_EQ(to_string(OperatorPoly{}), "0");
  EXPECT_EQ(to_string(P("a ad")), "1 ad a + 1");
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const OperatorPoly p = random_poly(rng, 5, 5);
    EXPECT_EQ(parse_poly(to_string(p)), p) << to_string(p);
  }
}

TEST(Text, ParseErrors) {
  EXPECT_THROW(parse_poly("a + q"), ParseError);
  EXPECT_THROW(parse_poly("ad^"), ParseError);
  EXPECT_THROW(parse_poly("+"), ParseError);
}

TEST(Dagger, ReversesAndConjugates) {
  EXPECT_EQ(P("ad f").dagger(), P("a fd"));
  EXPECT_EQ(P("bd^2 c + 3").dagger(), P("cd b^2 + 3"));
  std::mt19937 rng(8);
  for (int i = 0; i < 30; ++i) {
    const OperatorPoly p = random_poly(rng, 3, 3);
    const OperatorPoly q = random_poly(rng, 3, 3);
    EXPECT_EQ(multiply(p, q).dagger(), multiply(q.dagger(), p.dagger()));
  }
}

TEST(Properties, AssociativeAndDistributive) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    const OperatorPoly p = random_poly(rng, 4, 3);
    const OperatorPoly q = random_poly(rng, 4, 3);
    const OperatorPoly r = random_poly(rng, 4, 3);
    EXPECT_EQ(multiply(multiply(p, q), r), multiply(p, multiply(q, r)));
    EXPECT_EQ(multiply(p, q + r), multiply(p, q) + multiply(p, r));
    EXPECT_EQ(multiply(p + q, r), multiply(p, r) + multiply(q, r));
  }
}

TEST(Properties, GradedAntisymmetry) {
  std::mt19937 rng(7);
  for (int i = 0; i < 80; ++i) {
    const int px = i % 2;
    const int py = (i / 2) % 2;
    const OperatorPoly x = random_poly(rng, 4, 3, px);
    const OperatorPoly y = random_poly(rng, 4, 3, py);
    const Rational s = (px == 1 && py == 1) ? Rational(1) : Rational(-1);
    EXPECT_EQ(supercommutator(x, y), s * supercommutator(y, x));
  }
}

TEST(Properties, GradedJacobi) {
  std::mt19937 rng(99);
  auto sign = [](int e) { return Rational(e % 2 == 0 ? 1 : -1); };
  for (int i = 0; i < 64; ++i) {
    const int px = i % 2, py = (i / 2) % 2, pz = (i / 4) % 2;
    const OperatorPoly x = random_poly(rng, 2, 2, px);
    const OperatorPoly y = random_poly(rng, 2, 2, py);
    const OperatorPoly z = random_poly(rng, 2, 2, pz);
    const OperatorPoly total =
        sign(px * pz) * supercommutator(x, supercommutator(y, z)) +
        sign(py * px) * supercommutator(y, supercommutator(z, x)) +
        sign(pz * py) * supercommutator(z, supercommutator(x, y));
    EXPECT_TRUE(total.is_zero()) << to_string(total);
  }
}

TEST(Properties, ProductMatchesMatrixOracle) {
  std::mt19937 rng(31337);
  const FockBasis basis(8);
  int checked = 0;
  while (checked < 25) {
    const OperatorPoly p = random_poly(rng, 4, 3);
    const OperatorPoly q = random_poly(rng, 4, 3);
    const std::array<const OperatorPoly*, 2> factors{&p, &q};
    const Margin margin = product_margin(factors);
    if (*std::max_element(margin.begin(), margin.end()) > 5) continue;
    const SparseOperator proj = interior_projector(basis, margin);
    const SparseOperator lhs = proj * to_matrix(multiply(p, q), basis) * proj;
    const SparseOperator rhs = proj * (to_matrix(p, basis) * to_matrix(q, basis)) * proj;
    // Entries grow like sqrt(cutoff)^degree; compare relative to the largest.
    const double scale = std::max(1.0, lhs.max_abs());
    EXPECT_LT((lhs - rhs).max_abs(), 1e-12 * scale) << to_string(p) << " * " << to_string(q);
    ++checked;
  }
}
