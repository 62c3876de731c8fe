#include <gtest/gtest.h>

#include "penning/errors.hpp"
#include "penning/rational.hpp"

using namespace penning;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-2/9"), Rational(-2, 9));
}

TEST(Rational, RejectsDecimalsAndZeroDenominators) {
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("3/"), ParseError);
  EXPECT_FALSE(is_rational_literal("0.25"));
  EXPECT_TRUE(is_rational_literal("18/11"));
}

TEST(Rational, PrintsCanonically) {
  EXPECT_EQ(to_string(Rational(10, 4)), "5/2");
  EXPECT_EQ(to_string(Rational(-3)), "-3");
  EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, ExactSquareRoot) {
  EXPECT_EQ(exact_sqrt(Rational(49, 16)), Rational(7, 4));
  EXPECT_EQ(exact_sqrt(Rational(0)), Rational(0));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(exact_sqrt(Rational(1, 3)).has_value());
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(from_double(0.5), Rational(1, 2));
  EXPECT_EQ(from_double(-3.0), Rational(-3));
  const double x = 0.1;
  EXPECT_EQ(to_double(from_double(x)), x);
  EXPECT_NE(from_double(0.1), Rational(1, 10));
}
