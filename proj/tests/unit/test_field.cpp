#include <gtest/gtest.h>

#include "leeyang/field.hpp"

using namespace leeyang;

TEST(Field, DoubleToRationalIsExact) {
  const Rational q = to_rational(0.1);
  EXPECT_NE(q, Rational(1, 10));
  EXPECT_EQ(to_double(q), 0.1);
  EXPECT_EQ(to_rational(0.5), Rational(1, 2));
  EXPECT_EQ(to_rational(-3.0), Rational(-3));
}

TEST(Field, RationalTextRoundTrip) {
  EXPECT_EQ(rational_from_string("3/4"), Rational(3, 4));
  EXPECT_EQ(rational_from_string("-6/8"), Rational(-3, 4));
  EXPECT_EQ(rational_from_string("7"), Rational(7));
  EXPECT_EQ(rational_from_string("0.5"), Rational(1, 2));
  EXPECT_EQ(rational_to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(rational_to_string(Rational(5)), "5");
}

TEST(Field, RationalTextRejectsGarbage) {
  EXPECT_THROW(rational_from_string("abc"), std::invalid_argument);
  EXPECT_THROW(rational_from_string("1/0"), std::invalid_argument);
  EXPECT_THROW(rational_from_string(""), std::invalid_argument);
}

TEST(Field, Backends) {
  EXPECT_EQ(parse_backend("float"), Backend::Float);
  EXPECT_EQ(parse_backend("rational"), Backend::Rational);
  EXPECT_THROW(parse_backend("quad"), std::invalid_argument);
  EXPECT_EQ(backend_name(Backend::Rational), "rational");
}

TEST(Field, NegligibleThreshold) {
  EXPECT_TRUE(is_negligible(1e-310));
  EXPECT_FALSE(is_negligible(1e-200));
  EXPECT_TRUE(is_negligible(Rational(0)));
  EXPECT_FALSE(is_negligible(Rational(1, 1000000)));
}
