#include "ksproof/rational.hpp"

#include <gtest/gtest.h>

#include <limits>

using ksproof::Rational;

TEST(Rational, StoresLowestTermsWithPositiveDenominator)
{
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, 7), Rational(0));
}

TEST(Rational, Arithmetic)
{
    const Rational a(1, 3), b(1, 6);
    EXPECT_EQ(a + b, Rational(1, 2));
    EXPECT_EQ(a - b, Rational(1, 6));
    EXPECT_EQ(a * b, Rational(1, 18));
    EXPECT_EQ(a / b, Rational(2));
    EXPECT_EQ(-a, Rational(-1, 3));
    EXPECT_LT(b, a);
    EXPECT_THROW((void)(a / Rational(0)), std::domain_error);
}

TEST(Rational, StrAndParseRoundTrip)
{
    for (const auto & r : {Rational(5), Rational(-7, 3), Rational(0), Rational(12, 8)})
        EXPECT_EQ(Rational::parse(r.str()), r);
    EXPECT_EQ(Rational(3, 2).str(), "3/2");
    EXPECT_EQ(Rational(4).str(), "4");
    EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("2.5"), std::invalid_argument);
}

TEST(Rational, OverflowIsReported)
{
    const Rational big(std::numeric_limits<std::int64_t>::max());
    EXPECT_THROW((void)(big * Rational(2)), std::overflow_error);
    EXPECT_NO_THROW((void)(big * Rational(1, 2)));
}
