#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padet/padic.hpp"

using namespace padet;

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(Rational(12), 2), ExtInt(2));
  EXPECT_EQ(valuation(fraction(2, 9), 3), ExtInt(-2));
  EXPECT_TRUE(valuation(Rational(0), 5).is_infinite());
  EXPECT_EQ(valuation(fraction(-50, 3), 5), ExtInt(2));
}

TEST(Height, Examples) {
  EXPECT_EQ(height(fraction(6, 4)), 3);
  EXPECT_EQ(height(Rational(0)), 1);
  EXPECT_EQ(height(fraction(-5, 7)), 7);
}

TEST(Ultrametric, Examples) {
  EXPECT_TRUE(ultrametric_leq({ExtInt(3)}, {ExtInt(1)}));
  EXPECT_TRUE(ultrametric_leq({ExtInt::infinity()}, {ExtInt(7)}));
  EXPECT_TRUE(ultrametric_leq({ExtInt(0)}, {ExtInt(0)}));
  EXPECT_FALSE(ultrametric_leq({ExtInt(1)}, {ExtInt(3)}));
  EXPECT_FALSE(ultrametric_leq({ExtInt(7)}, {ExtInt::infinity()}));
}

TEST(ExtInt, Arithmetic) {
  auto inf = ExtInt::infinity();
  EXPECT_EQ(inf + ExtInt(3), inf);
  EXPECT_EQ(ExtInt(2) + ExtInt(3), ExtInt(5));
  EXPECT_EQ(0 * inf, ExtInt(0));
  EXPECT_EQ(3 * ExtInt(-2), ExtInt(-6));
  EXPECT_LT(ExtInt(1000000), inf);
  EXPECT_EQ(min(inf, ExtInt(4)), ExtInt(4));
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_THROW((void)inf.value(), std::logic_error);
}

TEST(Valuation, MatchesRepeatedDivision) {
  for (long p : {2L, 3L, 5L, 7L})
    for (auto [a, b] : oracle::fractions(40)) {
      auto expected = oracle::vp(a, b, p);
      auto got = valuation(fraction(a, b), static_cast<Prime>(p));
      if (!expected) EXPECT_TRUE(got.is_infinite());
      else EXPECT_EQ(got, ExtInt(*expected)) << a << "/" << b;
    }
}

// Exhaustive over heights <= 32 for p = 2, 3.
TEST(Valuation, UltrametricInequality) {
  for (Prime p : {2ul, 3ul}) {
    std::vector<Rational> xs;
    for (auto [a, b] : oracle::fractions(32)) xs.push_back(fraction(a, b));
    for (std::size_t i = 0; i < xs.size(); i += 7)
      for (std::size_t j = 0; j < xs.size(); j += 3) {
        auto vx = valuation(xs[i], p), vy = valuation(xs[j], p);
        auto vs = valuation(xs[i] + xs[j], p);
        ASSERT_GE(vs, min(vx, vy));
        if (vx != vy) {
          ASSERT_EQ(vs, min(vx, vy));
        }
        ASSERT_EQ(valuation(xs[i] * xs[j], p), vx + vy);
      }
  }
}

TEST(Height, Symmetry) {
  for (auto [a, b] : oracle::fractions(30)) {
    auto q = fraction(a, b);
    EXPECT_EQ(height(q), height(-q));
    if (a != 0) {
      EXPECT_EQ(height(q), height(1 / q));
    }
  }
}

TEST(Factorial, LegendreAgainstDirect) {
  for (Prime p : {2ul, 3ul, 5ul})
    for (unsigned long n = 0; n <= 30; ++n)
      EXPECT_EQ(ExtInt(factorial_valuation(n, p)), valuation(factorial(n), p)) << n;
  EXPECT_EQ(binomial(8, 2), 28);
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Residue, UnitAndModular) {
  EXPECT_EQ(unit_residue(Rational(12), 2, 3), 3);      // 12 = 4 * 3
  EXPECT_EQ(unit_residue(fraction(1, 3), 2, 3), 3);    // 3 * 3 = 9 = 1 mod 8
  EXPECT_EQ(residue_mod(fraction(-1, 5), 3, 2), 7);    // 5 * 7 = 35 = -1 mod 9
  EXPECT_THROW(residue_mod(fraction(1, 2), 2, 3), DomainError);
  EXPECT_EQ(ppow(2, -3), fraction(1, 8));
  EXPECT_EQ(ppow(3, 2), Rational(9));
}

TEST(Parse, CanonicalAndStrict) {
  EXPECT_EQ(parse_rational("6/4"), fraction(3, 2));
  EXPECT_EQ(parse_rational("-0/7"), Rational(0));
  EXPECT_EQ(parse_rational("+5/10"), fraction(1, 2));
  EXPECT_EQ(format_rational(parse_rational("10/2")), "5");
  EXPECT_EQ(format_rational(fraction(-3, 9)), "-1/3");
  for (const char* bad : {"", "1/0", "abc", "1.5", "1/", "/2", " 3", "5/-10"}) EXPECT_THROW(parse_rational(bad), std::exception) << bad;
}

TEST(Prime, Checks) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_THROW(require_prime(4), std::invalid_argument);
}
