#include <gtest/gtest.h>

#include <random>

#include "fermat3/arith.hpp"
#include "fermat3/contfrac.hpp"
#include "oracles.hpp"

using namespace fermat3;

TEST(Arith, GcdLcmAndBezout) {
  EXPECT_EQ(gcd(BigInt(12), BigInt(-18)), 6);
  EXPECT_EQ(lcm(BigInt(4), BigInt(6)), 12);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    BigInt a(static_cast<long>(rng() % 2001) - 1000), b(static_cast<long>(rng() % 2001) - 1000);
    auto e = extended_gcd(a, b);
    EXPECT_EQ(e.s * a + e.t * b, e.g);
    EXPECT_EQ(e.g, gcd(a, b));
  }
}

TEST(Arith, FloorDivisionAndMod) {
  EXPECT_EQ(floor_div(BigInt(-7), BigInt(2)), -4);
  EXPECT_EQ(floor_div(BigInt(7), BigInt(2)), 3);
  EXPECT_EQ(mod(BigInt(-7), BigInt(3)), 2);
}

TEST(Arith, Roots) {
  EXPECT_EQ(isqrt(BigInt(99)), 9);
  EXPECT_EQ(*exact_sqrt(BigInt(144)), 12);
  EXPECT_FALSE(exact_sqrt(BigInt(-4)));
  EXPECT_EQ(*exact_cube_root(BigInt(-27)), -3);
  EXPECT_FALSE(exact_cube_root(BigInt(26)));
  EXPECT_EQ(*rational_cube_root(make_rational(-8, 27)), make_rational(-2, 3));
  EXPECT_EQ(*exact_sqrt(make_rational(9, 4)), make_rational(3, 2));
  for (long n = -50; n <= 50; ++n) {
    BigInt c = BigInt(n) * n * n;
    EXPECT_EQ(*exact_cube_root(c), n);
  }
}

TEST(Arith, Valuations) {
  EXPECT_EQ(valuation(BigInt(54), BigInt(3)), 3);
  EXPECT_EQ(valuation(make_rational(2, 27), BigInt(3)), -3);
  EXPECT_EQ(valuation(BigInt(0), BigInt(3)), kInfiniteValuation);
}

TEST(Arith, PrimalityAgreesWithTrialDivision) {
  for (long n = -5; n < 3000; ++n) EXPECT_EQ(is_prime(BigInt(n)), oracle::naive_is_prime(n)) << n;
  EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST(Arith, FactorizationMultipliesBack) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    BigInt n(static_cast<long>(rng() % 10000000) + 1);
    if (i % 7 == 0) n *= BigInt("1000000007") * 998244353;
    BigInt prod = 1;
    for (const auto& [p, e] : factor_integer(n)) {
      EXPECT_TRUE(is_prime(p));
      prod *= pow(p, static_cast<unsigned long>(e));
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(Arith, SquareFreeAgreesWithTrialDivision) {
  for (long n = 1; n < 2000; ++n) EXPECT_EQ(is_squarefree(BigInt(n)), oracle::naive_squarefree(n)) << n;
}

TEST(Arith, RationalParsing) {
  EXPECT_EQ(parse_rational("-132651/2"), make_rational(-132651, 2));
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

TEST(ContinuedFraction, KnownExpansions) {
  auto e2 = cf_sqrt(BigInt(2));
  EXPECT_EQ(e2.preperiod, std::vector<BigInt>{1});
  EXPECT_EQ(e2.period, std::vector<BigInt>{2});
  auto e7 = cf_sqrt(BigInt(7));
  EXPECT_EQ(e7.period, (std::vector<BigInt>{1, 1, 1, 4}));
  auto e5 = cf_sqrt(BigInt(5));
  EXPECT_TRUE(e5.half_integral);
  EXPECT_EQ(e5.preperiod, std::vector<BigInt>{1});
  EXPECT_EQ(e5.period, std::vector<BigInt>{1});
  EXPECT_THROW(cf_sqrt(BigInt(12)), Error);
}

TEST(ContinuedFraction, PeriodEndConvergentSolvesPell) {
  for (long d : {2L, 3L, 6L, 7L, 11L, 14L, 19L, 22L, 23L, 31L, 46L, 94L}) {
    auto [p, q] = period_end_convergent(cf_sqrt(BigInt(d)));
    BigInt n = p * p - BigInt(d) * q * q;
    EXPECT_TRUE(n == 1 || n == -1) << d;
  }
}
