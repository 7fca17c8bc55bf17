#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fermat3/field.hpp"
#include "fermat3/units.hpp"
#include "oracles.hpp"

using namespace fermat3;

namespace {

AlgebraicNumber random_element(const Field& K, std::mt19937_64& rng, long h = 30, bool integral = true) {
  auto r = [&] { return static_cast<long>(rng() % (2 * h + 1)) - h; };
  BigRational x(r()), y(K.is_rational() ? 0 : r());
  if (!integral) {
    x /= static_cast<long>(rng() % 5) + 1;
    y /= static_cast<long>(rng() % 5) + 1;
  }
  return AlgebraicNumber(K, x, y);
}

double approx(const AlgebraicNumber& z) {
  const Field& K = z.field();
  double w = K.is_rational() ? 0.0 : (K.half_integral_basis() ? (1 + std::sqrt(double(K.d()))) / 2 : std::sqrt(double(K.d())));
  return z.x().get_d() + z.y().get_d() * w;
}

const std::vector<long> kFields = {-15, -6, -3, -1, 2, 3, 5, 13, 29};

}  // namespace

TEST(Field, ParseSpecs) {
  EXPECT_TRUE(Field::parse("Q").is_rational());
  EXPECT_EQ(Field::parse("Q(sqrt 2)").d(), 2);
  EXPECT_EQ(Field::parse("Q(sqrt(-15))").d(), -15);
  EXPECT_EQ(Field::parse("Q(sqrt 5)").spec(), "Q(sqrt 5)");
  EXPECT_THROW(Field::parse("Q(sqrt 8)"), Error);
  EXPECT_THROW(Field::parse("Q(sqrt 1)"), Error);
  EXPECT_THROW(Field::parse("R"), Error);
  EXPECT_THROW(Field::parse("Q(sqrt x)"), Error);
}

TEST(Field, BasisData) {
  Field K5 = Field::quadratic(5), K2 = Field::quadratic(2);
  EXPECT_TRUE(K5.half_integral_basis());
  EXPECT_EQ(K5.discriminant(), 5);
  EXPECT_EQ(K2.discriminant(), 8);
  EXPECT_EQ(Field::quadratic(-15).discriminant(), -15);
  EXPECT_EQ(Field::quadratic(-6).discriminant(), -24);
  // w^2 = t w - N for w = (1 + sqrt 5)/2.
  AlgebraicNumber w = AlgebraicNumber::omega(K5);
  EXPECT_EQ(w * w, w + AlgebraicNumber(K5, 1));
}

TEST(Field, ElementTextRoundTrips) {
  std::mt19937_64 rng(1);
  for (long d : kFields) {
    Field K = Field::quadratic(d);
    for (int i = 0; i < 50; ++i) {
      AlgebraicNumber z = random_element(K, rng, 30, i % 2 == 0);
      EXPECT_EQ(AlgebraicNumber::parse(K, z.to_string()), z) << z.to_string();
    }
  }
  Field K = Field::quadratic(2);
  EXPECT_EQ(AlgebraicNumber::parse(K, "2*w + 1"), AlgebraicNumber(K, 1, 2));
  EXPECT_EQ(AlgebraicNumber(K, 0, -1).to_string(), "-w");
  EXPECT_EQ(AlgebraicNumber(K, make_rational(1, 2), -1).to_string(), "1/2 - w");
  EXPECT_THROW(AlgebraicNumber::parse(K, "1 + + w"), Error);
  EXPECT_THROW(AlgebraicNumber::parse(Field::rational(), "w"), Error);
}

TEST(Field, RingAxiomsAndNorm) {
  std::mt19937_64 rng(2);
  for (long d : kFields) {
    Field K = Field::quadratic(d);
    for (int i = 0; i < 40; ++i) {
      AlgebraicNumber a = random_element(K, rng), b = random_element(K, rng), c = random_element(K, rng, 30, false);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
      EXPECT_EQ((a + b).trace(), a.trace() + b.trace());
      EXPECT_EQ(a * a.conjugate(), AlgebraicNumber(K, a.norm()));
      if (!c.is_zero()) {
        EXPECT_EQ(a * c / c, a);
      }
    }
  }
  EXPECT_THROW(AlgebraicNumber(Field::quadratic(2)).inverse(), Error);
}

TEST(Field, RealSignMatchesFloatingPoint) {
  std::mt19937_64 rng(3);
  for (long d : {2L, 3L, 5L, 13L, 29L}) {
    Field K = Field::quadratic(d);
    for (int i = 0; i < 200; ++i) {
      AlgebraicNumber z = random_element(K, rng, 1000);
      double v = approx(z);
      if (std::abs(v) < 1e-6) continue;
      EXPECT_EQ(z.real_sign(), v > 0 ? 1 : -1) << z.to_string();
    }
  }
  EXPECT_THROW(AlgebraicNumber(Field::quadratic(-1), 1).real_sign(), Error);
}

TEST(Field, CubeRootsOfCubes) {
  std::mt19937_64 rng(4);
  for (long d : kFields) {
    Field K = Field::quadratic(d);
    for (int i = 0; i < 40; ++i) {
      AlgebraicNumber g = random_element(K, rng, 40, i % 3 != 0);
      auto roots = cube_roots(g.pow(3));
      EXPECT_NE(std::find(roots.begin(), roots.end(), g), roots.end()) << g.to_string();
      for (const auto& r : roots) EXPECT_EQ(r.pow(3), g.pow(3));
      if (K.is_real() && !g.is_zero()) {
        EXPECT_EQ(roots.size(), 1u);
      }
    }
  }
  // Q(sqrt -3) holds the cube roots of unity.
  EXPECT_EQ(cube_roots(AlgebraicNumber(Field::quadratic(-3), 1)).size(), 3u);
  EXPECT_FALSE(cube_root(AlgebraicNumber(Field::quadratic(2), 2)));
  EXPECT_FALSE(cube_root(AlgebraicNumber(Field::quadratic(2), 1, 1)));
  EXPECT_EQ(*cube_root(AlgebraicNumber(Field::rational(), make_rational(-8, 27))), AlgebraicNumber(Field::rational(), make_rational(-2, 3)));
}

TEST(Units, FundamentalUnitsMatchPellSearch) {
  for (long d = 2; d < 120; ++d) {
    if (!oracle::naive_squarefree(d)) continue;
    Field K = Field::quadratic(d);
    auto u = oracle::pell_unit(oracle::field_disc(d));
    AlgebraicNumber expected = K.half_integral_basis()
                                   ? AlgebraicNumber(K, BigRational(BigInt((u.x - u.y) / 2)), BigRational(u.y))
                                   : AlgebraicNumber(K, BigRational(BigInt(u.x / 2)), BigRational(u.y));
    AlgebraicNumber eps = fundamental_unit(K);
    EXPECT_EQ(eps, expected) << "d = " << d;
    EXPECT_EQ(eps.norm(), u.norm) << "d = " << d;
  }
  EXPECT_EQ(fundamental_unit(Field::quadratic(2)).to_string(), "1 + w");
  EXPECT_EQ(fundamental_unit(Field::quadratic(5)).to_string(), "w");
  EXPECT_EQ(fundamental_unit(Field::quadratic(94)).to_string(), "2143295 + 221064*w");
  EXPECT_THROW(fundamental_unit(Field::quadratic(-5)), Error);
}
