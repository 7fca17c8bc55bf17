#include <gtest/gtest.h>

#include "fermat3/classgroup.hpp"
#include "oracles.hpp"

using namespace fermat3;

TEST(ClassGroup, PinnedClassNumbers) {
  EXPECT_EQ(class_number(Field::quadratic(2)), 1);
  EXPECT_EQ(class_number(Field::quadratic(5)), 1);
  EXPECT_EQ(class_number(Field::quadratic(-6)), 2);
  EXPECT_EQ(class_number(Field::quadratic(-15)), 2);
  EXPECT_EQ(class_number(Field::quadratic(-87)), 6);
  EXPECT_EQ(class_number(Field::rational()), 1);
}

TEST(ClassGroup, ImaginaryAgreesWithNaiveFormsAndAnalyticFormula) {
  for (long d = -300; d <= -1; ++d) {
    if (!oracle::naive_squarefree(d)) continue;
    std::int64_t D = oracle::field_disc(d);
    std::int64_t h = class_number(Field::quadratic(d));
    EXPECT_EQ(h, oracle::naive_imaginary_class_number(D)) << "d = " << d;
    EXPECT_EQ(h, oracle::analytic_class_number(d)) << "d = " << d;
  }
}

TEST(ClassGroup, RealAgreesWithNaiveFormsAndAnalyticFormula) {
  for (long d = 2; d <= 110; ++d) {
    if (!oracle::naive_squarefree(d)) continue;
    std::int64_t h = class_number(Field::quadratic(d));
    EXPECT_EQ(h, oracle::naive_real_class_number(d)) << "d = " << d;
    EXPECT_EQ(h, oracle::analytic_class_number(d)) << "d = " << d;
  }
}

TEST(ClassGroup, Structure) {
  EXPECT_EQ(class_group(Field::quadratic(-5)).divisors, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(class_group(Field::quadratic(-23)).divisors, (std::vector<std::int64_t>{3}));
  EXPECT_EQ(class_group(Field::quadratic(-14)).divisors, (std::vector<std::int64_t>{4}));
  EXPECT_EQ(class_group(Field::quadratic(-21)).divisors, (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(class_group(Field::quadratic(-87)).divisors, (std::vector<std::int64_t>{6}));
  EXPECT_EQ(class_group(Field::quadratic(10)).divisors, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(class_group(Field::quadratic(79)).divisors, (std::vector<std::int64_t>{3}));
  EXPECT_TRUE(class_group(Field::quadratic(-23)).has_3_torsion);
  EXPECT_FALSE(class_group(Field::quadratic(-6)).has_3_torsion);
}

TEST(ClassGroup, GeneratorsHaveTheStatedOrders) {
  for (long d : {-5L, -14L, -21L, -87L, 10L, 79L, 82L}) {
    Field K = Field::quadratic(d);
    ClassGroup G(K);
    auto data = G.data();
    ASSERT_EQ(data.divisors.size(), data.generators.size());
    for (std::size_t i = 0; i < data.generators.size(); ++i) EXPECT_EQ(G.order(data.generators[i]), data.divisors[i]) << "d = " << d;
  }
}

TEST(ClassGroup, PrincipalityAgreesWithClassMap) {
  for (long d : {-5L, -6L, -15L, -23L, -87L, 2L, 3L, 10L, 15L, 79L, 82L}) {
    Field K = Field::quadratic(d);
    ClassGroup G(K);
    const Form one = G.group().identity();
    std::vector<Ideal> ideals;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      for (const auto& P : primes_above(K, BigInt(p))) ideals.push_back(P.ideal());
    }
    std::size_t n = ideals.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n && j < i + 3; ++j) ideals.push_back(ideals[i] * ideals[j]);
    }
    for (const auto& I : ideals) {
      auto g = is_principal(I);
      EXPECT_EQ(g.has_value(), G.class_of(I) == one) << I.to_string() << " in d = " << d;
      if (g) {
        EXPECT_EQ(Ideal::principal(*g), I);
      }
    }
  }
}

TEST(ClassGroup, ClassMapIsAHomomorphism) {
  for (long d : {-87L, -21L, 79L, 10L}) {
    Field K = Field::quadratic(d);
    ClassGroup G(K);
    std::vector<Ideal> ideals;
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
      for (const auto& P : primes_above(K, BigInt(p))) ideals.push_back(P.ideal());
    }
    for (const auto& I : ideals) {
      for (const auto& J : ideals) {
        EXPECT_EQ(G.class_of(I * J), G.group().multiply(G.class_of(I), G.class_of(J))) << "d = " << d;
      }
      // The conjugate is the inverse class.
      EXPECT_EQ(G.group().multiply(G.class_of(I), G.class_of(I.conjugate())), G.group().identity());
    }
  }
}

TEST(ClassGroup, SClassGroupQuotients) {
  Field K = Field::quadratic(-87);
  // 3 ramifies in Q(sqrt -87); its prime has order 2 in Z/6.
  auto S = primes_above(K, 3);
  EXPECT_EQ(s_class_group(K, S).h(), 3);
  EXPECT_TRUE(s_class_group(K, S).has_3_torsion);
  EXPECT_EQ(s_class_group(Field::quadratic(2), primes_above(Field::quadratic(2), 3)).h(), 1);
  EXPECT_EQ(s_class_group(Field::rational(), primes_above(Field::rational(), 3)).h(), 1);
}

TEST(ClassGroup, KZeta3Divisibility) {
  auto d2 = h3_divisibility_of_Kzeta3(Field::quadratic(2));
  EXPECT_FALSE(d2.divisible);
  EXPECT_EQ(d2.h_minus_3d, 2);
  EXPECT_EQ(d2.minus_3d_field.d(), -6);
  auto d29 = h3_divisibility_of_Kzeta3(Field::quadratic(29));
  EXPECT_TRUE(d29.divisible);
  EXPECT_EQ(d29.h_minus_3d, 6);
  // -3 * 3 = -9 has square-free part -1.
  EXPECT_EQ(h3_divisibility_of_Kzeta3(Field::quadratic(3)).minus_3d_field.d(), -1);
  EXPECT_THROW(h3_divisibility_of_Kzeta3(Field::quadratic(-2)), Error);
}

TEST(ClassGroup, DiscriminantLimit) {
  EXPECT_THROW(ClassGroup(Field::quadratic(-1000003)), Error);
  try {
    ClassGroup G(Field::quadratic(-1000003));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LimitExceeded);
  }
}
