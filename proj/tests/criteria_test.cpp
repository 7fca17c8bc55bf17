#include <gtest/gtest.h>

#include <random>

#include "fermat3/criteria.hpp"

using namespace fermat3;

namespace {

AlgebraicNumber n(const Field& K, long x, long y = 0) { return AlgebraicNumber(K, x, y); }

ClauseStatus status(const Verdict& v, const std::string& name) {
  const Clause* c = v.clause(name);
  if (!c) ADD_FAILURE() << "missing clause " << name;
  return c ? c->status : ClauseStatus::Inconclusive;
}

void expect_consistent(const Verdict& v) {
  bool any_fail = false, any_soft = !v.ledger.empty();
  for (const auto& c : v.clauses) {
    any_fail |= c.status == ClauseStatus::Fail;
    any_soft |= c.status == ClauseStatus::Assumed || c.status == ClauseStatus::Bounded;
  }
  if (any_fail) {
    EXPECT_EQ(v.overall, Overall::DoesNotApply) << v.theorem;
  }
  if (!any_fail && any_soft) {
    EXPECT_NE(v.overall, Overall::Applies) << v.theorem;
  }
  if (!v.ledger.empty()) {
    EXPECT_NE(v.overall, Overall::Applies) << v.theorem;
  }
  EXPECT_EQ(v.accepted(), v.overall == Overall::Applies || v.overall == Overall::AppliesModuloAssumptions);
}

SolverConfig at(long bound) {
  SolverConfig cfg;
  cfg.bound = bound;
  return cfg;
}

}  // namespace

TEST(PBound, Instantiations) {
  Field K = Field::quadratic(2), Q = Field::rational();
  EXPECT_EQ(explicit_p_bound(K, n(K, 3), n(K, 1), n(K, 1)), 4);
  EXPECT_EQ(explicit_p_bound(Q, n(Q, 1), n(Q, 1), n(Q, 1)), 3);
  EXPECT_EQ(explicit_p_bound(K, n(K, 9), n(K, 3), n(K, 1)), 6);
}

TEST(PBound, MonotoneUnderMultiplyingAByThree) {
  std::mt19937_64 rng(5);
  Field K = Field::quadratic(2);
  for (int i = 0; i < 200; ++i) {
    auto r = [&] { return static_cast<long>(rng() % 21) - 10; };
    AlgebraicNumber A(K, r(), r()), B(K, r(), r()), C(K, r(), r());
    if (A.is_zero() || B.is_zero() || C.is_zero()) continue;
    long before = explicit_p_bound(K, A, B, C);
    EXPECT_GE(explicit_p_bound(K, A * n(K, 3), B, C), before);
  }
}

TEST(Shapes, UnitTimesPowerOfThree) {
  Field K = Field::quadratic(2);
  long r = -1;
  EXPECT_TRUE(unit_times_power_of_3(n(K, 3), &r));
  EXPECT_EQ(r, 1);
  EXPECT_TRUE(unit_times_power_of_3(n(K, 9) * n(K, 1, 1).pow(3), &r));
  EXPECT_EQ(r, 2);
  EXPECT_TRUE(unit_times_power_of_3(n(K, 1, 1)));
  EXPECT_FALSE(unit_times_power_of_3(n(K, 6)));
  EXPECT_FALSE(unit_times_power_of_3(n(K, 0, 1)));
  EXPECT_TRUE(c_shape_ok(n(K, 1, 1)));
  EXPECT_TRUE(c_shape_ok(n(K, 5) * n(K, 1, 1)));
  EXPECT_FALSE(c_shape_ok(n(K, 3)));
  EXPECT_FALSE(c_shape_ok(n(K, 35)));
  EXPECT_TRUE(integer_is_unit_times_power_of_3(BigInt(-27)));
  EXPECT_FALSE(integer_is_unit_times_power_of_3(BigInt(12)));
}

TEST(TheoremWK, OverQAndQSqrt2) {
  Field Q = Field::rational();
  auto v = check_theorem_WK(Q, n(Q, 1), n(Q, 1), n(Q, 1), at(6));
  EXPECT_EQ(v.overall, Overall::AppliesModuloAssumptions);
  EXPECT_EQ(status(v, "class-3-torsion"), ClauseStatus::Pass);
  EXPECT_EQ(status(v, "sunit-T1"), ClauseStatus::Bounded);
  EXPECT_EQ(v.satisfied_at.size(), 5u);
  expect_consistent(v);

  Field K = Field::quadratic(2);
  v = check_theorem_WK(K, n(K, 3), n(K, 1), n(K, 1), at(4));
  EXPECT_EQ(v.overall, Overall::AppliesModuloAssumptions);
  EXPECT_EQ(v.explicit_p_bound, 4);
  expect_consistent(v);

  EXPECT_THROW(check_theorem_WK(Field::quadratic(-5), n(Field::quadratic(-5), 1), n(Field::quadratic(-5), 1),
                                n(Field::quadratic(-5), 1)),
               Error);
}

TEST(TheoremWK, ExtraPrimesWidenTheSearch) {
  Field Q = Field::rational();
  SolverConfig cfg = at(3);
  cfg.extra_prime_bound = 1;
  auto v = check_theorem_WK(Q, n(Q, 2), n(Q, 1), n(Q, 1), cfg);
  EXPECT_EQ(status(v, "s-prime"), ClauseStatus::Pass);
  expect_consistent(v);
}

TEST(PropMain2, Examples) {
  Field K2 = Field::quadratic(2);
  auto v = check_prop_main2(K2, n(K2, 1), n(K2, 1), n(K2, 1), at(3));
  EXPECT_EQ(v.overall, Overall::AppliesModuloAssumptions);
  for (const auto& c : v.clauses) EXPECT_NE(c.status, ClauseStatus::Fail) << c.name << ": " << c.detail;
  expect_consistent(v);

  Field K29 = Field::quadratic(29);
  v = check_prop_main2(K29, n(K29, 1), n(K29, 1), n(K29, 1), at(2));
  EXPECT_EQ(status(v, "h-kzeta3"), ClauseStatus::Fail);
  EXPECT_EQ(v.overall, Overall::DoesNotApply);
  expect_consistent(v);

  Field K3 = Field::quadratic(3);
  v = check_prop_main2(K3, n(K3, 1), n(K3, 1), n(K3, 1), at(2));
  EXPECT_EQ(status(v, "three-splitting"), ClauseStatus::Pass);
  expect_consistent(v);

  Field K7 = Field::quadratic(7);
  v = check_prop_main2(K7, n(K7, 1), n(K7, 1), n(K7, 1), at(2));
  EXPECT_EQ(status(v, "three-splitting"), ClauseStatus::Fail);
}

TEST(TheoremK, OverQFailsWithWitness) {
  Field Q = Field::rational();
  auto v = check_theorem_K(Q, n(Q, 3), n(Q, 1), n(Q, 1), at(6));
  EXPECT_EQ(v.overall, Overall::DoesNotApply);
  EXPECT_EQ(status(v, "sunit-K"), ClauseStatus::Fail);
  EXPECT_EQ(status(v, "es"), ClauseStatus::Pass);
  EXPECT_EQ(status(v, "coeff-shape"), ClauseStatus::Pass);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->alpha.to_string(), "1");
  EXPECT_EQ(v.witness->beta.to_string(), "-1");
  EXPECT_TRUE(v.witness->gamma.is_zero());
  expect_consistent(v);
}

TEST(TheoremK, EvenDegreeAssumesES) {
  Field K = Field::quadratic(2);
  auto v = check_theorem_K(K, n(K, 3), n(K, 9), n(K, 1), at(2));
  EXPECT_EQ(status(v, "es"), ClauseStatus::Assumed);
  EXPECT_EQ(status(v, "coeff-shape"), ClauseStatus::Pass);
  EXPECT_NE(v.overall, Overall::Applies);
  expect_consistent(v);
}

TEST(TheoremK, DroppingTrivialGammaKeepsTheFailure) {
  Field Q = Field::rational();
  SUnitBasis basis(Q, primes_above(Q, 3));
  auto sols = solve_cube_sum(basis, 6).classes;
  std::vector<SUnitTriple> nonzero;
  for (const auto& t : sols) {
    if (!t.gamma.is_zero()) nonzero.push_back(t);
  }
  ASSERT_LT(nonzero.size(), sols.size());
  auto ck = check_condition_K(nonzero, basis.primes().front());
  EXPECT_FALSE(ck.holds);
  ASSERT_TRUE(ck.witness.has_value());
  EXPECT_EQ(ck.witness->alpha.to_string(), "1");
  EXPECT_EQ(ck.witness->beta.to_string(), "-9");

  auto v = check_theorem_K(Q, n(Q, 1), n(Q, 1), n(Q, 1), at(6));
  EXPECT_EQ(v.overall, Overall::DoesNotApply);
  EXPECT_EQ(status(v, "sunit-K"), ClauseStatus::Fail);
}

TEST(LocalQuadratic, Examples) {
  Field K2 = Field::quadratic(2);
  auto v = check_local_quadratic(2, n(K2, 3), n(K2, 1), n(K2, 1));
  EXPECT_EQ(v.overall, Overall::AppliesModuloAssumptions);
  EXPECT_EQ(v.explicit_p_bound, 4);
  expect_consistent(v);

  Field K29 = Field::quadratic(29);
  v = check_local_quadratic(29, n(K29, 1), n(K29, 1), n(K29, 1));
  EXPECT_EQ(v.overall, Overall::DoesNotApply);
  EXPECT_EQ(status(v, "h-kzeta3"), ClauseStatus::Fail);
  EXPECT_NE(v.clause("h-kzeta3")->detail.find("6"), std::string::npos);

  Field K7 = Field::quadratic(7);
  v = check_local_quadratic(7, n(K7, 1), n(K7, 1), n(K7, 1));
  EXPECT_EQ(status(v, "three-splitting"), ClauseStatus::Fail);

  v = check_local_quadratic(2, n(K2, 6), n(K2, 1), n(K2, 1));
  EXPECT_EQ(status(v, "coeff-shape"), ClauseStatus::Fail);
  EXPECT_THROW(check_local_quadratic(1, n(K2, 1), n(K2, 1), n(K2, 1)), Error);
}

TEST(Irreducibility, AgainstKnownPolynomials) {
  EXPECT_TRUE(is_irreducible_over_Q(IntPolynomial{-5, 0, 0, 1}));
  EXPECT_TRUE(is_irreducible_over_Q(IntPolynomial{-2, 0, 1}));
  EXPECT_FALSE(is_irreducible_over_Q(IntPolynomial{-8, 0, 0, 1}));
  EXPECT_FALSE(is_irreducible_over_Q(IntPolynomial{1, 0, 2, 0, 1}));    // (x^2 + 1)^2
  EXPECT_TRUE(is_irreducible_over_Q(IntPolynomial{-2, 0, 0, 0, 0, 1}));  // x^5 - 2
  EXPECT_FALSE(is_irreducible_over_Q((IntPolynomial{1, 0, 1}) * (IntPolynomial{-2, 0, 0, 1})));
  // Reducible mod every prime, so only the factor search decides these.
  EXPECT_TRUE(is_irreducible_over_Q(IntPolynomial{1, 0, -10, 0, 1}));
  EXPECT_FALSE(is_irreducible_over_Q(IntPolynomial{4, 0, 0, 0, 1}));
}

TEST(Irreducibility, ProductsOfRandomFactorsAreReducible) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    auto draw = [&](int deg) {
      std::vector<BigInt> c(deg + 1);
      for (int k = 0; k < deg; ++k) c[k] = static_cast<long>(rng() % 7) - 3;
      c[deg] = 1;
      if (c[0] == 0) c[0] = 1;
      return IntPolynomial(c);
    };
    IntPolynomial f = draw(2 + static_cast<int>(rng() % 2)) * draw(2 + static_cast<int>(rng() % 2));
    EXPECT_FALSE(is_irreducible_over_Q(f)) << f.to_string();
  }
}

TEST(LocalOddDegree, Examples) {
  OddDegreeInputs in{IntPolynomial{-5, 0, 0, 1}, BigInt(5)};
  auto v = check_local_odd_degree(in);
  EXPECT_EQ(status(v, "degree"), ClauseStatus::Pass);
  EXPECT_EQ(status(v, "q-coprime"), ClauseStatus::Pass);
  EXPECT_EQ(status(v, "q-ramification"), ClauseStatus::Pass);
  EXPECT_EQ(status(v, "class-3-torsion"), ClauseStatus::Assumed);
  EXPECT_EQ(status(v, "h-kzeta3"), ClauseStatus::Assumed);
  expect_consistent(v);

  in.q = 7;
  v = check_local_odd_degree(in);
  EXPECT_EQ(status(v, "q-ramification"), ClauseStatus::Fail);
  EXPECT_EQ(v.overall, Overall::DoesNotApply);

  in.q = 5;
  in.h_K = 3;
  v = check_local_odd_degree(in);
  EXPECT_EQ(status(v, "class-3-torsion"), ClauseStatus::Fail);

  auto kind = [](const OddDegreeInputs& x) {
    try {
      check_local_odd_degree(x);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalInconsistency;
  };
  EXPECT_EQ(kind({IntPolynomial{-2, 0, 1}, BigInt(5)}), ErrorKind::EvenDegree);
  EXPECT_EQ(kind({IntPolynomial{-8, 0, 0, 1}, BigInt(5)}), ErrorKind::ReduciblePolynomial);
  EXPECT_EQ(kind({IntPolynomial{-5, 0, 0, 1}, BigInt(9)}), ErrorKind::NotPrime);
}

TEST(Dedekind, IndexObstruction) {
  // x^3 - 5 is Eisenstein at 5, so Z[theta] is 5-maximal.
  EXPECT_TRUE(dedekind_maximal_at(IntPolynomial{-5, 0, 0, 1}, BigInt(5)));
  // x^3 - 25: theta^2 / 5 is integral, so 5 divides the index.
  EXPECT_FALSE(dedekind_maximal_at(IntPolynomial{-25, 0, 0, 1}, BigInt(5)));
  EXPECT_FALSE(totally_ramified_at(IntPolynomial{-25, 0, 0, 1}, BigInt(5)).has_value());
}

TEST(Verdict, OverallLattice) {
  Verdict v;
  v.add("x", ClauseStatus::Pass, "");
  v.finalize();
  EXPECT_EQ(v.overall, Overall::Applies);
  v.add("y", ClauseStatus::Bounded, "");
  v.finalize();
  EXPECT_EQ(v.overall, Overall::AppliesModuloAssumptions);
  v.add("z", ClauseStatus::Inconclusive, "");
  v.finalize();
  EXPECT_EQ(v.overall, Overall::Inconclusive);
  v.add("w", ClauseStatus::Fail, "");
  v.finalize();
  EXPECT_EQ(v.overall, Overall::DoesNotApply);
  Verdict l;
  l.ledger.push_back("assumption");
  l.finalize();
  EXPECT_EQ(l.overall, Overall::AppliesModuloAssumptions);
}
