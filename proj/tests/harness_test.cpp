#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include "fermat3/harness.hpp"

using namespace fermat3;

namespace {

Equation rational_eq(long A, long B, long C, long p) {
  Field Q = Field::rational();
  return {Q, AlgebraicNumber(Q, A), AlgebraicNumber(Q, B), AlgebraicNumber(Q, C), p};
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FERMAT3_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

long ipow(long x, long p) {
  long r = 1;
  for (long i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

TEST(Classify, Flags) {
  auto eq = rational_eq(1, 1, 1, 5);
  Field Q = eq.K;
  auto r = classify_solution(eq, AlgebraicNumber(Q, 1), AlgebraicNumber(Q, -1), AlgebraicNumber(Q, 0));
  EXPECT_TRUE(r.trivial);
  EXPECT_TRUE(r.in_exceptional_S);
  r = classify_solution(eq, AlgebraicNumber(Q, 0), AlgebraicNumber(Q, 1), AlgebraicNumber(Q, 1));
  EXPECT_TRUE(r.trivial);
  EXPECT_FALSE(r.in_W_K);

  auto eq2 = rational_eq(2, 1, 1, 5);
  r = classify_solution(eq2, AlgebraicNumber(Q, 1), AlgebraicNumber(Q, -1), AlgebraicNumber(Q, 1));
  EXPECT_FALSE(r.trivial);
  EXPECT_TRUE(r.primitive);
  EXPECT_TRUE(r.in_exceptional_S);
  EXPECT_FALSE(r.in_W_K);

  try {
    classify_solution(eq, AlgebraicNumber(Q, 1), AlgebraicNumber(Q, 1), AlgebraicNumber(Q, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotASolution);
  }
}

TEST(Classify, WKMembership) {
  // 3^5 * 1 + 1 * 1 = 244 = 244 * 1^3 with A = 1, B = 1, C = 244: 3 | ab.
  auto eq = rational_eq(1, 1, 244, 5);
  Field Q = eq.K;
  auto r = classify_solution(eq, AlgebraicNumber(Q, 3), AlgebraicNumber(Q, 1), AlgebraicNumber(Q, 1));
  EXPECT_TRUE(r.in_W_K);
  EXPECT_TRUE(r.primitive);
}

TEST(Enumerate, RationalHeightTen) {
  auto eq = rational_eq(1, 1, 1, 5);
  auto recs = enumerate_solutions(eq, 10);
  bool saw_224 = false;
  for (const auto& r : recs) {
    EXPECT_TRUE(r.trivial || !r.primitive) << r.a.to_string() << " " << r.b.to_string() << " " << r.c.to_string();
    if (r.a.to_string() == "2" && r.b.to_string() == "2" && r.c.to_string() == "4") {
      saw_224 = true;
      EXPECT_FALSE(r.primitive);
      EXPECT_FALSE(r.trivial);
    }
    if (r.in_W_K) EXPECT_TRUE(r.primitive && !r.trivial);
    if (r.in_exceptional_S) EXPECT_EQ(abs(BigInt(r.a.norm().get_num())), 1);
  }
  EXPECT_TRUE(saw_224);
}

TEST(Enumerate, MatchesNaiveTripleLoop) {
  for (auto [A, B, C] : {std::tuple{1L, 1L, 1L}, std::tuple{2L, 1L, 1L}, std::tuple{3L, 1L, 2L}}) {
    auto eq = rational_eq(A, B, C, 5);
    const long H = 6;
    std::vector<std::tuple<long, long, long>> naive;
    for (long a = -H; a <= H; ++a)
      for (long b = -H; b <= H; ++b)
        for (long c = -H; c <= H; ++c)
          if (A * ipow(a, 5) + B * ipow(b, 5) == C * c * c * c) naive.emplace_back(a, b, c);
    auto recs = enumerate_solutions(eq, H);
    std::vector<std::tuple<long, long, long>> got;
    for (const auto& r : recs) got.emplace_back(BigInt(r.a.x().get_num()).get_si(), BigInt(r.b.x().get_num()).get_si(), BigInt(r.c.x().get_num()).get_si());
    std::sort(naive.begin(), naive.end());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, naive);
  }
}

TEST(Enumerate, ShardsDoNotChangeTheOutput) {
  Field K = Field::quadratic(2);
  Equation eq{K, AlgebraicNumber(K, 1), AlgebraicNumber(K, 1), AlgebraicNumber(K, 1), 5};
  auto one = fixture_text(eq, 2, enumerate_solutions(eq, 2, 1));
  for (int s : {2, 3, 7}) EXPECT_EQ(fixture_text(eq, 2, enumerate_solutions(eq, 2, s)), one);
}

TEST(Enumerate, DoublingTheBoxKeepsRecords) {
  auto eq = rational_eq(1, 1, 1, 5);
  auto small = enumerate_solutions(eq, 5), large = enumerate_solutions(eq, 10);
  for (const auto& r : small) EXPECT_NE(std::find(large.begin(), large.end(), r), large.end());
  for (const auto& r : large) {
    bool inside = detail::in_box(r.a, 5) && detail::in_box(r.b, 5) && detail::in_box(r.c, 5);
    EXPECT_EQ(inside, std::find(small.begin(), small.end(), r) != small.end());
  }
}

TEST(Enumerate, Limits) {
  auto eq = rational_eq(1, 1, 1, 5);
  EXPECT_THROW(enumerate_solutions(eq, 0), Error);
  try {
    enumerate_solutions(eq, 100, 1, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LimitExceeded);
  }
  auto bad = rational_eq(1, 1, 1, 4);
  EXPECT_THROW(enumerate_solutions(bad, 2), Error);
}

TEST(Fixtures, RationalHeightTen) {
  auto eq = rational_eq(1, 1, 1, 5);
  EXPECT_EQ(fixture_text(eq, 10, enumerate_solutions(eq, 10, 4)), read_fixture("search_Q_1_1_1_p5_H10.txt"));
}

TEST(Fixtures, RationalWithA2) {
  auto eq = rational_eq(2, 1, 1, 5);
  auto recs = enumerate_solutions(eq, 2);
  EXPECT_EQ(fixture_text(eq, 2, recs), read_fixture("search_Q_2_1_1_p5_H2.txt"));
  Field Q = eq.K;
  EXPECT_NE(std::find_if(recs.begin(), recs.end(),
                         [&](const SolutionRecord& r) {
                           return r.a == AlgebraicNumber(Q, 1) && r.b == AlgebraicNumber(Q, -1) && r.c == AlgebraicNumber(Q, 1);
                         }),
            recs.end());
}

TEST(Fixtures, QuadraticHeightTwo) {
  Field K = Field::quadratic(2);
  Equation eq{K, AlgebraicNumber(K, 1), AlgebraicNumber(K, 1), AlgebraicNumber(K, 1), 5};
  EXPECT_EQ(fixture_text(eq, 2, enumerate_solutions(eq, 2, 2)), read_fixture("search_Qsqrt2_1_1_1_p5_H2.txt"));
}

TEST(Fixtures, BruteSUnitBoxQSqrt2) {
  Field K = Field::quadratic(2);
  SUnitBasis B(K, primes_above(K, 3));
  std::ostringstream os;
  for (const auto& t : brute_sunit_box(B, 2)) os << t.alpha.to_string() << " | " << t.beta.to_string() << " | " << t.gamma.to_string() << "\n";
  EXPECT_EQ(os.str(), read_fixture("sunit_Qsqrt2_3_bound2.txt"));
}

TEST(BruteSUnit, AgreesWithSolverAndIsMonotone) {
  Field Q = Field::rational();
  SUnitBasis B(Q, primes_above(Q, 3));
  auto four = brute_sunit_box(B, 4);
  EXPECT_EQ(four, solve_cube_sum(B, 4).classes);
  for (const auto& t : brute_sunit_box(B, 1)) EXPECT_NE(std::find(four.begin(), four.end(), t), four.end());
}
