#pragma once

// Exhaustive search for A a^p + B b^p = C c^3 over coordinate boxes of O_K, solution
// flags, and a naive S-unit box search used as an oracle for the cube-sum solver.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/frey.hpp"
#include "fermat3/ideal.hpp"
#include "fermat3/sunits.hpp"

namespace fermat3 {

inline constexpr std::int64_t kSearchWorkCap = 50000000;

struct SolutionRecord {
  AlgebraicNumber a, b, c;
  bool trivial = false;
  bool primitive = false;
  bool in_W_K = false;
  bool in_exceptional_S = false;

  friend bool operator<(const SolutionRecord& x, const SolutionRecord& y) {
    if (!(x.a == y.a)) return x.a < y.a;
    if (!(x.b == y.b)) return x.b < y.b;
    return x.c < y.c;
  }
  friend bool operator==(const SolutionRecord& x, const SolutionRecord& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.trivial == y.trivial && x.primitive == y.primitive &&
           x.in_W_K == y.in_W_K && x.in_exceptional_S == y.in_exceptional_S;
  }
};

struct Equation {
  Field K;
  AlgebraicNumber A, B, C;
  long p;
};

/// Flags for a solution; NotASolution when the relation fails.
inline SolutionRecord classify_solution(const Equation& eq, const AlgebraicNumber& a, const AlgebraicNumber& b,
                                        const AlgebraicNumber& c) {
  if (!(eq.A * a.pow(eq.p) + eq.B * b.pow(eq.p) == eq.C * c.pow(3)))
    fail(ErrorKind::NotASolution, "(" + a.to_string() + ", " + b.to_string() + ", " + c.to_string() + ") does not satisfy the equation");
  SolutionRecord r{a, b, c};
  r.trivial = a.is_zero() || b.is_zero() || c.is_zero();
  r.primitive = is_primitive_triple(a, b, c);
  if (r.primitive && !r.trivial) {
    auto SK = primes_above(eq.K, 3);
    r.in_W_K = std::all_of(SK.begin(), SK.end(), [&](const PrimeIdeal& P) { return P.valuation(a * b) > 0; });
    if (r.in_W_K) {
      for (const auto& P : SK) {
        if (eq.p <= P.valuation(eq.C)) continue;
        bool pa = P.valuation(a) > 0, pb = P.valuation(b) > 0;
        if (pa == pb) fail(ErrorKind::InternalInconsistency, P.to_string() + " divides both or neither of a, b in W_K");
      }
    }
  }
  r.in_exceptional_S = !a.is_zero() && a.is_unit() && (b == a || b == -a);
  return r;
}

namespace detail {

inline std::vector<AlgebraicNumber> box_elements(const Field& K, long H) {
  std::vector<AlgebraicNumber> out;
  for (long x = -H; x <= H; ++x) {
    if (K.is_rational()) {
      out.emplace_back(K, x);
      continue;
    }
    for (long y = -H; y <= H; ++y) out.emplace_back(K, x, y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool in_box(const AlgebraicNumber& z, long H) {
  if (!z.is_integral()) return false;
  return abs(BigInt(z.x().get_num())) <= H && abs(BigInt(z.y().get_num())) <= H;
}

}  // namespace detail

/// Every solution with all integral-basis coordinates of a, b, c in [-H, H], sorted.
/// The (a, b) grid is split over `shards` threads; the merged output does not depend on it.
inline std::vector<SolutionRecord> enumerate_solutions(const Equation& eq, long H, int shards = 1,
                                                       std::int64_t work_cap = kSearchWorkCap) {
  if (H < 1) fail(ErrorKind::InvalidArgument, "box height must be >= 1");
  if (!is_prime(BigInt(eq.p))) fail(ErrorKind::NotPrime, std::to_string(eq.p) + " is not prime");
  if (eq.C.is_zero()) fail(ErrorKind::InvalidArgument, "C must be nonzero");
  if (shards < 1) shards = 1;
  auto elems = detail::box_elements(eq.K, H);
  std::int64_t pairs = static_cast<std::int64_t>(elems.size()) * static_cast<std::int64_t>(elems.size());
  if (pairs > work_cap) fail(ErrorKind::LimitExceeded, "search box has " + std::to_string(pairs) + " candidates (cap " + std::to_string(work_cap) + ")");
  std::vector<AlgebraicNumber> powers;
  for (const auto& z : elems) powers.push_back(z.pow(eq.p));
  AlgebraicNumber Cinv = eq.C.inverse();
  std::vector<std::vector<SolutionRecord>> parts(shards);
  std::vector<std::exception_ptr> errors(shards);
  auto work = [&](int s) {
    try {
      for (std::size_t i = s; i < elems.size(); i += shards) {
        AlgebraicNumber lhs_a = eq.A * powers[i];
        for (std::size_t j = 0; j < elems.size(); ++j) {
          AlgebraicNumber rhs = (lhs_a + eq.B * powers[j]) * Cinv;
          for (const auto& c : cube_roots(rhs)) {
            if (detail::in_box(c, H)) parts[s].push_back(classify_solution(eq, elems[i], elems[j], c));
          }
        }
      }
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (int s = 1; s < shards; ++s) threads.emplace_back(work, s);
  work(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SolutionRecord> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Naive double loop over alpha, beta with every free exponent in [-bound, bound].
inline std::vector<SUnitTriple> brute_sunit_box(const SUnitBasis& basis, long bound, std::int64_t work_cap = kSolverWorkCap) {
  const int n = basis.length();
  std::vector<long> lo(n, -bound), hi(n, bound);
  std::vector<ExponentVector> box;
  for_each_exponent(basis, lo, hi, [&](const ExponentVector& e) { box.push_back(e); });
  std::int64_t pairs = static_cast<std::int64_t>(box.size()) * static_cast<std::int64_t>(box.size());
  if (pairs > work_cap) fail(ErrorKind::LimitExceeded, "brute S-unit box has " + std::to_string(pairs) + " pairs (cap " + std::to_string(work_cap) + ")");
  std::vector<AlgebraicNumber> values;
  for (const auto& e : box) values.push_back(basis.element(e));
  std::vector<SUnitTriple> out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    for (std::size_t j = 0; j < box.size(); ++j) {
      auto roots = cube_roots(values[i] + values[j]);
      if (roots.empty()) continue;
      out.push_back(canonical(basis, SUnitTriple{values[i], values[j], roots.front(), box[i], box[j]}));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Deterministic text listing for regression fixtures.
inline std::string fixture_text(const Equation& eq, long H, const std::vector<SolutionRecord>& records) {
  std::ostringstream os;
  os << "# field " << eq.K.spec() << " A " << eq.A.to_string() << " B " << eq.B.to_string() << " C " << eq.C.to_string()
     << " p " << eq.p << " H " << H << "\n";
  for (const auto& r : records) {
    os << r.a.to_string() << " | " << r.b.to_string() << " | " << r.c.to_string() << " |";
    if (r.trivial) os << " trivial";
    if (r.primitive) os << " primitive";
    if (r.in_W_K) os << " W_K";
    if (r.in_exceptional_S) os << " exceptional";
    os << "\n";
  }
  return os.str();
}

}  // namespace fermat3
