#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"

namespace fermat3 {

/// Periodic expansion [preperiod; period, period, ...] of a quadratic irrational.
struct PeriodicExpansion {
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;
  bool half_integral = false;  // expansion of (1 + sqrt d)/2 rather than sqrt d
};

/// Expansion of sqrt(d), or of (1 + sqrt(d))/2 when d = 1 mod 4.
inline PeriodicExpansion cf_sqrt(const BigInt& d) {
  if (d <= 1) fail(ErrorKind::InvalidArgument, "cf_sqrt needs d > 1");
  if (!is_squarefree(d)) fail(ErrorKind::NotSquareFree, d.get_str() + " is not square-free");

  PeriodicExpansion out;
  out.half_integral = mod(d, 4) == 1;
  // State (P, Q) stands for (P + sqrt d)/Q with Q | d - P^2 and Q > 0.
  BigInt P = out.half_integral ? 1 : 0;
  BigInt Q = out.half_integral ? 2 : 1;
  const BigInt s = isqrt(d);

  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> terms;
  for (;;) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), terms.size());
    if (!inserted) {
      std::size_t start = it->second;
      out.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
      out.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
      if (out.preperiod.empty()) {
        // Purely periodic (only d = 5): write it as [a0; a1, ..., a0].
        out.preperiod.push_back(out.period.front());
        std::rotate(out.period.begin(), out.period.begin() + 1, out.period.end());
      }
      return out;
    }
    BigInt a = floor_div(BigInt(P + s), Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (d - P * P) / Q;
    if (Q <= 0) fail(ErrorKind::InternalInconsistency, "continued fraction state lost positivity");
  }
}

/// Convergent p/q built from the preperiod and the first period minus its last term,
/// i.e. the convergent whose numerator and denominator give the fundamental solution.
inline std::pair<BigInt, BigInt> period_end_convergent(const PeriodicExpansion& e) {
  std::vector<BigInt> terms = e.preperiod;
  terms.insert(terms.end(), e.period.begin(), e.period.end() - 1);
  // p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1.
  BigInt p = 1, p_prev = 0, q = 0, q_prev = 1;
  for (const auto& a : terms) {
    BigInt pn = a * p + p_prev;
    BigInt qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  return {p, q};
}

}  // namespace fermat3
