#pragma once

#include "fermat3/contfrac.hpp"
#include "fermat3/field.hpp"

namespace fermat3 {

/// Fundamental unit eps > 1 of a real quadratic field, from the continued fraction of w.
inline AlgebraicNumber fundamental_unit(const Field& K) {
  if (!K.is_real() || K.is_rational()) fail(ErrorKind::InvalidArgument, "fundamental unit needs a real quadratic field");
  BigInt d(static_cast<long>(K.d()));
  auto [p, q] = period_end_convergent(cf_sqrt(d));
  // p/q approximates w, so p - q*conj(w) is the unit > 1.
  AlgebraicNumber eps = K.half_integral_basis() ? AlgebraicNumber(K, BigRational(BigInt(p - q)), BigRational(q))
                                                : AlgebraicNumber(K, BigRational(p), BigRational(q));
  if (!eps.is_unit() || compare_real(eps, AlgebraicNumber(K, 1)) <= 0)
    fail(ErrorKind::InternalInconsistency, "continued fraction did not produce a unit > 1 for d = " + d.get_str());
  return eps;
}

}  // namespace fermat3
