#pragma once

// The Frey curve Y^2 + 3Cc XY + C^2 B b^p Y = X^3 attached to A a^p + B b^p = C c^3,
// its invariants, and valuation formulas that are linear in p.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/ideal.hpp"

namespace fermat3 {

struct FreyParams {
  AlgebraicNumber A, B, C, a, b, c;
  long p = 5;
};

struct WeierstrassInvariants {
  AlgebraicNumber a1, a3, b2, b4, b6, b8, c4, c6, delta, j;
};

/// constant + p_coefficient * p.
struct LinearInP {
  long constant = 0;
  long p_coefficient = 0;

  long at(long p) const { return constant + p_coefficient * p; }
  std::string to_string() const {
    std::string s = std::to_string(constant);
    if (p_coefficient == 0) return s;
    long m = std::labs(p_coefficient);
    return s + (p_coefficient < 0 ? " - " : " + ") + (m == 1 ? "" : std::to_string(m) + "*") + "p";
  }
  friend bool operator==(const LinearInP&, const LinearInP&) = default;
};

enum class ReductionKind { Good, Multiplicative, PotentiallyMultiplicative, PotentiallyGood };
enum class InertiaClaim { PDivides, In3Or6, PNotDivides, Unknown };

inline std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::Multiplicative: return "multiplicative";
    case ReductionKind::PotentiallyMultiplicative: return "potentially-multiplicative";
    case ReductionKind::PotentiallyGood: return "potentially-good";
  }
  return "?";
}

inline std::string to_string(InertiaClaim c) {
  switch (c) {
    case InertiaClaim::PDivides: return "p-divides";
    case InertiaClaim::In3Or6: return "in-3-6";
    case InertiaClaim::PNotDivides: return "p-not-divides";
    case InertiaClaim::Unknown: return "unknown";
  }
  return "?";
}

struct ReductionVerdict {
  PrimeIdeal prime;
  ReductionKind kind;
  InertiaClaim inertia_claim;
  LinearInP v_delta;
  LinearInP v_j;
};

namespace detail {

inline void check_prime_exponent(long p) {
  if (p < 5 || !is_prime(BigInt(p))) fail(ErrorKind::InvalidArgument, "exponent p must be a prime >= 5, got " + std::to_string(p));
}

inline void check_same_field(const FreyParams& f) {
  const Field& K = f.A.field();
  for (const auto* x : {&f.B, &f.C, &f.a, &f.b, &f.c}) {
    if (!(x->field() == K)) fail(ErrorKind::InvalidArgument, "Frey parameters from different fields");
  }
  for (const auto* x : {&f.A, &f.B, &f.C, &f.a, &f.b, &f.c}) {
    if (!x->is_integral()) fail(ErrorKind::InvalidArgument, x->to_string() + " is not in O_K");
  }
  if (f.A.is_zero() || f.B.is_zero() || f.C.is_zero()) fail(ErrorKind::InvalidArgument, "A, B, C must be nonzero");
}

}  // namespace detail

inline bool satisfies_relation(const FreyParams& f) {
  return f.A * f.a.pow(f.p) + f.B * f.b.pow(f.p) == f.C * f.c.pow(3);
}

inline WeierstrassInvariants frey_model(const FreyParams& f) {
  detail::check_same_field(f);
  detail::check_prime_exponent(f.p);
  if (!satisfies_relation(f)) fail(ErrorKind::RelationViolated, "A a^p + B b^p != C c^3");
  if (f.a.is_zero() || f.b.is_zero()) fail(ErrorKind::SingularModel, "ab = 0 gives a singular model");
  const Field& K = f.A.field();
  auto k = [&](long n) { return AlgebraicNumber(K, n); };
  WeierstrassInvariants w{k(0), k(0), k(0), k(0), k(0), k(0), k(0), k(0), k(0), k(0)};
  AlgebraicNumber bp = f.b.pow(f.p), ap = f.a.pow(f.p);
  w.a1 = k(3) * f.C * f.c;
  w.a3 = f.C * f.C * f.B * bp;
  // a2 = a4 = a6 = 0.
  w.b2 = w.a1 * w.a1;
  w.b4 = w.a1 * w.a3;
  w.b6 = w.a3 * w.a3;
  w.b8 = k(0);
  w.c4 = w.b2 * w.b2 - k(24) * w.b4;
  w.c6 = -(w.b2.pow(3)) + k(36) * w.b2 * w.b4 - k(216) * w.b6;
  w.delta = -(w.b2 * w.b2 * w.b8) - k(8) * w.b4.pow(3) - k(27) * w.b6 * w.b6 + k(9) * w.b2 * w.b4 * w.b6;
  if (w.delta.is_zero()) fail(ErrorKind::SingularModel, "discriminant vanishes");
  w.j = w.c4.pow(3) / w.delta;

  // Closed forms.
  AlgebraicNumber inner = k(9) * f.A * ap + f.B * bp;
  AlgebraicNumber c4_closed = k(9) * f.C.pow(3) * f.c * inner;
  AlgebraicNumber delta_closed = k(27) * f.A * f.B.pow(3) * f.C.pow(8) * (f.a * f.b.pow(3)).pow(f.p);
  AlgebraicNumber j_closed = k(27) * f.C * f.c.pow(3) * inner.pow(3) / (f.A * f.B.pow(3) * (f.a * f.b.pow(3)).pow(f.p));
  if (!(c4_closed == w.c4) || !(delta_closed == w.delta) || !(j_closed == w.j))
    fail(ErrorKind::InternalInconsistency, "Weierstrass chain disagrees with the closed forms");
  if (!(w.c4.pow(3) - w.c6 * w.c6 == k(1728) * w.delta))
    fail(ErrorKind::InternalInconsistency, "c4^3 - c6^2 != 1728 Delta");
  return w;
}

/// mu = B b^p / (A a^p).
inline AlgebraicNumber mu_of(const FreyParams& f) {
  if (f.a.is_zero() || f.A.is_zero()) fail(ErrorKind::DivisionByZero, "mu needs A a != 0");
  return f.B * f.b.pow(f.p) / (f.A * f.a.pow(f.p));
}

/// j = 27 (1 + mu)(9 + mu)^3 / mu^3.
inline AlgebraicNumber j_from_mu(const AlgebraicNumber& mu) {
  if (mu.is_zero()) fail(ErrorKind::DivisionByZero, "j_from_mu at mu = 0");
  const Field& K = mu.field();
  AlgebraicNumber one(K, 1), nine(K, 9), t7(K, 27);
  return t7 * (one + mu) * (nine + mu).pow(3) / mu.pow(3);
}

inline bool is_primitive_triple(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgebraicNumber& c) {
  std::vector<AlgebraicNumber> gens;
  for (const auto* x : {&a, &b, &c}) {
    if (!x->is_zero()) gens.push_back(*x);
  }
  if (gens.empty()) return false;
  return Ideal::generated_by(a.field(), gens).is_unit();
}

/// Reduction at q not dividing 3ABC.
inline ReductionVerdict classify_away_from_Sprime(const FreyParams& f, const PrimeIdeal& q) {
  const Field& K = f.A.field();
  if (q.valuation(AlgebraicNumber(K, 3) * f.A * f.B * f.C) > 0)
    fail(ErrorKind::PreconditionViolated, q.to_string() + " divides 3ABC");
  if (!is_primitive_triple(f.a, f.b, f.c)) fail(ErrorKind::PreconditionViolated, "(a, b, c) is not primitive");
  WeierstrassInvariants w = frey_model(f);
  long vab3 = q.valuation(f.a * f.b.pow(3));
  long vdelta = q.valuation(w.delta);
  if (vdelta != f.p * vab3) fail(ErrorKind::InternalInconsistency, "v_q(Delta) != p v_q(ab^3)");
  ReductionVerdict r{q, ReductionKind::Good, InertiaClaim::PNotDivides, LinearInP{0, 0}, LinearInP{0, 0}};
  if (vab3 == 0) return r;
  if (q.valuation(w.c4) != 0) fail(ErrorKind::InternalInconsistency, "q | c4 at a prime dividing ab");
  r.kind = ReductionKind::Multiplicative;
  r.v_delta = LinearInP{0, vab3};
  r.v_j = LinearInP{0, -vab3};
  // The inertia statement needs q not above p.
  if (q.p() == BigInt(f.p)) r.inertia_claim = InertiaClaim::Unknown;
  return r;
}

/// r_P <= 2 + 3 v_P(3) for P | 3, else 2 + 6 v_P(2).
inline long conductor_exponent_bound(const PrimeIdeal& P) {
  long v3 = P.valuation(BigRational(3));
  if (v3 > 0) return 2 + 3 * v3;
  return 2 + 6 * P.valuation(BigRational(2));
}

enum class DividesWhich { A, B };  // P | a or P | b

struct SymbolicJ {
  LinearInP v_j;
  long threshold = 0;  // negative for p > threshold, and prime to p unless the constant term is 0
};

inline long vP_or_zero(const PrimeIdeal& P, const AlgebraicNumber& x) {
  if (x.is_zero()) fail(ErrorKind::InvalidArgument, "valuation of zero coefficient");
  return P.valuation(x);
}

/// p > max{3 v_P(3) + v_P(ABC), |3 v_P(3) +- v_P(A/B)|}.
inline long t_s_threshold(const PrimeIdeal& P, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C) {
  long v3 = P.valuation(BigRational(3));
  long vA = vP_or_zero(P, A), vB = vP_or_zero(P, B), vC = vP_or_zero(P, C);
  long r = vA - vB;
  return std::max({3 * v3 + vA + vB + vC, std::labs(3 * v3 + r), std::labs(3 * v3 - r)});
}

/// v_P(j_E) for P | 3 dividing a (or b) with valuation v.
inline SymbolicJ vj_symbolic_at_3(const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C,
                                  const PrimeIdeal& P, DividesWhich which, long v) {
  long v3 = P.valuation(BigRational(3));
  if (v3 <= 0) fail(ErrorKind::PreconditionViolated, P.to_string() + " does not lie over 3");
  if (v <= 0) fail(ErrorKind::InvalidArgument, "v must be positive");
  long vA = vP_or_zero(P, A), vB = vP_or_zero(P, B);
  SymbolicJ out;
  if (which == DividesWhich::A) {
    out.v_j = LinearInP{3 * v3 + vB - vA, -v};
  } else {
    out.v_j = LinearInP{3 * (3 * v3 + vA - vB), -3 * v};
  }
  out.threshold = t_s_threshold(P, A, B, C);
  return out;
}

/// Forward clause: v_P(Delta) in {4, 10} gives inertia of size 3 or 6; otherwise no conclusion.
inline std::set<int> kraus_forward(long v_delta) {
  if (v_delta == 4 || v_delta == 10) return {3, 6};
  return {};
}

/// Backward clause: inertia of size 3 or 6 forces v_P(Delta) in {4, 6, 10, 12}, i.e. residues {0, 4, 6, 10} mod 12.
inline bool kraus_backward_admits(long v_delta) {
  long r = ((v_delta % 12) + 12) % 12;
  return r == 0 || r == 4 || r == 6 || r == 10;
}

/// Reduction at the prime P over 3 when 3 is inert, v_P(A) = 1, v_P(B) in {0, 2}.
inline ReductionVerdict classify_at_3_over_K(const FreyParams& f, const PrimeIdeal& P) {
  const Field& K = f.A.field();
  if (P.p() != 3 || !P.is_inert()) fail(ErrorKind::HypothesisViolated, "3 is not inert at " + P.to_string());
  long vA = P.valuation(f.A), vB = P.valuation(f.B), vC = P.valuation(f.C);
  if (vA != 1) fail(ErrorKind::HypothesisViolated, "v_P(A) = " + std::to_string(vA) + ", need 1");
  if (vB != 0 && vB != 2) fail(ErrorKind::HypothesisViolated, "v_P(B) = " + std::to_string(vB) + ", need 0 or 2");
  if (vC != 0) fail(ErrorKind::HypothesisViolated, "v_P(C) = " + std::to_string(vC) + ", need 0");
  long bound = t_s_threshold(P, f.A, f.B, f.C);
  if (f.p <= bound)
    fail(ErrorKind::PreconditionViolated, "p = " + std::to_string(f.p) + " must exceed " + std::to_string(bound));
  WeierstrassInvariants w = frey_model(f);
  long va = P.valuation(f.a), vb = P.valuation(f.b);
  ReductionVerdict r{P, ReductionKind::PotentiallyGood, InertiaClaim::In3Or6, LinearInP{}, LinearInP{}};
  if (va > 0 || vb > 0) {
    if (va > 0 && vb > 0) fail(ErrorKind::PreconditionViolated, "P divides both a and b");
    auto sj = va > 0 ? vj_symbolic_at_3(f.A, f.B, f.C, P, DividesWhich::A, va)
                     : vj_symbolic_at_3(f.A, f.B, f.C, P, DividesWhich::B, vb);
    r.kind = ReductionKind::PotentiallyMultiplicative;
    r.inertia_claim = InertiaClaim::PDivides;
    r.v_j = sj.v_j;
    r.v_delta = LinearInP{3 + vA + 3 * vB, va > 0 ? va : 3 * vb};
    if (r.v_j.at(f.p) != P.valuation(w.j)) fail(ErrorKind::InternalInconsistency, "symbolic v_P(j) disagrees with the model");
    return r;
  }
  r.v_delta = LinearInP{3 + vA + 3 * vB, 0};
  if (P.valuation(w.delta) != r.v_delta.constant) fail(ErrorKind::InternalInconsistency, "v_P(Delta) disagrees with the model");
  if (kraus_forward(r.v_delta.constant).empty()) fail(ErrorKind::InternalInconsistency, "v_P(Delta) outside {4, 10}");
  r.v_j = LinearInP{P.valuation(w.j), 0};
  (void)K;
  return r;
}

enum class MuCase { Low, Middle, High, Outside };

inline std::string to_string(MuCase c) {
  switch (c) {
    case MuCase::Low: return "0 <= v(mu) <= v(3)";
    case MuCase::Middle: return "v(3) < v(mu) <= 3v(3)";
    case MuCase::High: return "3v(3) < v(mu) <= 6v(3)";
    case MuCase::Outside: return "outside [0, 6v(3)]";
  }
  return "?";
}

struct JPrimeValuation {
  long v_j = 0;
  long residue_mod_3 = 0;
  MuCase mu_case = MuCase::Outside;
  bool nonnegative_claimed = false;  // true when the case analysis guarantees v_j >= 0
};

/// v_P(j') for j' = (mu + 27)(mu + 3)^3 / mu.
inline JPrimeValuation jprime_valuation_from_mu(const AlgebraicNumber& mu, const PrimeIdeal& P) {
  const Field& K = mu.field();
  AlgebraicNumber m27 = mu + AlgebraicNumber(K, 27), m3 = mu + AlgebraicNumber(K, 3);
  if (mu.is_zero()) fail(ErrorKind::DivisionByZero, "mu = 0");
  if (m27.is_zero()) fail(ErrorKind::DivisionByZero, "mu = -27");
  if (m3.is_zero()) fail(ErrorKind::DivisionByZero, "mu = -3");
  JPrimeValuation out;
  long vm = P.valuation(mu);
  out.v_j = P.valuation(m27) + 3 * P.valuation(m3) - vm;
  out.residue_mod_3 = ((out.v_j % 3) + 3) % 3;
  long v3 = P.valuation(BigRational(3));
  if (vm >= 0 && vm <= v3) {
    out.mu_case = MuCase::Low;
  } else if (vm > v3 && vm <= 3 * v3) {
    out.mu_case = MuCase::Middle;
  } else if (vm > 3 * v3 && vm <= 6 * v3) {
    out.mu_case = MuCase::High;
  }
  out.nonnegative_claimed = out.mu_case != MuCase::Outside;
  if (out.nonnegative_claimed && out.v_j < 0)
    fail(ErrorKind::InternalInconsistency, "v_P(j') < 0 inside the case analysis");
  return out;
}

}  // namespace fermat3
