#pragma once

// Hypothesis checkers for the asymptotic theorems and the local criteria. Each returns a
// Verdict: per-clause status, an explicit prime bound, and the ledger of inputs that are
// assumed rather than computed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/classgroup.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/frey.hpp"
#include "fermat3/ideal.hpp"
#include "fermat3/polynomial.hpp"
#include "fermat3/sunits.hpp"

namespace fermat3 {

enum class ClauseStatus { Pass, Fail, Assumed, Bounded, Inconclusive };
enum class Overall { Applies, DoesNotApply, AppliesModuloAssumptions, Inconclusive };

inline std::string to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::Pass: return "pass";
    case ClauseStatus::Fail: return "fail";
    case ClauseStatus::Assumed: return "assumed";
    case ClauseStatus::Bounded: return "bounded";
    case ClauseStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::string to_string(Overall o) {
  switch (o) {
    case Overall::Applies: return "applies";
    case Overall::DoesNotApply: return "does-not-apply";
    case Overall::AppliesModuloAssumptions: return "applies-modulo-assumptions";
    case Overall::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Clause {
  std::string name;
  ClauseStatus status;
  std::string detail;
};

struct Verdict {
  std::string theorem;
  std::vector<Clause> clauses;
  long explicit_p_bound = 0;
  std::vector<std::string> ledger;
  Overall overall = Overall::Applies;
  /// Failing S-unit class, when a solver clause failed.
  std::optional<SUnitTriple> witness;
  /// Per solver class, the prime at which its condition held ("" when none).
  std::vector<std::string> satisfied_at;

  void add(std::string name, ClauseStatus status, std::string detail) {
    clauses.push_back({std::move(name), status, std::move(detail)});
  }

  const Clause* clause(const std::string& name) const {
    for (const auto& c : clauses) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  void finalize() {
    bool any_fail = false, any_inconclusive = false, any_soft = !ledger.empty();
    for (const auto& c : clauses) {
      any_fail |= c.status == ClauseStatus::Fail;
      any_inconclusive |= c.status == ClauseStatus::Inconclusive;
      any_soft |= c.status == ClauseStatus::Assumed || c.status == ClauseStatus::Bounded;
    }
    if (any_fail) overall = Overall::DoesNotApply;
    else if (any_inconclusive) overall = Overall::Inconclusive;
    else if (any_soft) overall = Overall::AppliesModuloAssumptions;
    else overall = Overall::Applies;
  }

  bool accepted() const { return overall == Overall::Applies || overall == Overall::AppliesModuloAssumptions; }
};

struct SolverConfig {
  long bound = 4;
  /// Bound on the coordinates of primes outside S_K; defaults to `bound`.
  std::optional<long> extra_prime_bound;
  std::int64_t work_cap = kSolverWorkCap;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string primes_text(const std::vector<PrimeIdeal>& S) {
  std::vector<std::string> names;
  for (const auto& P : S) names.push_back(P.to_string());
  return "{" + join(names) + "}";
}

inline void check_coefficients(const Field& K, const std::vector<AlgebraicNumber>& xs) {
  for (const auto& x : xs) {
    if (!(x.field() == K)) fail(ErrorKind::InvalidArgument, "coefficient from another field");
    if (x.is_zero()) fail(ErrorKind::InvalidArgument, "coefficients must be nonzero");
    if (!x.is_integral()) fail(ErrorKind::InvalidArgument, x.to_string() + " is not in O_K");
  }
}

inline void require_totally_real(const Field& K) {
  if (K.is_imaginary()) fail(ErrorKind::InvalidArgument, K.spec() + " is not totally real");
}

inline std::vector<PrimeIdeal> s_prime(const Field& K, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C) {
  return primes_dividing(K, {AlgebraicNumber(K, 3), A, B, C});
}

inline void add_main_ledger(Verdict& v, long bound) {
  v.ledger.push_back("solver completeness at bound " + std::to_string(bound) + ": S-unit exponents searched only in the box |e_i| <= bound");
  v.ledger.push_back("V_{K,A,B,C} is ineffective: the conclusion holds only for p beyond it");
  v.ledger.push_back("modularity of the Frey curve for p beyond an ineffective constant");
  v.ledger.push_back("irreducibility of the mod-p representation for large p");
  v.ledger.push_back("level lowering to a Hilbert newform of parallel weight 2 at the reduced level");
}

inline void add_frey_ledger(Verdict& v) {
  v.ledger.push_back("modularity of the Frey curve for p beyond an ineffective constant");
  v.ledger.push_back("irreducibility of the mod-p representation for large p");
  v.ledger.push_back("level lowering to a Hilbert newform of parallel weight 2 at the reduced level");
}

struct KZeta3 {
  bool divisible;
  std::string detail;
};

inline KZeta3 kzeta3_divisibility(const Field& K) {
  if (K.is_rational()) return {false, "K(zeta3) = Q(sqrt -3), class number 1"};
  auto r = h3_divisibility_of_Kzeta3(K);
  return {r.divisible, r.reduction};
}

inline CubeSumSolutions run_solver(const SUnitBasis& basis, const std::vector<PrimeIdeal>& SK, const SolverConfig& cfg) {
  auto box = solver_box(basis, SK, cfg.bound, cfg.extra_prime_bound.value_or(cfg.bound));
  return solve_cube_sum(basis, box, cfg.work_cap);
}

inline std::string triple_text(const SUnitTriple& t) {
  return "(" + t.alpha.to_string() + ", " + t.beta.to_string() + ", " + t.gamma.to_string() + ")";
}

}  // namespace detail

/// max over P | 3 of {3v_P(3) + v_P(ABC), |3v_P(3) +- v_P(A/B)|, v_P(C)}, and [K:Q].
inline long explicit_p_bound(const Field& K, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C) {
  detail::check_coefficients(K, {A, B, C});
  long best = K.degree();
  for (const auto& P : primes_above(K, 3)) {
    best = std::max({best, t_s_threshold(P, A, B, C), P.valuation(C)});
  }
  return best;
}

/// Either C is a unit, or C = u q with u a unit and q a rational prime other than 3.
inline bool c_shape_ok(const AlgebraicNumber& C, std::string* why = nullptr) {
  if (C.is_unit()) {
    if (why) *why = "C is a unit";
    return true;
  }
  auto f = factor_integer(abs(BigInt(C.norm().get_num())));
  if (f.size() == 1 && f[0].first != 3 && f[0].second == C.field().degree()) {
    AlgebraicNumber u = C * make_rational(1, f[0].first);
    if (u.is_unit()) {
      if (why) *why = "C = u*" + f[0].first.get_str() + " with u = " + u.to_string();
      return true;
    }
  }
  if (why) *why = "C = " + C.to_string() + " is neither a unit nor a unit times a prime q != 3";
  return false;
}

/// x = u 3^r with u a unit and r >= 0.
inline bool unit_times_power_of_3(const AlgebraicNumber& x, long* r_out = nullptr) {
  if (x.is_zero() || !x.is_integral()) return false;
  BigInt n = abs(BigInt(x.norm().get_num()));
  long k = valuation(n, BigInt(3));
  if (n != pow(BigInt(3), static_cast<unsigned long>(k))) return false;
  const int deg = x.field().degree();
  if (k % deg != 0) return false;
  long r = k / deg;
  if (!(x * make_rational(1, pow(BigInt(3), static_cast<unsigned long>(r)))).is_unit()) return false;
  if (r_out) *r_out = r;
  return true;
}

/// No asymptotic solution in W_K.
inline Verdict check_theorem_WK(const Field& K, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C,
                                const SolverConfig& cfg = {}) {
  detail::require_totally_real(K);
  detail::check_coefficients(K, {A, B, C});
  Verdict v;
  v.theorem = "wk";
  auto SK = primes_above(K, 3);
  auto Sp = detail::s_prime(K, A, B, C);
  v.add("s-prime", ClauseStatus::Pass, "S_K = " + detail::primes_text(SK) + ", S' = " + detail::primes_text(Sp));

  auto cl = s_class_group(K, Sp);
  v.add("class-3-torsion", cl.has_3_torsion ? ClauseStatus::Fail : ClauseStatus::Pass,
        "Cl_S'(K) has order " + std::to_string(cl.h()) + (cl.has_3_torsion ? ", 3-torsion present" : ", no 3-torsion"));

  SUnitBasis basis(K, Sp);
  auto sols = detail::run_solver(basis, SK, cfg);
  auto t1 = check_condition_T1(sols.classes, SK);
  v.satisfied_at = t1.satisfied_at;
  if (t1.holds) {
    v.add("sunit-T1", ClauseStatus::Bounded,
          std::to_string(sols.classes.size()) + " classes found at bound " + std::to_string(sols.bound) +
              ", each with |v_P(alpha/beta)| <= 3v_P(3) at some P | 3");
  } else {
    v.witness = t1.witness;
    v.add("sunit-T1", ClauseStatus::Fail, "class " + detail::triple_text(*t1.witness) + " violates |v_P(alpha/beta)| <= 3v_P(3) at every P | 3");
  }
  v.explicit_p_bound = explicit_p_bound(K, A, B, C);
  v.add("p-bound", ClauseStatus::Pass, "p > " + std::to_string(v.explicit_p_bound) + " (computable part of the bound)");
  detail::add_main_ledger(v, sols.bound);
  v.finalize();
  return v;
}

/// The variant with S' = S_K principal and 3 inert or totally ramified.
inline Verdict check_prop_main2(const Field& K, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C,
                                const SolverConfig& cfg = {}) {
  detail::require_totally_real(K);
  detail::check_coefficients(K, {A, B, C});
  Verdict v;
  v.theorem = "prop2";
  auto split = splitting_type(K, 3);
  auto SK = split.primes;
  auto Sp = detail::s_prime(K, A, B, C);
  v.add("s-prime", Sp == SK ? ClauseStatus::Pass : ClauseStatus::Fail,
        "S_K = " + detail::primes_text(SK) + ", S' = " + detail::primes_text(Sp));

  bool all_principal = true;
  std::vector<std::string> gens;
  for (const auto& P : SK) {
    auto g = is_principal(P.ideal());
    if (g) gens.push_back(P.to_string() + " = (" + g->to_string() + ")");
    else {
      all_principal = false;
      gens.push_back(P.to_string() + " not principal");
    }
  }
  v.add("principality", all_principal ? ClauseStatus::Pass : ClauseStatus::Fail, detail::join(gens));

  std::int64_t h = class_number(K);
  v.add("class-3-torsion", h % 3 == 0 ? ClauseStatus::Fail : ClauseStatus::Pass, "h_K = " + std::to_string(h));
  auto kz = detail::kzeta3_divisibility(K);
  v.add("h-kzeta3", kz.divisible ? ClauseStatus::Fail : ClauseStatus::Pass, kz.detail);

  bool inert = split.kind == SplittingKind::Inert;
  bool totally_ramified = split.kind == SplittingKind::Ramified && split.primes.size() == 1;
  v.add("three-splitting", inert || totally_ramified ? ClauseStatus::Pass : ClauseStatus::Fail, "3 is " + to_string(split.kind) + " in " + K.spec());

  SUnitBasis basis(K, SK);
  bool t2_ok = true;
  std::size_t count = 0;
  for (const auto& P : SK) {
    auto sols = solve_alpha_plus_one(basis, cfg.bound, P, cfg.work_cap);
    count += sols.size();
    auto r = check_condition_T2(sols, P);
    if (!r.holds) {
      t2_ok = false;
      v.add("sunit-T2", ClauseStatus::Fail,
            "alpha = " + r.witness->alpha.to_string() + " has v_P(alpha) = " + std::to_string(P.valuation(r.witness->alpha)) +
                " > 3v_P(3) at " + P.to_string());
      break;
    }
  }
  if (t2_ok)
    v.add("sunit-T2", ClauseStatus::Bounded,
          std::to_string(count) + " solutions of alpha + 1 = gamma^3 at bound " + std::to_string(cfg.bound) + ", all with v_P(alpha) <= 3v_P(3)");
  v.explicit_p_bound = explicit_p_bound(K, A, B, C);
  v.add("p-bound", ClauseStatus::Pass, "p > " + std::to_string(v.explicit_p_bound) + " (computable part of the bound)");
  detail::add_main_ledger(v, cfg.bound);
  v.finalize();
  return v;
}

/// No asymptotic solution in O_K^3 minus the exceptional set.
inline Verdict check_theorem_K(const Field& K, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C,
                               const SolverConfig& cfg = {}) {
  detail::require_totally_real(K);
  detail::check_coefficients(K, {A, B, C});
  Verdict v;
  v.theorem = "overk";
  if (K.degree() % 2 == 1) v.add("es", ClauseStatus::Pass, "[K:Q] = " + std::to_string(K.degree()) + " is odd");
  else v.add("es", ClauseStatus::Assumed, "[K:Q] = 2 is even; the Eichler-Shimura conjecture is assumed");

  auto split = splitting_type(K, 3);
  const PrimeIdeal& P = split.primes.front();
  v.add("three-splitting", split.kind == SplittingKind::Inert ? ClauseStatus::Pass : ClauseStatus::Fail,
        "3 is " + to_string(split.kind) + " in " + K.spec());

  long vA = P.valuation(A), vB = P.valuation(B);
  std::string cwhy;
  bool c_ok = c_shape_ok(C, &cwhy);
  bool shape = vA == 1 && (vB == 0 || vB == 2) && c_ok;
  v.add("coeff-shape", shape ? ClauseStatus::Pass : ClauseStatus::Fail,
        "v_P(A) = " + std::to_string(vA) + ", v_P(B) = " + std::to_string(vB) + "; " + cwhy);

  auto SK = split.primes;
  auto Sp = detail::s_prime(K, A, B, C);
  auto cl = s_class_group(K, Sp);
  v.add("class-3-torsion", cl.has_3_torsion ? ClauseStatus::Fail : ClauseStatus::Pass,
        "Cl_S'(K) has order " + std::to_string(cl.h()) + ", S' = " + detail::primes_text(Sp));

  SUnitBasis basis(K, Sp);
  auto sols = detail::run_solver(basis, SK, cfg);
  auto ck = check_condition_K(sols.classes, P);
  v.satisfied_at = ck.satisfied_at;
  if (ck.holds) {
    v.add("sunit-K", ClauseStatus::Bounded,
          std::to_string(sols.classes.size()) + " classes found at bound " + std::to_string(sols.bound) + ", all with v_P(alpha/beta) = 2");
  } else {
    v.witness = ck.witness;
    v.add("sunit-K", ClauseStatus::Fail,
          "class " + detail::triple_text(*ck.witness) + " has v_P(alpha/beta) = " + std::to_string(v_ratio(P, *ck.witness)) + " != 2");
  }

  bool rational = A.is_rational() && B.is_rational() && C.is_rational();
  v.add("exceptional-set", ClauseStatus::Pass,
        rational ? "A, B, C are rational integers: the exceptional set is empty"
                 : "excluded solutions (u, +-u, c) with u in O_K^*");
  v.explicit_p_bound = explicit_p_bound(K, A, B, C);
  v.add("p-bound", ClauseStatus::Pass, "p > " + std::to_string(v.explicit_p_bound) + " (computable part of the bound)");
  detail::add_main_ledger(v, sols.bound);
  v.finalize();
  return v;
}

/// Local criterion for real quadratic K = Q(sqrt d).
inline Verdict check_local_quadratic(std::int64_t d, const AlgebraicNumber& A, const AlgebraicNumber& B, const AlgebraicNumber& C) {
  if (d < 2) fail(ErrorKind::InvalidArgument, "local quadratic criterion needs d >= 2");
  Field K = Field::quadratic(d);
  detail::check_coefficients(K, {A, B, C});
  Verdict v;
  v.theorem = "local-quad";
  long r = ((d % 3) + 3) % 3;
  v.add("three-splitting", r == 2 ? ClauseStatus::Pass : ClauseStatus::Fail, "d = " + std::to_string(d) + " = " + std::to_string(r) + " mod 3");
  std::int64_t h = class_number(K);
  v.add("class-3-torsion", h % 3 == 0 ? ClauseStatus::Fail : ClauseStatus::Pass, "h_K = " + std::to_string(h));
  auto kz = detail::kzeta3_divisibility(K);
  v.add("h-kzeta3", kz.divisible ? ClauseStatus::Fail : ClauseStatus::Pass, kz.detail);
  std::vector<std::string> parts;
  bool shape = true;
  const char* names[] = {"A", "B", "C"};
  int i = 0;
  for (const auto* x : {&A, &B, &C}) {
    long e = 0;
    bool ok = unit_times_power_of_3(*x, &e);
    shape &= ok;
    parts.push_back(std::string(names[i++]) + (ok ? " = u*3^" + std::to_string(e) : " not of the form u*3^r"));
  }
  v.add("coeff-shape", shape ? ClauseStatus::Pass : ClauseStatus::Fail, detail::join(parts));
  v.explicit_p_bound = explicit_p_bound(K, A, B, C);
  v.add("p-bound", ClauseStatus::Pass, "p > " + std::to_string(v.explicit_p_bound) + " (computable part of the bound)");
  v.ledger.push_back("V_{K,A,B,C} is ineffective: the conclusion holds only for p beyond it");
  detail::add_frey_ledger(v);
  v.finalize();
  return v;
}

// --- polynomials over Q, for the odd-degree criterion ---

namespace detail {

using QPoly = std::vector<BigRational>;

inline void qtrim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline QPoly to_qpoly(const IntPolynomial& f) {
  QPoly out;
  for (const auto& c : f.coefficients()) out.emplace_back(c);
  return out;
}

inline QPoly qrem(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    BigRational k = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= k * b[i];
    qtrim(a);
  }
  return a;
}

inline QPoly qgcd(QPoly a, QPoly b) {
  qtrim(a);
  qtrim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline QPoly qderivative(const QPoly& f) {
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * BigRational(static_cast<long>(i)));
  qtrim(d);
  return d;
}

inline std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out{1};
  for (const auto& [p, e] : factor_integer(abs(n))) {
    std::size_t m = out.size();
    BigInt pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < m; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

inline bool has_integer_root(const IntPolynomial& f) {
  if (f.coefficient(0) == 0) return true;
  for (const auto& d : divisors(f.coefficient(0))) {
    for (const BigInt& x : {d, BigInt(-d)}) {
      if (f.evaluate(x) == 0) return true;
    }
  }
  return false;
}

inline constexpr std::int64_t kKroneckerCap = 2000000;

/// Kronecker's method: a monic integer factor of degree k takes values dividing f(x_i) at k
/// integer points, and is the interpolant of those values plus prod (x - x_i).
inline bool has_monic_factor_of_degree(const IntPolynomial& f, int k) {
  std::vector<BigInt> xs;
  std::vector<std::vector<BigInt>> choices;
  std::int64_t combos = 1;
  for (long t = 0; static_cast<int>(xs.size()) < k; t = t > 0 ? -t : 1 - t) {
    BigInt v = f.evaluate(BigInt(t));
    std::vector<BigInt> ds;
    for (const auto& d : divisors(v)) {
      ds.push_back(d);
      ds.push_back(-d);
    }
    combos *= static_cast<std::int64_t>(ds.size());
    if (combos > kKroneckerCap) fail(ErrorKind::LimitExceeded, "Kronecker factor search for " + f.to_string() + " exceeds its cap");
    xs.push_back(BigInt(t));
    choices.push_back(std::move(ds));
  }
  QPoly base{BigRational(1)};
  for (const auto& x : xs) {
    QPoly next(base.size() + 1, BigRational(0));
    for (std::size_t i = 0; i < base.size(); ++i) {
      next[i + 1] += base[i];
      next[i] -= base[i] * BigRational(x);
    }
    base = std::move(next);
  }
  // Lagrange basis polynomials for the points.
  std::vector<QPoly> lagrange;
  for (int i = 0; i < k; ++i) {
    QPoly l{BigRational(1)};
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      BigRational den(xs[i] - xs[j]);
      QPoly next(l.size() + 1, BigRational(0));
      for (std::size_t a = 0; a < l.size(); ++a) {
        next[a + 1] += l[a] / den;
        next[a] -= l[a] * BigRational(xs[j]) / den;
      }
      l = std::move(next);
    }
    lagrange.push_back(std::move(l));
  }
  QPoly target = to_qpoly(f);
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    QPoly g = base;
    for (int i = 0; i < k; ++i) {
      // base vanishes at x_i, so g(x_i) is the chosen divisor.
      BigRational r(choices[i][idx[i]]);
      for (std::size_t a = 0; a < lagrange[i].size(); ++a) g[a] += lagrange[i][a] * r;
    }
    bool integral = std::all_of(g.begin(), g.end(), [](const BigRational& c) { return c.get_den() == 1; });
    if (integral) {
      qtrim(g);
      if (static_cast<int>(g.size()) - 1 == k && qrem(target, g).empty()) return true;
    }
    int i = 0;
    while (i < k && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == k) return false;
  }
}

}  // namespace detail

/// Irreducibility of a monic integer polynomial over Q. Exact in degree <= 3; in higher degree
/// the degree patterns of f mod small primes narrow the factor degrees, then Kronecker's
/// method settles the rest (LimitExceeded when its search is too large).
inline bool is_irreducible_over_Q(const IntPolynomial& f) {
  if (!f.is_monic()) fail(ErrorKind::InvalidArgument, "expected a monic polynomial");
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  auto q = detail::to_qpoly(f);
  if (detail::qgcd(q, detail::qderivative(q)).size() > 1) return false;
  if (detail::has_integer_root(f)) return false;
  if (n <= 3) return true;
  // Possible degrees of a rational factor must be subset sums of every mod-p pattern.
  std::set<int> allowed;
  for (int k = 1; k < n; ++k) allowed.insert(k);
  int used = 0;
  for (unsigned long p = 2; p < 2000 && used < 60 && !allowed.empty(); ++p) {
    if (!is_prime(BigInt(p))) continue;
    auto fac = factor_mod_p(f, BigInt(p));
    bool squarefree = std::all_of(fac.begin(), fac.end(), [](const ModularFactor& m) { return m.multiplicity == 1; });
    if (!squarefree) continue;
    ++used;
    std::set<int> sums{0};
    for (const auto& m : fac) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + m.factor.degree());
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int k : allowed) {
      if (sums.count(k)) keep.insert(k);
    }
    allowed = std::move(keep);
  }
  // allowed is closed under k -> n - k, so the smaller half suffices.
  for (int k : allowed) {
    if (2 * k <= n && detail::has_monic_factor_of_degree(f, k)) return false;
  }
  return true;
}

/// Dedekind criterion: whether Z[theta] is maximal at q for theta a root of monic f.
inline bool dedekind_maximal_at(const IntPolynomial& f, const BigInt& q) {
  if (!f.is_monic()) fail(ErrorKind::InvalidArgument, "expected a monic polynomial");
  std::uint64_t p = to_u64(q);
  IntPolynomial g{1}, h{1};
  for (const auto& m : factor_mod_p(f, q)) {
    g = g * m.factor;
    for (int k = 1; k < m.multiplicity; ++k) h = h * m.factor;
  }
  IntPolynomial diff = f - g * h;
  std::vector<BigInt> F;
  for (const auto& c : diff.coefficients()) {
    if (mod(c, q) != 0) fail(ErrorKind::InternalInconsistency, "f - gh is not divisible by q");
    F.push_back(c / q);
  }
  fp::Poly Fb = fp::reduce(IntPolynomial(F), p);
  fp::Poly gb = fp::reduce(g, p), hb = fp::reduce(h, p);
  fp::Poly d = fp::gcd(fp::gcd(Fb, gb, p), hb, p);
  return fp::degree(d) == 0;
}

/// Whether q is totally ramified in Z[x]/(f): Some(true/false) when decided, nullopt when
/// the Dedekind criterion leaves q possibly dividing the index.
inline std::optional<bool> totally_ramified_at(const IntPolynomial& f, const BigInt& q, BigInt* root = nullptr) {
  auto fac = factor_mod_p(f, q);
  bool shape = fac.size() == 1 && fac[0].factor.degree() == 1 && fac[0].multiplicity == f.degree();
  if (shape && root) *root = mod(BigInt(-fac[0].factor.coefficient(0)), q);
  if (dedekind_maximal_at(f, q)) return shape;
  return std::nullopt;
}

struct OddDegreeInputs {
  IntPolynomial f;
  BigInt q;
  std::int64_t h_K = 1;
  std::int64_t h_Kzeta3 = 1;
  /// Whether A, B, C are each of the form u 3^r; from integer coefficients or user flags.
  bool A_shape = true, B_shape = true, C_shape = true;
  bool shapes_user_supplied = false;
};

/// Shape of a rational integer inside any O_K: m = u 3^r forces m = +-3^r.
inline bool integer_is_unit_times_power_of_3(const BigInt& m) {
  if (m == 0) return false;
  BigInt n = abs(m);
  while (mod(n, 3) == 0) n /= 3;
  return n == 1;
}

/// Local criterion for K of odd degree n defined by f.
inline Verdict check_local_odd_degree(const OddDegreeInputs& in) {
  const IntPolynomial& f = in.f;
  if (!f.is_monic()) fail(ErrorKind::InvalidArgument, "defining polynomial must be monic");
  const int n = f.degree();
  if (n % 2 == 0) fail(ErrorKind::EvenDegree, "degree " + std::to_string(n) + " is even");
  if (!is_irreducible_over_Q(f)) fail(ErrorKind::ReduciblePolynomial, f.to_string() + " is reducible over Q");
  if (!is_prime(in.q)) fail(ErrorKind::NotPrime, in.q.get_str() + " is not prime");
  Verdict v;
  v.theorem = "local-odd";
  v.add("degree", ClauseStatus::Pass, "n = " + std::to_string(n) + " is odd");
  BigInt g = gcd(BigInt(n), BigInt(in.q - 1));
  bool q_ok = in.q >= 5 && g == 1;
  v.add("q-coprime", q_ok ? ClauseStatus::Pass : ClauseStatus::Fail,
        "q = " + in.q.get_str() + ", gcd(n, q - 1) = " + g.get_str());

  auto tr = totally_ramified_at(f, in.q);
  if (!tr) v.add("q-ramification", ClauseStatus::Inconclusive, "q may divide the index of Z[theta]; factorization mod q is not conclusive");
  else v.add("q-ramification", *tr ? ClauseStatus::Pass : ClauseStatus::Fail,
             *tr ? "f = (x - r)^n mod q and Z[theta] is q-maximal" : "q is not totally ramified");

  // 3 inert, or 3 = P^n with P principal.
  auto fac3 = factor_mod_p(f, BigInt(3));
  bool maximal3 = dedekind_maximal_at(f, BigInt(3));
  if (!maximal3) {
    v.add("three-splitting", ClauseStatus::Inconclusive, "3 may divide the index of Z[theta]");
  } else if (fac3.size() == 1 && fac3[0].multiplicity == 1) {
    v.add("three-splitting", ClauseStatus::Pass, "3 is inert");
  } else if (fac3.size() == 1 && fac3[0].factor.degree() == 1 && fac3[0].multiplicity == n) {
    // P = (3, theta - r); theta - r generates P when |N(theta - r)| = |f(r)| = 3.
    BigInt r0 = mod(BigInt(-fac3[0].factor.coefficient(0)), 3);
    std::optional<BigInt> gen;
    for (long k = -3; k <= 3 && !gen; ++k) {
      BigInt r = r0 + 3 * k;
      if (abs(f.evaluate(r)) == 3) gen = r;
    }
    if (gen) v.add("three-splitting", ClauseStatus::Pass, "3 = P^n with P = (theta - " + gen->get_str() + ") principal");
    else v.add("three-splitting", ClauseStatus::Inconclusive, "3 = P^n; principality of P not decided");
  } else {
    v.add("three-splitting", ClauseStatus::Fail, "3 is neither inert nor totally ramified");
  }

  bool h_ok = in.h_K % 3 != 0;
  v.add("class-3-torsion", h_ok ? ClauseStatus::Assumed : ClauseStatus::Fail, "h_K = " + std::to_string(in.h_K) + " (user-supplied)");
  bool hz_ok = in.h_Kzeta3 % 3 != 0;
  v.add("h-kzeta3", hz_ok ? ClauseStatus::Assumed : ClauseStatus::Fail, "h_K(zeta3) = " + std::to_string(in.h_Kzeta3) + " (user-supplied)");
  bool shape = in.A_shape && in.B_shape && in.C_shape;
  ClauseStatus shape_status = !shape ? ClauseStatus::Fail : (in.shapes_user_supplied ? ClauseStatus::Assumed : ClauseStatus::Pass);
  v.add("coeff-shape", shape_status, std::string(shape ? "A, B, C of the form u*3^r" : "some coefficient is not of the form u*3^r") +
                                         (in.shapes_user_supplied ? " (user-supplied)" : ""));
  v.explicit_p_bound = n;
  v.add("p-bound", ClauseStatus::Pass, "p > " + std::to_string(n) + " (computable part of the bound)");
  v.ledger.push_back("class numbers h_K and h_K(zeta3) are user-supplied");
  v.ledger.push_back("V_{K,A,B,C} is ineffective: the conclusion holds only for p beyond it");
  detail::add_frey_ledger(v);
  v.finalize();
  return v;
}

}  // namespace fermat3
