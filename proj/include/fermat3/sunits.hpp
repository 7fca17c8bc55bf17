#pragma once

// S-unit groups of quadratic fields and bounded solving of alpha + beta = gamma^3
// up to scaling (alpha, beta, gamma) -> (e^3 alpha, e^3 beta, e gamma).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/classgroup.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/ideal.hpp"
#include "fermat3/units.hpp"

namespace fermat3 {

inline constexpr std::int64_t kSolverWorkCap = 20000000;

using ExponentVector = std::vector<long>;

/// O_S^* = <zeta> x <eps> x <pi_1> x ... x <pi_s>.
/// pi_k generates P_k^{m_k} * prod_{i<k} P_i^{f_ik}, where m_k is the least exponent with
/// [P_k]^{m_k} in <[P_1], ..., [P_{k-1}]>. The valuation matrix is lower triangular.
class SUnitBasis {
 public:
  SUnitBasis(const Field& K, std::vector<PrimeIdeal> S) : K_(K), S_(std::move(S)), torsion_(K, -1) {
    std::sort(S_.begin(), S_.end());
    S_.erase(std::unique(S_.begin(), S_.end()), S_.end());
    for (const auto& P : S_) {
      if (!(P.field() == K)) fail(ErrorKind::InvalidArgument, "prime of another field in S");
    }
    if (K.is_imaginary() && K.d() == -1) {
      torsion_ = AlgebraicNumber::omega(K);
      w_ = 4;
    } else if (K.is_imaginary() && K.d() == -3) {
      torsion_ = AlgebraicNumber::omega(K);
      w_ = 6;
    }
    if (K.is_real() && !K.is_rational()) {
      eps_ = ::fermat3::fundamental_unit(K);
      free_.push_back(*eps_);
    }
    build_relations();
  }

  const Field& field() const { return K_; }
  const std::vector<PrimeIdeal>& primes() const { return S_; }
  const AlgebraicNumber& torsion() const { return torsion_; }
  int torsion_order() const { return w_; }
  const std::optional<AlgebraicNumber>& fundamental_unit() const { return eps_; }
  /// Free generators: eps (real quadratic K), then pi_1, ..., pi_s.
  const std::vector<AlgebraicNumber>& free_generators() const { return free_; }
  int rank() const { return static_cast<int>(free_.size()); }
  /// Length of an exponent vector: torsion coordinate plus the free rank.
  int length() const { return 1 + rank(); }
  const std::vector<long>& relation_diagonal() const { return diag_; }
  const std::vector<std::vector<long>>& relation_matrix() const { return rel_; }

  std::vector<AlgebraicNumber> generators() const {
    std::vector<AlgebraicNumber> g{torsion_};
    g.insert(g.end(), free_.begin(), free_.end());
    return g;
  }

  AlgebraicNumber element(const ExponentVector& e) const {
    if (static_cast<int>(e.size()) != length()) fail(ErrorKind::InvalidArgument, "exponent vector of wrong length");
    AlgebraicNumber x = torsion_.pow(mod(BigInt(e[0]), BigInt(w_)).get_si());
    for (int i = 0; i < rank(); ++i) x = x * power(i, e[1 + i]);
    return x;
  }

  /// Exponent vector of x, or nullopt when x is not an S-unit.
  std::optional<ExponentVector> exponents(const AlgebraicNumber& x) const {
    if (x.is_zero()) return std::nullopt;
    for (const auto& P : prime_support(x)) {
      if (std::find(S_.begin(), S_.end(), P) == S_.end()) return std::nullopt;
    }
    const int s = static_cast<int>(S_.size());
    const int off = eps_ ? 1 : 0;
    ExponentVector e(length(), 0);
    std::vector<long> v(s);
    for (int i = 0; i < s; ++i) v[i] = S_[i].valuation(x);
    AlgebraicNumber u = x;
    for (int k = s - 1; k >= 0; --k) {
      if (v[k] % diag_[k] != 0) fail(ErrorKind::InternalInconsistency, "valuation vector outside the S-unit lattice");
      long n = v[k] / diag_[k];
      e[1 + off + k] = n;
      for (int i = 0; i <= k; ++i) v[i] -= n * rel_[k][i];
      if (n) u = u / power(off + k, n);
    }
    if (!u.is_unit()) fail(ErrorKind::InternalInconsistency, "S-unit remainder is not a unit");
    if (eps_) {
      long j = 0;
      AlgebraicNumber one(K_, 1);
      auto above_one = [&](const AlgebraicNumber& y) {
        AlgebraicNumber a = y.real_sign() < 0 ? -y : y;
        return compare_real(a, one);
      };
      while (above_one(u) > 0) {
        u = u / *eps_;
        ++j;
      }
      while (above_one(u) < 0) {
        u = u * *eps_;
        --j;
      }
      e[1] = j;
    }
    AlgebraicNumber z(K_, 1);
    for (int t = 0; t < w_; ++t) {
      if (z == u) {
        e[0] = t;
        return e;
      }
      z = z * torsion_;
    }
    fail(ErrorKind::InternalInconsistency, "unit " + u.to_string() + " is not a root of unity times a power of eps");
  }

  std::vector<std::string> describe() const {
    std::vector<std::string> out{"torsion " + torsion_.to_string() + " (order " + std::to_string(w_) + ")"};
    int off = eps_ ? 1 : 0;
    if (eps_) out.push_back("eps = " + eps_->to_string());
    for (std::size_t k = 0; k < S_.size(); ++k) {
      out.push_back("pi_" + std::to_string(k + 1) + " = " + free_[off + k].to_string() + " at " + S_[k].to_string() +
                    " (exponent " + std::to_string(diag_[k]) + ")");
    }
    return out;
  }

 private:
  AlgebraicNumber power(int i, long k) const {
    auto key = std::make_pair(i, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    AlgebraicNumber r = free_[i].pow(k);
    if (cache_.size() < 4096) cache_.emplace(key, r);
    return r;
  }

  void build_relations() {
    if (S_.empty()) return;
    if (K_.is_rational()) {
      for (std::size_t k = 0; k < S_.size(); ++k) {
        free_.push_back(AlgebraicNumber(K_, BigRational(S_[k].p())));
        diag_.push_back(1);
        std::vector<long> row(S_.size(), 0);
        row[k] = 1;
        rel_.push_back(row);
      }
      return;
    }
    ClassGroup cl(K_);
    const auto& G = cl.group();
    std::vector<Form> classes;
    for (const auto& P : S_) classes.push_back(cl.class_of(P.ideal()));
    for (std::size_t k = 0; k < S_.size(); ++k) {
      // Reachable classes of <[P_1..P_{k-1}]> with non-negative exponents.
      std::map<Form, std::vector<long>> reach{{G.identity(), std::vector<long>(k, 0)}};
      std::vector<Form> frontier{G.identity()};
      while (!frontier.empty()) {
        std::vector<Form> next;
        for (const auto& x : frontier) {
          for (std::size_t i = 0; i < k; ++i) {
            Form y = G.multiply(x, classes[i]);
            if (reach.count(y)) continue;
            auto ex = reach[x];
            ++ex[i];
            reach[y] = ex;
            next.push_back(y);
          }
        }
        frontier = std::move(next);
      }
      long m = 1;
      Form pk = classes[k];
      while (true) {
        Form inv = G.inverse(pk);
        if (reach.count(inv)) {
          Ideal J = S_[k].ideal().pow(m);
          const auto& ex = reach[inv];
          for (std::size_t i = 0; i < k; ++i) J = J * S_[i].ideal().pow(ex[i]);
          auto g = is_principal(J);
          if (!g) fail(ErrorKind::InternalInconsistency, "relation ideal " + J.to_string() + " is not principal");
          free_.push_back(*g);
          diag_.push_back(m);
          std::vector<long> row(S_.size(), 0);
          for (std::size_t i = 0; i < k; ++i) row[i] = ex[i];
          row[k] = m;
          rel_.push_back(row);
          break;
        }
        pk = G.multiply(pk, classes[k]);
        ++m;
        if (m > G.size()) fail(ErrorKind::InternalInconsistency, "class order exceeds class number");
      }
    }
  }

  Field K_;
  std::vector<PrimeIdeal> S_;
  AlgebraicNumber torsion_;
  int w_ = 2;
  std::optional<AlgebraicNumber> eps_;
  std::vector<AlgebraicNumber> free_;
  std::vector<long> diag_;
  std::vector<std::vector<long>> rel_;
  mutable std::map<std::pair<int, long>, AlgebraicNumber> cache_;
};

inline SUnitBasis s_unit_basis(const Field& K, const std::vector<PrimeIdeal>& S) { return SUnitBasis(K, S); }

struct SUnitTriple {
  AlgebraicNumber alpha, beta, gamma;
  ExponentVector alpha_exponents, beta_exponents;

  friend bool operator==(const SUnitTriple& x, const SUnitTriple& y) {
    return x.alpha_exponents == y.alpha_exponents && x.beta_exponents == y.beta_exponents && x.gamma == y.gamma;
  }
  friend bool operator<(const SUnitTriple& x, const SUnitTriple& y) {
    if (x.alpha_exponents != y.alpha_exponents) return x.alpha_exponents < y.alpha_exponents;
    return x.beta_exponents < y.beta_exponents;
  }
};

struct CubeSumSolutions {
  std::vector<SUnitTriple> classes;
  long bound = 0;
  bool bounded_search = true;  // no completeness claim beyond the exponent box
};

namespace detail {

inline long floor_div_l(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long mod_l(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Torsion shift t with 3t = target (mod w), or nullopt.
inline std::optional<long> torsion_cube_shift(long target, int w) {
  for (long t = 0; t < w; ++t) {
    if (mod_l(3 * t - target, w) == 0) return t;
  }
  return std::nullopt;
}

}  // namespace detail

/// Representative of the ~-class: alpha's free exponents in {0, 1, 2} and its torsion
/// exponent reduced as far as cubes of roots of unity allow.
inline SUnitTriple canonical(const SUnitBasis& basis, const SUnitTriple& t) {
  const int w = basis.torsion_order();
  ExponentVector e(basis.length(), 0);
  for (int i = 1; i < basis.length(); ++i) e[i] = detail::floor_div_l(t.alpha_exponents[i], 3);
  long ta = detail::mod_l(t.alpha_exponents[0], w);
  long target = w % 3 == 0 ? ta - ta % 3 : ta;
  e[0] = *detail::torsion_cube_shift(target, w);
  SUnitTriple out = t;
  for (int i = 1; i < basis.length(); ++i) {
    out.alpha_exponents[i] -= 3 * e[i];
    out.beta_exponents[i] -= 3 * e[i];
  }
  out.alpha_exponents[0] = detail::mod_l(t.alpha_exponents[0] - 3 * e[0], w);
  out.beta_exponents[0] = detail::mod_l(t.beta_exponents[0] - 3 * e[0], w);
  AlgebraicNumber scale = basis.element(e);
  out.alpha = basis.element(out.alpha_exponents);
  out.beta = basis.element(out.beta_exponents);
  if (w % 3 == 0) {
    // Cube roots of unity fix alpha and beta; pick gamma deterministically.
    out.gamma = cube_roots(out.alpha + out.beta).front();
  } else {
    out.gamma = t.gamma / scale;
  }
  return out;
}

/// All ExponentVectors with free coordinates in [lo_i, hi_i] and every torsion value.
template <class F>
inline void for_each_exponent(const SUnitBasis& basis, const std::vector<long>& lo, const std::vector<long>& hi, F&& f) {
  const int n = basis.length();
  ExponentVector e(n, 0);
  for (int i = 1; i < n; ++i) {
    if (lo[i] > hi[i]) return;
    e[i] = lo[i];
  }
  while (true) {
    for (long t = 0; t < basis.torsion_order(); ++t) {
      e[0] = t;
      f(e);
    }
    int i = 1;
    while (i < n) {
      if (e[i] < hi[i]) {
        ++e[i];
        break;
      }
      e[i] = lo[i];
      ++i;
    }
    if (i >= n) return;
  }
}

inline std::optional<SUnitTriple> make_triple(const SUnitBasis& basis, const ExponentVector& a, const ExponentVector& b) {
  AlgebraicNumber alpha = basis.element(a), beta = basis.element(b);
  auto roots = cube_roots(alpha + beta);
  if (roots.empty()) return std::nullopt;
  return SUnitTriple{alpha, beta, roots.front(), a, b};
}

/// Classes of solutions with both exponent vectors in the box |e_i| <= box[i] (free
/// coordinates i >= 1; box[0] is ignored). Enumerates canonical alpha against the beta
/// window its orbit allows.
inline CubeSumSolutions solve_cube_sum(const SUnitBasis& basis, const std::vector<long>& box,
                                       std::int64_t work_cap = kSolverWorkCap) {
  const int n = basis.length();
  if (static_cast<int>(box.size()) != n) fail(ErrorKind::InvalidArgument, "solver box of wrong length");
  long bound = 0;
  for (int i = 1; i < n; ++i) {
    if (box[i] < 1) fail(ErrorKind::InvalidArgument, "exponent bound must be >= 1");
    bound = std::max(bound, box[i]);
  }
  const int w = basis.torsion_order();
  std::vector<SUnitTriple> found;
  std::int64_t work = 0;
  // Canonical alpha: free exponents r_i in {0,1,2}; torsion in {0} or {0,1,2} when w = 6.
  std::vector<long> torsions = w % 3 == 0 ? std::vector<long>{0, 1, 2} : std::vector<long>{0};
  std::vector<ExponentVector> alphas;
  {
    ExponentVector cur(n, 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        for (long t : torsions) {
          cur[0] = t;
          alphas.push_back(cur);
        }
        return;
      }
      for (long v = 0; v <= 2; ++v) {
        cur[i] = v;
        rec(i + 1);
      }
    };
    rec(1);
  }
  for (const auto& a : alphas) {
    // Shifts e_i keeping r_i + 3 e_i inside the box.
    std::vector<long> emin(n, 0), emax(n, 0), blo(n, 0), bhi(n, 0);
    for (int i = 1; i < n; ++i) {
      emin[i] = detail::floor_div_l(-box[i] - a[i] + 2, 3);
      emax[i] = detail::floor_div_l(box[i] - a[i], 3);
      blo[i] = -box[i] - 3 * emax[i];
      bhi[i] = box[i] - 3 * emin[i];
    }
    for_each_exponent(basis, blo, bhi, [&](const ExponentVector& b) {
      // Some common shift must bring b into the box as well.
      for (int i = 1; i < n; ++i) {
        long lo = std::max(emin[i], -detail::floor_div_l(b[i] + box[i], 3));
        long hi = std::min(emax[i], detail::floor_div_l(box[i] - b[i], 3));
        if (lo > hi) return;
      }
      if (++work > work_cap) fail(ErrorKind::LimitExceeded, "cube-sum solver exceeded work cap " + std::to_string(work_cap));
      if (auto t = make_triple(basis, a, b)) found.push_back(canonical(basis, *t));
    });
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return {found, bound, true};
}

inline CubeSumSolutions solve_cube_sum(const SUnitBasis& basis, long bound, std::int64_t work_cap = kSolverWorkCap) {
  return solve_cube_sum(basis, std::vector<long>(basis.length(), bound), work_cap);
}

/// Box with `bound` on eps and on the primes of `core`, and `extra_bound` on the other primes.
inline std::vector<long> solver_box(const SUnitBasis& basis, const std::vector<PrimeIdeal>& core, long bound, long extra_bound) {
  std::vector<long> box(basis.length(), bound);
  const int off = basis.fundamental_unit() ? 2 : 1;
  for (std::size_t k = 0; k < basis.primes().size(); ++k) {
    const auto& P = basis.primes()[k];
    if (std::find(core.begin(), core.end(), P) == core.end()) box[off + k] = extra_bound;
  }
  return box;
}

struct AlphaPlusOne {
  AlgebraicNumber alpha, gamma;
  ExponentVector alpha_exponents;
};

/// Solutions of alpha + 1 = gamma^3 with alpha in the exponent box and v_P(alpha) >= 0.
inline std::vector<AlphaPlusOne> solve_alpha_plus_one(const SUnitBasis& basis, long bound, const PrimeIdeal& P,
                                                      std::int64_t work_cap = kSolverWorkCap) {
  const int n = basis.length();
  std::vector<long> lo(n, -bound), hi(n, bound);
  std::vector<AlphaPlusOne> out;
  std::int64_t work = 0;
  AlgebraicNumber one(basis.field(), 1);
  for_each_exponent(basis, lo, hi, [&](const ExponentVector& a) {
    if (++work > work_cap) fail(ErrorKind::LimitExceeded, "alpha + 1 search exceeded work cap " + std::to_string(work_cap));
    AlgebraicNumber alpha = basis.element(a);
    if (P.valuation(alpha) < 0) return;
    auto roots = cube_roots(alpha + one);
    if (!roots.empty()) out.push_back({alpha, roots.front(), a});
  });
  std::sort(out.begin(), out.end(), [](const AlphaPlusOne& x, const AlphaPlusOne& y) { return x.alpha_exponents < y.alpha_exponents; });
  return out;
}

struct ConditionResult {
  bool holds = true;
  std::optional<SUnitTriple> witness;  // first failing class
  /// Per class, the prime that satisfied the inequality (empty string when none did).
  std::vector<std::string> satisfied_at;
};

inline long v_ratio(const PrimeIdeal& P, const SUnitTriple& t) { return P.valuation(t.alpha) - P.valuation(t.beta); }

inline long v3(const PrimeIdeal& P) { return P.valuation(BigRational(3)); }

/// Every class has some P in S_K with |v_P(alpha/beta)| <= 3 v_P(3).
inline ConditionResult check_condition_T1(const std::vector<SUnitTriple>& solutions, const std::vector<PrimeIdeal>& SK) {
  ConditionResult r;
  for (const auto& t : solutions) {
    std::string at;
    for (const auto& P : SK) {
      long v = v_ratio(P, t);
      if ((v < 0 ? -v : v) <= 3 * v3(P)) {
        at = P.to_string();
        break;
      }
    }
    r.satisfied_at.push_back(at);
    if (at.empty() && r.holds) {
      r.holds = false;
      r.witness = t;
    }
  }
  return r;
}

struct T2Result {
  bool holds = true;
  std::optional<AlphaPlusOne> witness;
};

/// Every solution of alpha + 1 = gamma^3 with v_P(alpha) >= 0 has v_P(alpha) <= 3 v_P(3).
inline T2Result check_condition_T2(const std::vector<AlphaPlusOne>& solutions, const PrimeIdeal& P) {
  T2Result r;
  for (const auto& s : solutions) {
    long v = P.valuation(s.alpha);
    if (v < 0) fail(ErrorKind::PreconditionViolated, "T2 input with v_P(alpha) < 0");
    if (v > 3 * v3(P)) {
      r.holds = false;
      r.witness = s;
      break;
    }
  }
  return r;
}

/// Every class has v_P(alpha/beta) = 2.
inline ConditionResult check_condition_K(const std::vector<SUnitTriple>& solutions, const PrimeIdeal& P) {
  ConditionResult r;
  for (const auto& t : solutions) {
    bool ok = v_ratio(P, t) == 2;
    r.satisfied_at.push_back(ok ? P.to_string() : "");
    if (!ok && r.holds) {
      r.holds = false;
      r.witness = t;
    }
  }
  return r;
}

struct ThetaCheck {
  bool integral = false;
  bool congruence = false;   // Delta_theta = -4 gamma^6 mod 3
  bool unit_at_3 = false;    // v_P(Delta_theta) = 0 at every P | 3
  bool integral_and_unramified = false;
  AlgebraicNumber c2, c1, c0;  // m(x) = x^3 + c2 x^2 + c1 x + c0
  AlgebraicNumber delta;       // the expansion of Delta_theta
  AlgebraicNumber generic_discriminant;
  bool generic_congruent_plus_4g6 = false;
};

inline bool divisible_by_3(const AlgebraicNumber& x) { return (x * make_rational(1, 3)).is_integral(); }

inline ThetaCheck theta_check(const Field& K, const AlgebraicNumber& beta, const AlgebraicNumber& gamma) {
  if (!gamma.is_integral() || !beta.is_integral())
    fail(ErrorKind::PreconditionViolated, "theta_check expects integral beta and gamma");
  auto S3 = primes_above(K, 3);
  for (const auto& P : S3) {
    if (P.valuation(gamma) != 0) fail(ErrorKind::PreconditionViolated, "v_P(gamma) != 0 at " + P.to_string());
  }
  AlgebraicNumber g3 = gamma.pow(3);
  AlgebraicNumber t = g3 - beta;
  if (!(t * make_rational(1, 27)).is_integral()) fail(ErrorKind::PreconditionViolated, "gamma^3 is not congruent to beta mod 27");
  ThetaCheck r{false, false, false, false, AlgebraicNumber(K), AlgebraicNumber(K), AlgebraicNumber(K), AlgebraicNumber(K), AlgebraicNumber(K), false};
  r.c2 = gamma * t * make_rational(1, 3);
  r.c1 = -(gamma * gamma);
  r.c0 = -(t * t) * make_rational(1, 27);
  r.integral = r.c2.is_integral() && r.c1.is_integral() && r.c0.is_integral();
  AlgebraicNumber g6 = g3 * g3;
  r.delta = g3 * t.pow(3) * make_rational(-2, 243) + g3 * t.pow(5) * make_rational(-4, 19683) + g6 * t * t * make_rational(1, 9) -
            g6 * BigRational(4) - t.pow(4) * make_rational(1, 27);
  r.congruence = r.delta.is_integral() && divisible_by_3(r.delta + g6 * BigRational(4));
  r.unit_at_3 = true;
  for (const auto& P : S3) {
    if (P.valuation(r.delta) != 0) r.unit_at_3 = false;
  }
  r.integral_and_unramified = r.integral && r.congruence && r.unit_at_3;
  const auto &a = r.c2, &b = r.c1, &c = r.c0;
  r.generic_discriminant = a * a * b * b - b.pow(3) * BigRational(4) - a.pow(3) * c * BigRational(4) - c * c * BigRational(27) +
                           a * b * c * BigRational(18);
  r.generic_congruent_plus_4g6 = r.generic_discriminant.is_integral() && divisible_by_3(r.generic_discriminant - g6 * BigRational(4));
  return r;
}

}  // namespace fermat3
