#pragma once

// Class groups of quadratic fields from binary quadratic forms of the field
// discriminant, Cl_S quotients, principality by exhaustive search, and the
// 3-divisibility of the class number of K(zeta_3).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/group.hpp"
#include "fermat3/ideal.hpp"
#include "fermat3/units.hpp"

namespace fermat3 {

inline constexpr std::int64_t kClassGroupDiscLimit = 1000000;
inline constexpr std::int64_t kPrincipalSearchCap = 10000000;

/// a x^2 + b xy + c y^2.
struct Form {
  std::int64_t a = 0, b = 0, c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  std::string to_string() const {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
  }
  friend bool operator==(const Form&, const Form&) = default;
  friend bool operator<(const Form& x, const Form& y) { return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c); }
};

namespace forms {

inline std::int64_t isqrt64(std::int64_t n) {
  std::int64_t r = static_cast<std::int64_t>(isqrt(BigInt(static_cast<long>(n))).get_si());
  return r;
}

inline std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b), c < 0 ? -c : c);
}

/// Reduced positive definite form equivalent to f (a > 0, D < 0).
inline Form reduce_definite(Form f) {
  for (int guard = 0; guard < 100000; ++guard) {
    // Normalize b into (-a, a].
    std::int64_t two_a = 2 * f.a;
    std::int64_t k = floor_div64(f.a - f.b, two_a);
    if (k != 0) {
      std::int64_t nb = f.b + two_a * k;
      f.c = f.c + k * (f.b + f.a * k);  // f(x + ky, y)
      f.b = nb;
    }
    if (f.a > f.c) {
      f = Form{f.c, -f.b, f.a};
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
  fail(ErrorKind::InternalInconsistency, "definite reduction did not terminate");
}

inline bool is_reduced_indefinite(const Form& f, std::int64_t s) {
  std::int64_t aa = 2 * (f.a < 0 ? -f.a : f.a);
  return f.b > 0 && f.b <= s && s - f.b < aa && aa <= s + f.b;
}

/// One rho step: (a, b, c) -> (c, b', .) with b' = -b mod 2c normalized.
inline Form rho(const Form& f, std::int64_t D, std::int64_t s) {
  std::int64_t c = f.c;
  std::int64_t ac = c < 0 ? -c : c;
  std::int64_t two_c = 2 * ac;
  std::int64_t nb;
  if (ac > s) {
    // -b + 2ck in (-|c|, |c|].
    nb = -f.b + two_c * floor_div64(ac + f.b, two_c);
    if (nb <= -ac) nb += two_c;
  } else {
    // -b + 2ck in (s - 2|c|, s].
    nb = -f.b + two_c * floor_div64(s + f.b, two_c);
  }
  std::int64_t num = nb * nb - D;
  return Form{c, nb, num / (4 * c)};
}

inline Form reduce_indefinite(Form f, std::int64_t D, std::int64_t s) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (is_reduced_indefinite(f, s)) return f;
    f = rho(f, D, s);
  }
  fail(ErrorKind::InternalInconsistency, "indefinite reduction did not terminate");
}

/// Composition of primitive forms of the same discriminant (Dirichlet's united forms).
inline Form compose(const Form& f, const Form& g) {
  using i128 = __int128;
  const std::int64_t D = f.discriminant();
  std::int64_t beta = (f.b + g.b) / 2;
  // m = u a1 + v a2 + w beta.
  BigInt a1(static_cast<long>(f.a)), a2(static_cast<long>(g.a)), bt(static_cast<long>(beta));
  auto e1 = extended_gcd(a1, a2);
  auto e2 = extended_gcd(e1.g, bt);
  std::int64_t m = e2.g.get_si();
  i128 u = static_cast<i128>(BigInt(e2.s * e1.s).get_si()), v = static_cast<i128>(BigInt(e2.s * e1.t).get_si()),
       w = static_cast<i128>(e2.t.get_si());
  i128 A = static_cast<i128>(f.a) * g.a / (static_cast<i128>(m) * m);
  i128 num = u * f.a * g.b + v * g.a * f.b + w * ((static_cast<i128>(f.b) * g.b + D) / 2);
  if (num % m != 0) fail(ErrorKind::InternalInconsistency, "composition numerator not divisible");
  i128 B = num / m;
  i128 twoA = 2 * (A < 0 ? -A : A);
  B %= twoA;
  if (B < 0) B += twoA;
  i128 Cn = B * B - D;
  if (Cn % (4 * A) != 0) fail(ErrorKind::InternalInconsistency, "composition produced a non-integral form");
  return Form{static_cast<std::int64_t>(A), static_cast<std::int64_t>(B), static_cast<std::int64_t>(Cn / (4 * A))};
}

/// Primitive reduced forms of discriminant D.
inline std::vector<Form> reduced_forms(std::int64_t D) {
  std::vector<Form> out;
  if (D < 0) {
    std::int64_t amax = isqrt64(-D / 3);
    for (std::int64_t a = 1; a <= amax; ++a) {
      for (std::int64_t b = -a + 1; b <= a; ++b) {
        if (((b - D) & 1) != 0) continue;
        std::int64_t num = b * b - D;
        if (num % (4 * a)) continue;
        std::int64_t c = num / (4 * a);
        if (c < a) continue;
        if (a == c && b < 0) continue;
        if (gcd3(a, b, c) != 1) continue;
        out.push_back({a, b, c});
      }
    }
  } else {
    std::int64_t s = isqrt64(D);
    for (std::int64_t b = 1; b <= s; ++b) {
      if (((b - D) & 1) != 0) continue;
      std::int64_t ac = (b * b - D) / 4;  // negative
      for (std::int64_t aa = (s - b) / 2 + 1; 2 * aa <= s + b; ++aa) {
        if (ac % aa) continue;
        for (std::int64_t a : {aa, -aa}) {
          Form f{a, b, ac / a};
          if (gcd3(f.a, f.b, f.c) != 1) continue;
          if (is_reduced_indefinite(f, s)) out.push_back(f);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace forms

/// Elementary divisors d_1 | d_2 | ... with generator ideals.
struct ClassGroupData {
  std::vector<std::int64_t> divisors;
  std::vector<Ideal> generators;
  bool has_3_torsion = false;

  std::int64_t h() const {
    std::int64_t n = 1;
    for (auto d : divisors) n *= d;
    return n;
  }
};

/// Ideal class group of K with the map from ideals to classes.
class ClassGroup {
 public:
  explicit ClassGroup(const Field& K) : K_(K) {
    if (K.is_rational()) {
      D_ = 1;
      group_ = std::make_shared<FiniteAbelianGroup<Form>>(std::vector<Form>{Form{1, 1, 0}}, Form{1, 1, 0},
                                                         [](const Form& x, const Form&) { return x; });
      return;
    }
    D_ = to_i64(K.discriminant());
    if ((D_ < 0 ? -D_ : D_) > kClassGroupDiscLimit)
      fail(ErrorKind::LimitExceeded, "class group: |disc| = " + std::to_string(D_ < 0 ? -D_ : D_) + " exceeds " +
                                         std::to_string(kClassGroupDiscLimit));
    s_ = D_ > 0 ? forms::isqrt64(D_) : 0;
    std::vector<Form> reduced = forms::reduced_forms(D_);
    auto table = std::make_shared<std::map<Form, Form>>();
    std::vector<Form> reps;
    if (D_ < 0) {
      for (const auto& f : reduced) (*table)[f] = f;
      reps = reduced;
    } else {
      // Proper classes are rho-cycles; represent each by its least form.
      for (const auto& f : reduced) {
        if (table->count(f)) continue;
        std::vector<Form> cycle;
        Form g = f;
        do {
          cycle.push_back(g);
          g = forms::rho(g, D_, s_);
        } while (!(g == f) && cycle.size() <= reduced.size());
        Form m = *std::min_element(cycle.begin(), cycle.end());
        for (const auto& x : cycle) (*table)[x] = m;
        reps.push_back(m);
      }
    }
    table_ = table;
    std::int64_t D = D_, s = s_;
    auto canon = [table, D, s](const Form& f) {
      Form r = D < 0 ? forms::reduce_definite(f) : forms::reduce_indefinite(f, D, s);
      auto it = table->find(r);
      if (it == table->end()) fail(ErrorKind::InternalInconsistency, "reduced form " + r.to_string() + " not tabulated");
      return it->second;
    };
    Form principal{1, D_ & 1, ((D_ & 1) - D_) / 4};
    Form one = canon(principal);
    auto narrow = std::make_shared<FiniteAbelianGroup<Form>>(
        reps, one, [canon](const Form& x, const Form& y) { return canon(forms::compose(x, y)); }, canon);
    if (D_ > 0) {
      // Wide classes: divide out the class of the principal ideal (sqrt D).
      Form minus{-principal.a, principal.b, -principal.c};
      group_ = std::make_shared<FiniteAbelianGroup<Form>>(narrow->quotient({canon(minus)}));
    } else {
      group_ = narrow;
    }
  }

  const Field& field() const { return K_; }
  const FiniteAbelianGroup<Form>& group() const { return *group_; }
  std::int64_t h() const { return group_->size(); }

  /// Class of a nonzero integral ideal.
  Form class_of(const Ideal& I) const {
    if (K_.is_rational()) return group_->identity();
    // Primitive part aZ + (B0 + w)Z corresponds to the form (a, -2B0 - t, .).
    BigInt a = I.a() / I.c();
    BigInt B0 = I.b() / I.c();
    BigInt b = -2 * B0 - K_.omega_trace();
    BigInt num = b * b - BigInt(static_cast<long>(D_));
    if (mod(num, BigInt(4 * a)) != 0) fail(ErrorKind::InternalInconsistency, "ideal is not an O_K-module");
    Form f{to_i64(a), to_i64(b), to_i64(BigInt(num / (4 * a)))};
    return group_->project(f);
  }

  /// An ideal in the class of f.
  Ideal ideal_of(const Form& f) const {
    if (K_.is_rational()) return Ideal::unit(K_);
    Form g = f;
    for (int i = 0; g.a < 0 && i < 4; ++i) g = forms::rho(g, D_, s_);
    if (g.a <= 0) fail(ErrorKind::InternalInconsistency, "no positive representative for " + f.to_string());
    // [a, (-b + sqrt D)/2] = [a, (-b - t)/2 + w].
    BigInt B0 = BigInt(-g.b - K_.omega_trace().get_si()) / 2;
    return Ideal::generated_by(K_, {AlgebraicNumber(K_, BigRational(BigInt(static_cast<long>(g.a)))),
                                    AlgebraicNumber(K_, BigRational(B0), 1)});
  }

  ClassGroupData data() const { return data_of(*group_); }

  /// Cl(K) / <[P] : P in S>.
  ClassGroupData s_class_group(const std::vector<PrimeIdeal>& S) const {
    std::vector<Form> gens;
    for (const auto& P : S) gens.push_back(class_of(P.ideal()));
    return data_of(group_->quotient(gens));
  }

  /// Order of the class of I.
  std::int64_t order(const Ideal& I) const { return group_->order(class_of(I)); }

 private:
  ClassGroupData data_of(const FiniteAbelianGroup<Form>& G) const {
    ClassGroupData out;
    auto st = G.structure();
    out.divisors = st.invariants;
    for (const auto& g : st.generators) out.generators.push_back(ideal_of(g));
    for (auto d : out.divisors) {
      if (d % 3 == 0) out.has_3_torsion = true;
    }
    return out;
  }

  Field K_;
  std::int64_t D_ = 1, s_ = 0;
  std::shared_ptr<std::map<Form, Form>> table_;
  std::shared_ptr<FiniteAbelianGroup<Form>> group_;
};

inline ClassGroupData class_group(const Field& K) { return ClassGroup(K).data(); }

inline ClassGroupData s_class_group(const Field& K, const std::vector<PrimeIdeal>& S) {
  return ClassGroup(K).s_class_group(S);
}

inline std::int64_t class_number(const Field& K) { return ClassGroup(K).h(); }

/// The quadratic field Q(sqrt(m)) for the square-free part of m; Q when it is 1.
inline Field field_of_squarefree_part(const BigInt& m) {
  BigInt core = m < 0 ? BigInt(-1) : BigInt(1);
  for (const auto& [p, e] : factor_integer(m)) {
    if (e % 2) core *= p;
  }
  if (core == 1) return Field::rational();
  return Field::quadratic(to_i64(core));
}

/// Whether 3 | h(K(zeta_3)) for real quadratic K, through the quadratic subfields of
/// Q(sqrt d, sqrt -3): h_L = q h1 h2 h3 / 4 with q in {1, 2, 4}, and h(Q(sqrt -3)) = 1.
struct KZeta3Divisibility {
  bool divisible = false;
  std::int64_t h_K = 1;
  std::int64_t h_minus_3d = 1;
  Field minus_3d_field = Field::rational();
  std::string reduction;
};

inline KZeta3Divisibility h3_divisibility_of_Kzeta3(const Field& K) {
  if (!K.is_real() || K.is_rational()) fail(ErrorKind::InvalidArgument, "h3_divisibility_of_Kzeta3 needs d > 1");
  KZeta3Divisibility out;
  out.h_K = class_number(K);
  out.minus_3d_field = field_of_squarefree_part(BigInt(-3 * static_cast<long>(K.d())));
  out.h_minus_3d = out.minus_3d_field.is_rational() ? 1 : class_number(out.minus_3d_field);
  out.divisible = (out.h_K * out.h_minus_3d) % 3 == 0;
  out.reduction = "h(K(zeta3)) = q*h(" + K.spec() + ")*h(Q(sqrt -3))*h(" + out.minus_3d_field.spec() +
                  ")/4 with unit index q in {1,2,4}; h(Q(sqrt -3)) = 1; h(" + K.spec() + ") = " +
                  std::to_string(out.h_K) + ", h(" + out.minus_3d_field.spec() + ") = " +
                  std::to_string(out.h_minus_3d);
  return out;
}

/// A generator of I if I is principal; nullopt otherwise. Real fields return the
/// generator with positive sign; the search is complete up to kPrincipalSearchCap steps.
inline std::optional<AlgebraicNumber> is_principal(const Ideal& I, std::int64_t cap = kPrincipalSearchCap) {
  const Field& K = I.field();
  const BigInt n = I.norm();
  if (K.is_rational()) return AlgebraicNumber(K, BigRational(n));
  if (n == 1) return AlgebraicNumber(K, 1);
  const BigInt t = K.omega_trace(), N = K.omega_norm();
  const BigInt absd = abs(BigInt(static_cast<long>(K.d())));
  BigInt ymax;
  if (K.is_imaginary()) {
    // N(x + yw) >= |d| y^2 / 4.
    ymax = isqrt(BigInt(4 * n / absd)) + 1;
  } else {
    // A generator scaled into sqrt(n) <= |g| < eps sqrt(n) has |y| <= (eps + 1) sqrt(n / d).
    AlgebraicNumber eps = fundamental_unit(K);
    BigInt E = BigInt(eps.x().get_num()) + BigInt(eps.y().get_num()) * (isqrt(absd) + 2);
    if (E < 2) E = 2;
    ymax = isqrt(BigInt((E + 1) * (E + 1) * n / absd)) + 1;
  }
  if (ymax > cap) fail(ErrorKind::LimitExceeded, "principality search needs " + ymax.get_str() + " steps (cap " + std::to_string(cap) + ")");
  std::vector<int> signs = K.is_imaginary() ? std::vector<int>{1} : std::vector<int>{1, -1};
  for (BigInt k = 0; k <= ymax; ++k) {
    for (const BigInt& y : {k, BigInt(-k)}) {
      if (k == 0 && y != k) continue;
      for (int sg : signs) {
        // x^2 + t y x + (N y^2 - sg n) = 0.
        BigInt disc = t * t * y * y - 4 * (N * y * y - sg * n);
        auto r = exact_sqrt(disc);
        if (!r) continue;
        for (const BigInt& root : {*r, BigInt(-*r)}) {
          BigInt xn = -t * y + root;
          if (mod(xn, 2) != 0) continue;
          AlgebraicNumber g(K, BigRational(BigInt(xn / 2)), BigRational(y));
          if (!I.contains(g)) continue;
          if (K.is_real() && g.real_sign() < 0) g = -g;
          return g;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace fermat3
