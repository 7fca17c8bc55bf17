#pragma once

// Integral ideals of O_K in Hermite normal form and prime ideals with their
// valuations.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"
#include "fermat3/field.hpp"
#include "fermat3/polynomial.hpp"

namespace fermat3 {

/// I = aZ + (b + c*w)Z with a, c > 0, c | a, c | b, 0 <= b < a.
/// Over Q the ideal is aZ and b = 0, c = 1.
class Ideal {
 public:
  Ideal(Field K, BigInt a, BigInt b, BigInt c) : K_(K), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  static Ideal unit(const Field& K) { return Ideal(K, 1, 0, 1); }

  /// HNF of the Z-span of integer vectors (x, y) standing for x + y*w. Must have full rank.
  static Ideal from_lattice(const Field& K, const std::vector<std::pair<BigInt, BigInt>>& vectors) {
    if (K.is_rational()) {
      BigInt g = 0;
      for (const auto& v : vectors) g = gcd(g, v.first);
      if (g == 0) fail(ErrorKind::InvalidArgument, "zero ideal");
      return Ideal(K, g, 0, 1);
    }
    // u = combination with y-coordinate c = gcd of all y.
    BigInt c = 0, ux = 0;
    for (const auto& [x, y] : vectors) {
      auto eg = extended_gcd(c, y);
      ux = eg.s * ux + eg.t * x;
      c = eg.g;
    }
    if (c == 0) fail(ErrorKind::InvalidArgument, "lattice does not have full rank");
    BigInt a = 0;
    for (const auto& [x, y] : vectors) a = gcd(a, BigInt(x - (y / c) * ux));
    if (a == 0) fail(ErrorKind::InvalidArgument, "lattice does not have full rank");
    return Ideal(K, a, mod(ux, a), c);
  }

  /// Ideal generated by the given integral elements.
  static Ideal generated_by(const Field& K, const std::vector<AlgebraicNumber>& gens) {
    std::vector<std::pair<BigInt, BigInt>> vectors;
    for (const auto& g : gens) {
      if (!g.is_integral()) fail(ErrorKind::InvalidArgument, "ideal generator " + g.to_string() + " is not integral");
      vectors.emplace_back(BigInt(g.x().get_num()), BigInt(g.y().get_num()));
      if (!K.is_rational()) {
        AlgebraicNumber gw = g * AlgebraicNumber::omega(K);
        vectors.emplace_back(BigInt(gw.x().get_num()), BigInt(gw.y().get_num()));
      }
    }
    return from_lattice(K, vectors);
  }

  static Ideal principal(const AlgebraicNumber& g) { return generated_by(g.field(), {g}); }

  const Field& field() const { return K_; }
  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }

  BigInt norm() const { return K_.is_rational() ? a_ : BigInt(a_ * c_); }
  bool is_unit() const { return norm() == 1; }

  /// Z-basis as field elements.
  std::vector<AlgebraicNumber> basis() const {
    if (K_.is_rational()) return {AlgebraicNumber(K_, BigRational(a_))};
    return {AlgebraicNumber(K_, BigRational(a_)), AlgebraicNumber(K_, BigRational(b_), BigRational(c_))};
  }

  bool contains(const AlgebraicNumber& z) const {
    if (!z.is_integral()) return false;
    BigInt x(z.x().get_num()), y(z.y().get_num());
    if (K_.is_rational()) return mod(x, a_) == 0;
    if (mod(y, c_) != 0) return false;
    BigInt n = y / c_;
    return mod(BigInt(x - n * b_), a_) == 0;
  }

  Ideal conjugate() const {
    if (K_.is_rational()) return *this;
    std::vector<std::pair<BigInt, BigInt>> v;
    for (const auto& e : basis()) {
      AlgebraicNumber ce = e.conjugate();
      v.emplace_back(BigInt(ce.x().get_num()), BigInt(ce.y().get_num()));
    }
    return from_lattice(K_, v);
  }

  friend Ideal operator*(const Ideal& I, const Ideal& J) {
    if (!(I.K_ == J.K_)) fail(ErrorKind::InvalidArgument, "ideals of different fields");
    if (I.K_.is_rational()) return Ideal(I.K_, I.a_ * J.a_, 0, 1);
    std::vector<std::pair<BigInt, BigInt>> v;
    for (const auto& e : I.basis()) {
      for (const auto& f : J.basis()) {
        AlgebraicNumber g = e * f;
        v.emplace_back(BigInt(g.x().get_num()), BigInt(g.y().get_num()));
      }
    }
    return from_lattice(I.K_, v);
  }

  Ideal pow(long k) const {
    if (k < 0) fail(ErrorKind::InvalidArgument, "negative ideal power");
    Ideal r = unit(K_), base = *this;
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  friend bool operator==(const Ideal& I, const Ideal& J) {
    return I.K_ == J.K_ && I.a_ == J.a_ && I.b_ == J.b_ && I.c_ == J.c_;
  }
  friend bool operator<(const Ideal& I, const Ideal& J) {
    return std::tie(I.a_, I.b_, I.c_) < std::tie(J.a_, J.b_, J.c_);
  }

  std::string to_string() const {
    if (K_.is_rational()) return "(" + fermat3::to_string(a_) + ")";
    return "[" + fermat3::to_string(a_) + ", " + AlgebraicNumber(K_, BigRational(b_), BigRational(c_)).to_string() + "]";
  }

 private:
  Field K_;
  BigInt a_, b_, c_;
};

enum class SplittingKind { Split, Inert, Ramified };

inline std::string to_string(SplittingKind k) {
  switch (k) {
    case SplittingKind::Split: return "split";
    case SplittingKind::Inert: return "inert";
    case SplittingKind::Ramified: return "ramified";
  }
  return "?";
}

/// A prime of O_K. Inert primes are (p); the others are (p, w - r) with r a root of
/// X^2 - tX + N mod p.
class PrimeIdeal {
 public:
  PrimeIdeal(Field K, BigInt p, int e, int f, std::optional<BigInt> root)
      : K_(K), p_(std::move(p)), e_(e), f_(f), root_(std::move(root)) {}

  const Field& field() const { return K_; }
  const BigInt& p() const { return p_; }
  int e() const { return e_; }
  int f() const { return f_; }
  bool is_inert() const { return !root_.has_value(); }
  const std::optional<BigInt>& root() const { return root_; }
  BigInt norm() const { return pow(p_, static_cast<unsigned long>(f_)); }

  AlgebraicNumber second_generator() const {
    if (is_inert()) return AlgebraicNumber(K_, BigRational(p_));
    return AlgebraicNumber(K_, BigRational(BigInt(-*root_)), 1);
  }

  Ideal ideal() const {
    if (is_inert()) return Ideal::generated_by(K_, {AlgebraicNumber(K_, BigRational(p_))});
    return Ideal::generated_by(K_, {AlgebraicNumber(K_, BigRational(p_)), second_generator()});
  }

  /// v_P(x); kInfiniteValuation for 0.
  long valuation(const AlgebraicNumber& x) const {
    if (!(x.field() == K_)) fail(ErrorKind::InvalidArgument, "valuation of an element of another field");
    if (x.is_zero()) return kInfiniteValuation;
    if (K_.is_rational()) return fermat3::valuation(x.x(), p_);
    if (is_inert()) return fermat3::valuation(x.norm(), p_) / 2;
    if (e_ == 2) return fermat3::valuation(x.norm(), p_);
    // Split: strip the denominator and the p-content, then test membership in P.
    BigInt m = x.denominator();
    AlgebraicNumber z = x * BigRational(m);
    BigInt zx(z.x().get_num()), zy(z.y().get_num());
    long k = std::min(fermat3::valuation(zx, p_), fermat3::valuation(zy, p_));
    BigInt pk = pow(p_, static_cast<unsigned long>(k));
    zx /= pk;
    zy /= pk;
    long v = k;
    if (mod(BigInt(zx + zy * *root_), p_) == 0) {
      AlgebraicNumber zp(K_, BigRational(zx), BigRational(zy));
      v += fermat3::valuation(zp.norm(), p_);
    }
    return v - fermat3::valuation(m, p_);
  }

  long valuation(const BigRational& q) const { return valuation(AlgebraicNumber(K_, q)); }

  std::string to_string() const {
    if (is_inert()) return "(" + fermat3::to_string(p_) + ")";
    return "(" + fermat3::to_string(p_) + ", " + second_generator().to_string() + ")";
  }

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.K_ == b.K_ && a.p_ == b.p_ && a.root_ == b.root_;
  }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    return a.root_.value_or(-1) < b.root_.value_or(-1);
  }

 private:
  Field K_;
  BigInt p_;
  int e_, f_;
  std::optional<BigInt> root_;
};

struct Splitting {
  SplittingKind kind;
  std::vector<PrimeIdeal> primes;
};

inline Splitting splitting_type(const Field& K, const BigInt& p) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, fermat3::to_string(p) + " is not prime");
  if (K.is_rational()) return {SplittingKind::Inert, {PrimeIdeal(K, p, 1, 1, std::nullopt)}};
  BigInt disc = K.discriminant();
  int chi = mpz_kronecker(disc.get_mpz_t(), p.get_mpz_t());
  if (chi == -1) return {SplittingKind::Inert, {PrimeIdeal(K, p, 1, 2, std::nullopt)}};
  IntPolynomial minpoly(std::vector<BigInt>{K.omega_norm(), BigInt(-K.omega_trace()), BigInt(1)});
  std::vector<BigInt> roots = roots_mod_p(minpoly, p);
  if (chi == 0) {
    if (roots.size() != 1) fail(ErrorKind::InternalInconsistency, "ramified prime without a double root");
    return {SplittingKind::Ramified, {PrimeIdeal(K, p, 2, 1, roots[0])}};
  }
  if (roots.size() != 2) fail(ErrorKind::InternalInconsistency, "split prime without two roots");
  return {SplittingKind::Split, {PrimeIdeal(K, p, 1, 1, roots[0]), PrimeIdeal(K, p, 1, 1, roots[1])}};
}

inline std::vector<PrimeIdeal> primes_above(const Field& K, const BigInt& p) { return splitting_type(K, p).primes; }

/// Primes P with v_P(x) != 0, sorted. x must be nonzero.
inline std::vector<PrimeIdeal> prime_support(const AlgebraicNumber& x) {
  if (x.is_zero()) fail(ErrorKind::InvalidArgument, "prime support of zero");
  const Field& K = x.field();
  BigInt m = x.denominator();
  AlgebraicNumber z = x * BigRational(m);
  std::vector<BigInt> candidates;
  for (const BigInt& n : {BigInt(z.norm().get_num()), m}) {
    for (const auto& [p, e] : factor_integer(n)) candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<PrimeIdeal> out;
  for (const auto& p : candidates) {
    for (const auto& P : primes_above(K, p)) {
      if (P.valuation(x) != 0) out.push_back(P);
    }
  }
  return out;
}

/// Distinct primes dividing the product of the given nonzero elements.
inline std::vector<PrimeIdeal> primes_dividing(const Field& K, const std::vector<AlgebraicNumber>& xs) {
  std::vector<BigInt> ps;
  for (const auto& x : xs) {
    if (x.is_zero()) fail(ErrorKind::InvalidArgument, "primes dividing zero");
    if (!x.is_integral()) fail(ErrorKind::InvalidArgument, "element " + x.to_string() + " is not integral");
    for (const auto& [p, e] : factor_integer(BigInt(x.norm().get_num()))) ps.push_back(p);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<PrimeIdeal> out;
  for (const auto& p : ps) {
    for (const auto& P : primes_above(K, p)) {
      for (const auto& x : xs) {
        if (P.valuation(x) > 0) {
          out.push_back(P);
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace fermat3
