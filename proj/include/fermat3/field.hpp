#pragma once

// Quadratic fields Q(sqrt d) and the rational field, with elements written
// over the integral basis {1, w}: w = sqrt(d), or (1 + sqrt(d))/2 when d = 1 mod 4.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"

namespace fermat3 {

class Field {
 public:
  static Field rational() { return Field(1); }

  static Field quadratic(std::int64_t d) {
    if (d == 0 || d == 1) fail(ErrorKind::InvalidArgument, "quadratic field needs d != 0, 1");
    if (!is_squarefree(BigInt(static_cast<long>(d))))
      fail(ErrorKind::NotSquareFree, std::to_string(d) + " is not square-free");
    return Field(d);
  }

  /// "Q" or "Q(sqrt D)"; "Q(sqrt(D))" is accepted too.
  static Field parse(std::string_view spec) {
    std::string s;
    for (char ch : spec)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "Q") return rational();
    auto bad = [&] { fail(ErrorKind::InvalidArgument, "field spec must be 'Q' or 'Q(sqrt D)', got '" + std::string(spec) + "'"); };
    const std::string prefix = "Q(sqrt";
    if (s.rfind(prefix, 0) != 0 || s.back() != ')') bad();
    std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
    if (!inner.empty() && inner.front() == '(') {
      if (inner.back() != ')') bad();
      inner = inner.substr(1, inner.size() - 2);
    }
    if (inner.empty()) bad();
    std::size_t used = 0;
    long long d = 0;
    try {
      d = std::stoll(inner, &used);
    } catch (const std::exception&) {
      bad();
    }
    if (used != inner.size()) bad();
    return quadratic(d);
  }

  bool is_rational() const { return d_ == 1; }
  bool is_real() const { return d_ >= 1; }
  bool is_imaginary() const { return d_ < 0; }
  int degree() const { return is_rational() ? 1 : 2; }
  std::int64_t d() const { return d_; }
  bool half_integral_basis() const { return !is_rational() && mod(BigInt(static_cast<long>(d_)), 4) == 1; }

  BigInt discriminant() const {
    if (is_rational()) return 1;
    BigInt d(static_cast<long>(d_));
    return half_integral_basis() ? d : BigInt(4 * d);
  }

  /// w^2 = trace * w - norm.
  BigInt omega_trace() const { return half_integral_basis() ? 1 : 0; }
  BigInt omega_norm() const {
    BigInt d(static_cast<long>(d_));
    if (is_rational()) return 0;
    return half_integral_basis() ? BigInt((1 - d) / 4) : BigInt(-d);
  }

  std::string spec() const { return is_rational() ? "Q" : "Q(sqrt " + std::to_string(d_) + ")"; }

  std::string basis_description() const {
    if (is_rational()) return "basis {1}";
    std::string root = "sqrt(" + std::to_string(d_) + ")";
    return half_integral_basis() ? "w = (1 + " + root + ")/2" : "w = " + root;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::int64_t d) : d_(d) {}
  std::int64_t d_;
};

class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(Field K, BigRational x = 0, BigRational y = 0) : K_(K), x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
    if (K_.is_rational() && y_ != 0) fail(ErrorKind::InvalidArgument, "rational field element with nonzero w-coordinate");
  }

  static AlgebraicNumber omega(const Field& K) {
    if (K.is_rational()) fail(ErrorKind::InvalidArgument, "the rational field has no w");
    return AlgebraicNumber(K, 0, 1);
  }

  const Field& field() const { return K_; }
  const BigRational& x() const { return x_; }
  const BigRational& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }
  bool is_integral() const { return x_.get_den() == 1 && y_.get_den() == 1; }

  /// Smallest positive integer m with m * this in O_K.
  BigInt denominator() const { return lcm(BigInt(x_.get_den()), BigInt(y_.get_den())); }

  BigRational norm() const { return x_ * x_ + BigRational(K_.omega_trace()) * x_ * y_ + BigRational(K_.omega_norm()) * y_ * y_; }
  BigRational trace() const { return 2 * x_ + BigRational(K_.omega_trace()) * y_; }
  AlgebraicNumber conjugate() const { return AlgebraicNumber(K_, x_ + BigRational(K_.omega_trace()) * y_, -y_); }

  bool is_unit() const { return is_integral() && (norm() == 1 || norm() == -1); }

  friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    a.check_same(b);
    return AlgebraicNumber(a.K_, a.x_ + b.x_, a.y_ + b.y_);
  }
  friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    a.check_same(b);
    return AlgebraicNumber(a.K_, a.x_ - b.x_, a.y_ - b.y_);
  }
  AlgebraicNumber operator-() const { return AlgebraicNumber(K_, -x_, -y_); }

  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    a.check_same(b);
    const BigRational t(a.K_.omega_trace()), n(a.K_.omega_norm());
    BigRational yy = a.y_ * b.y_;
    return AlgebraicNumber(a.K_, a.x_ * b.x_ - n * yy, a.x_ * b.y_ + a.y_ * b.x_ + t * yy);
  }

  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const BigRational& q) { return AlgebraicNumber(a.K_, a.x_ * q, a.y_ * q); }

  AlgebraicNumber inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    BigRational n = norm();
    AlgebraicNumber c = conjugate();
    return AlgebraicNumber(K_, c.x_ / n, c.y_ / n);
  }

  friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b.inverse(); }

  AlgebraicNumber pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    AlgebraicNumber result(K_, 1);
    AlgebraicNumber base = *this;
    while (k) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a.K_ == b.K_ && a.x_ == b.x_ && a.y_ == b.y_;
  }

  /// Coordinate order; used only for deterministic sorting.
  friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.x_ != b.x_) return a.x_ < b.x_;
    return a.y_ < b.y_;
  }

  /// Sign under the real embedding with sqrt(d) > 0. Real fields only.
  int real_sign() const {
    if (K_.is_imaginary()) fail(ErrorKind::InvalidArgument, "real sign in an imaginary field");
    // this = u + v sqrt(d).
    BigRational u = x_, v = y_;
    if (K_.half_integral_basis()) {
      u = x_ + y_ / 2;
      v = y_ / 2;
    }
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    BigRational lhs = u * u, rhs = v * v * BigRational(static_cast<long>(K_.d()));
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
  }

  std::string to_string() const {
    if (K_.is_rational() || y_ == 0) return fermat3::to_string(x_);
    std::string ys;
    bool neg = y_ < 0;
    BigRational mag = neg ? BigRational(-y_) : y_;
    ys = mag == 1 ? "w" : fermat3::to_string(mag) + "*w";
    if (x_ == 0) return neg ? "-" + ys : ys;
    return fermat3::to_string(x_) + (neg ? " - " : " + ") + ys;
  }

  /// Inverse of to_string: "x + y*w", "3", "-1/2", "w", "1 - 2*w", "2*w + 1".
  static AlgebraicNumber parse(const Field& K, std::string_view text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto bad = [&] { fail(ErrorKind::InvalidArgument, "cannot parse field element '" + std::string(text) + "'"); };
    if (s.empty()) bad();
    BigRational x = 0, y = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (i != 0) {
        bad();
      }
      std::string num;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) num += s[i++];
      bool has_w = false;
      if (i < s.size() && s[i] == '*') {
        if (num.empty()) bad();
        ++i;
        if (i >= s.size() || s[i] != 'w') bad();
      }
      if (i < s.size() && s[i] == 'w') {
        has_w = true;
        ++i;
      }
      if (num.empty() && !has_w) bad();
      BigRational c = num.empty() ? BigRational(1) : parse_rational(num);
      if (has_w) {
        y += sign * c;
      } else {
        x += sign * c;
      }
    }
    return AlgebraicNumber(K, x, y);
  }

 private:
  static int sgn(const BigRational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

  void check_same(const AlgebraicNumber& other) const {
    if (!(K_ == other.K_)) fail(ErrorKind::InvalidArgument, "elements of different fields");
  }

  Field K_;
  BigRational x_, y_;
};

inline AlgebraicNumber element(const Field& K, long x, long y = 0) { return AlgebraicNumber(K, x, y); }

/// Sign of a - b under the real embedding.
inline int compare_real(const AlgebraicNumber& a, const AlgebraicNumber& b) { return (a - b).real_sign(); }

namespace detail {

inline int sgn(const BigInt& n) { return n > 0 ? 1 : (n < 0 ? -1 : 0); }

// Integer roots of T^3 + p*T + q, ascending.
inline std::vector<BigInt> integer_roots_depressed_cubic(const BigInt& p, const BigInt& q) {
  auto f = [&](const BigInt& t) { return BigInt(t * t * t + p * t + q); };
  BigInt bound = 1 + std::max(abs(p), abs(q));
  std::vector<std::pair<BigInt, BigInt>> pieces;  // monotone integer intervals
  bool increasing_everywhere = p >= 0;
  if (increasing_everywhere) {
    pieces.emplace_back(-bound, bound);
  } else {
    BigInt r = isqrt(BigInt(-p / 3));  // critical points at +-sqrt(-p/3)
    // Extend r to floor(sqrt(-p/3)) exactly for rational -p/3.
    while ((r + 1) * (r + 1) * 3 <= -p) ++r;
    pieces.emplace_back(-bound, BigInt(-r - 1));
    pieces.emplace_back(BigInt(-r), r);
    pieces.emplace_back(BigInt(r + 1), bound);
  }
  std::vector<BigInt> roots;
  for (auto [lo, hi] : pieces) {
    if (lo > hi) continue;
    int s_lo = sgn(f(lo)), s_hi = sgn(f(hi));
    if (s_lo == 0) {
      roots.push_back(lo);
      continue;
    }
    if (s_hi == 0) {
      roots.push_back(hi);
      continue;
    }
    if (s_lo == s_hi) continue;
    while (hi - lo > 1) {
      BigInt mid = floor_div(BigInt(lo + hi), 2);
      int s = sgn(f(mid));
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    if (f(lo) == 0) roots.push_back(lo);
    else if (f(hi) == 0) roots.push_back(hi);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace detail

/// Exact cube roots of z in K, in coordinate order. In a real field there is at most one.
inline std::vector<AlgebraicNumber> cube_roots(const AlgebraicNumber& z) {
  const Field& K = z.field();
  if (z.is_zero()) return {z};
  if (K.is_rational()) {
    auto r = rational_cube_root(z.x());
    if (!r) return {};
    return {AlgebraicNumber(K, *r)};
  }
  // Scale into O_K: gamma^3 = z iff (m gamma)^3 = m^3 z.
  BigInt m = z.denominator();
  AlgebraicNumber zi = z * BigRational(BigInt(m * m * m));
  BigRational norm = zi.norm();
  auto n = exact_cube_root(BigInt(norm.get_num()));
  if (!n) return {};
  // t = Tr(gamma) satisfies t^3 - 3 N(gamma) t - Tr(z) = 0.
  BigInt tr(zi.trace().get_num());
  std::vector<AlgebraicNumber> out;
  for (const auto& t : detail::integer_roots_depressed_cubic(BigInt(-3 * *n), BigInt(-tr))) {
    BigInt delta = t * t - 4 * *n;  // (gamma - conj gamma)^2
    BigRational scale(static_cast<long>(K.d()));
    if (!K.half_integral_basis()) scale *= 4;
    auto y = exact_sqrt(BigRational(delta) / scale);
    if (!y) continue;
    for (const BigRational& yy : {*y, BigRational(-*y)}) {
      BigRational x = (BigRational(t) - BigRational(K.omega_trace()) * yy) / 2;
      AlgebraicNumber g(K, x, yy);
      if (g * g * g == zi) {
        AlgebraicNumber root = g * make_rational(1, m);
        if (std::find(out.begin(), out.end(), root) == out.end()) out.push_back(root);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<AlgebraicNumber> cube_root(const AlgebraicNumber& z) {
  auto roots = cube_roots(z);
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

}  // namespace fermat3
