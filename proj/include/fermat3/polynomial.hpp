#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fermat3/arith.hpp"
#include "fermat3/error.hpp"

namespace fermat3 {

/// Integer polynomial, coefficients in ascending degree. The zero polynomial
/// has no coefficients; otherwise the leading coefficient is nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }
  IntPolynomial(std::initializer_list<long> coefficients) {
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial monomial(int degree, const BigInt& coefficient = 1) {
    std::vector<BigInt> c(static_cast<std::size_t>(degree) + 1, BigInt(0));
    c.back() = coefficient;
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int i) const {
    return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : BigInt(0);
  }
  BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

  template <class T>
  T evaluate(const T& x) const {
    T acc = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char variable = 'x') const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      BigInt c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      bool negative = c < 0;
      BigInt mag = abs(c);
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (i == 0 || mag != 1) out += mag.get_str();
      if (i > 0) {
        if (mag != 1) out += "*";
        out += variable;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Parses expressions like "x^3 - 5", "2*x^2 + x - 1", "x^2-2".
inline IntPolynomial parse_polynomial(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorKind::InvalidArgument, "empty polynomial");
  std::vector<BigInt> coeffs;
  std::size_t i = 0;
  auto bad = [&] { fail(ErrorKind::InvalidArgument, "cannot parse polynomial '" + std::string(text) + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      bad();
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    BigInt c = digits.empty() ? BigInt(1) : BigInt(digits);
    int degree = 0;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) bad();
      ++i;
      if (i >= s.size() || s[i] != 'x') bad();
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
        if (e.empty()) bad();
        degree = std::stoi(e);
      }
    } else if (digits.empty()) {
      bad();
    }
    if (coeffs.size() <= static_cast<std::size_t>(degree)) coeffs.resize(static_cast<std::size_t>(degree) + 1, BigInt(0));
    coeffs[static_cast<std::size_t>(degree)] += sign * c;
  }
  return IntPolynomial(std::move(coeffs));
}

/// Polynomials over F_p with p < 2^63, coefficients ascending, trimmed.
namespace fp {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) fail(ErrorKind::DivisionByZero, "inverse of zero mod p");
  return powmod(a, p - 2, p);
}

inline Poly reduce(const IntPolynomial& f, std::uint64_t p) {
  Poly out;
  BigInt modulus = from_u64(p);
  for (const auto& c : f.coefficients()) out.push_back(to_u64(mod(c, modulus)));
  trim(out);
  return out;
}

inline IntPolynomial lift(const Poly& f) {
  std::vector<BigInt> c;
  for (auto v : f) c.push_back(from_u64(v));
  return IntPolynomial(std::move(c));
}

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    c[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) + y) % p);
  }
  trim(c);
  return c;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    c[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) + p - y) % p);
  }
  trim(c);
  return c;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(c);
  return c;
}

inline Poly scale(const Poly& a, std::uint64_t k, std::uint64_t p) {
  Poly c;
  for (auto v : a) c.push_back(mulmod(v, k, p));
  trim(c);
  return c;
}

inline Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, inverse(a.back(), p), p);
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint64_t p) {
  if (b.empty()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  std::uint64_t lead_inv = inverse(b.back(), p);
  for (int i = degree(a); i >= degree(b); --i) {
    std::uint64_t coef = mulmod(a[static_cast<std::size_t>(i)], lead_inv, p);
    std::size_t shift = static_cast<std::size_t>(i - degree(b));
    q[shift] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = (a[shift + j] + p - mulmod(coef, b[j], p)) % p;
    }
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline Poly rem(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).second; }
inline Poly quo(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).first; }

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline Poly derivative(const Poly& f, std::uint64_t p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
  trim(d);
  return d;
}

inline bool is_one(const Poly& f) { return f.size() == 1 && f[0] == 1; }

/// base^e mod modulus, e given as a big integer.
inline Poly powmod(const Poly& base, const BigInt& e, const Poly& modulus, std::uint64_t p) {
  Poly result{1};
  result = rem(result, modulus, p);
  Poly b = rem(base, modulus, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), modulus, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), modulus, p);
  }
  return result;
}

/// For f with f' = 0: the polynomial g with g^p = f.
inline Poly pth_root(const Poly& f, std::uint64_t p) {
  Poly g;
  for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) g.push_back(f[i]);
  trim(g);
  return g;
}

/// Square-free decomposition of a monic f: pairs (g_i, i) with f = prod g_i^i.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f, std::uint64_t p) {
  std::vector<std::pair<Poly, int>> out;
  if (degree(f) < 1) return out;
  Poly c = gcd(f, derivative(f, p), p);
  Poly w = quo(f, c, p);
  int i = 1;
  while (!is_one(w)) {
    Poly y = gcd(w, c, p);
    Poly fac = quo(w, y, p);
    if (degree(fac) > 0) out.emplace_back(monic(fac, p), i);
    w = y;
    c = quo(c, y, p);
    ++i;
  }
  if (degree(c) > 0) {
    for (auto& [g, m] : squarefree_decomposition(pth_root(c, p), p)) {
      out.emplace_back(g, m * static_cast<int>(p));
    }
  }
  return out;
}

/// Distinct-degree split of a square-free monic f: (product of irreducibles of degree d, d).
inline std::vector<std::pair<Poly, int>> distinct_degree(Poly f, std::uint64_t p) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1};
  Poly h = rem(x, f, p);
  BigInt prime = from_u64(p);
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(h, prime, f, p);
    Poly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = quo(f, g, p);
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

/// Cantor-Zassenhaus equal-degree splitting; the generator is seeded by the caller.
inline void equal_degree(const Poly& f, int d, std::uint64_t p, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (degree(f) == d) {
    out.push_back(monic(f, p));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  BigInt prime = from_u64(p);
  for (;;) {
    Poly a;
    for (int i = 0; i < degree(f); ++i) a.push_back(coeff(rng));
    trim(a);
    if (degree(a) < 1) continue;
    Poly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      Poly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t, p), f, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      BigInt e = (pow(prime, static_cast<unsigned long>(d)) - 1) / 2;
      b = sub(powmod(a, e, f, p), Poly{1}, p);
    }
    Poly g = gcd(f, b, p);
    if (degree(g) > 0 && degree(g) < degree(f)) {
      equal_degree(g, d, p, rng, out);
      equal_degree(quo(f, g, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace fp

struct ModularFactor {
  IntPolynomial factor;  // monic, coefficients in [0, p)
  int multiplicity;

  friend bool operator==(const ModularFactor&, const ModularFactor&) = default;
};

/// Factorization of f over F_p into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading unit is dropped.
inline std::vector<ModularFactor> factor_mod_p(const IntPolynomial& f, const BigInt& p) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, p.get_str() + " is not prime");
  if (!fits_u64(p) || p >= BigInt(1) << 62) fail(ErrorKind::LimitExceeded, "prime too large for modular factorization");
  std::uint64_t q = to_u64(p);
  fp::Poly g = fp::reduce(f, q);
  if (g.empty()) fail(ErrorKind::ZeroPolynomial, "polynomial vanishes mod " + p.get_str());
  g = fp::monic(g, q);
  std::mt19937_64 rng(0x5eedf00dULL ^ q);
  std::vector<std::pair<fp::Poly, int>> pieces;
  for (const auto& [sqf, mult] : fp::squarefree_decomposition(g, q)) {
    for (const auto& [block, d] : fp::distinct_degree(sqf, q)) {
      std::vector<fp::Poly> irreducibles;
      fp::equal_degree(block, d, q, rng, irreducibles);
      for (auto& h : irreducibles) pieces.emplace_back(std::move(h), mult);
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
  });
  std::vector<ModularFactor> out;
  for (auto& [h, m] : pieces) {
    if (!out.empty() && fp::lift(h) == out.back().factor) {
      out.back().multiplicity += m;
    } else {
      out.push_back({fp::lift(h), m});
    }
  }
  return out;
}

/// Roots of f in F_p, ascending.
inline std::vector<BigInt> roots_mod_p(const IntPolynomial& f, const BigInt& p) {
  std::vector<BigInt> roots;
  for (const auto& [g, m] : factor_mod_p(f, p)) {
    if (g.degree() == 1) roots.push_back(mod(BigInt(-g.coefficient(0)), p));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace fermat3
