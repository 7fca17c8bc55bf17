#pragma once

// Exact integer and rational helpers on top of GMP.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat3/error.hpp"

namespace fermat3 {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Valuation of zero.
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt abs(const BigInt& n) { return n < 0 ? BigInt(-n) : n; }

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// g = gcd(a, b) >= 0 with s*a + t*b = g.
struct ExtendedGcd {
  BigInt g, s, t;
};

inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Floor division and the matching non-negative remainder for positive m.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

inline BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline BigRational pow(const BigRational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) fail(ErrorKind::DivisionByZero, "negative power of zero");
    BigRational inv = 1 / base;
    return pow(inv, -exponent);
  }
  BigInt num = pow(BigInt(base.get_num()), static_cast<unsigned long>(exponent));
  BigInt den = pow(BigInt(base.get_den()), static_cast<unsigned long>(exponent));
  return make_rational(num, den);
}

inline BigInt isqrt(const BigInt& n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::optional<BigInt> exact_sqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = isqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

inline std::optional<BigRational> exact_sqrt(const BigRational& q) {
  auto num = exact_sqrt(BigInt(q.get_num()));
  auto den = exact_sqrt(BigInt(q.get_den()));
  if (!num || !den) return std::nullopt;
  return make_rational(*num, *den);
}

inline std::optional<BigInt> exact_cube_root(const BigInt& n) {
  BigInt r;
  // mpz_root truncates toward zero and handles negative odd roots.
  int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
  if (!exact) return std::nullopt;
  return r;
}

/// r with r^3 == q, if such a rational exists.
inline std::optional<BigRational> rational_cube_root(const BigRational& q) {
  auto num = exact_cube_root(BigInt(q.get_num()));
  if (!num) return std::nullopt;
  auto den = exact_cube_root(BigInt(q.get_den()));
  if (!den) return std::nullopt;
  return make_rational(*num, *den);
}

/// p-adic valuation of a nonzero integer; kInfiniteValuation for zero.
inline long valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) return kInfiniteValuation;
  if (p < 2) fail(ErrorKind::InvalidArgument, "valuation at p < 2");
  BigInt m = abs(n);
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

inline long valuation(const BigRational& q, const BigInt& p) {
  if (q == 0) return kInfiniteValuation;
  return valuation(BigInt(q.get_num()), p) - valuation(BigInt(q.get_den()), p);
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin; the base set is exact for n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

inline std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) fail(ErrorKind::InvalidArgument, "integer does not fit in 64 bits");
  std::uint64_t r = 0;
  mpz_export(&r, nullptr, -1, sizeof r, 0, 0, n.get_mpz_t());
  return r;
}

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

inline std::int64_t to_i64(const BigInt& n) {
  if (!n.fits_slong_p()) fail(ErrorKind::LimitExceeded, "integer does not fit in 64 bits");
  return n.get_si();
}

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace detail {

inline BigInt pollard_rho(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto step = [&](const BigInt& v) { return mod(v * v + c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(abs(BigInt(x - y)), n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(const BigInt& n, std::vector<BigInt>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(BigInt(n / d), out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0), ascending primes with exponents.
inline std::vector<std::pair<BigInt, int>> factor_integer(const BigInt& n) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "factorization of zero");
  BigInt m = abs(n);
  std::vector<BigInt> primes;
  for (unsigned long p = 2; p < 10000 && BigInt(p) * p <= m; ++p) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.push_back(BigInt(p));
      m /= p;
    }
  }
  if (m > 1) detail::factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<BigInt, int>> result;
  for (const auto& p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1);
    }
  }
  return result;
}

inline bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor_integer(n)) {
    if (e > 1) return false;
  }
  return true;
}

inline std::string to_string(const BigInt& n) { return n.get_str(); }

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigRational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::InvalidArgument, "not a rational number: '" + text + "'");
  }
}

}  // namespace fermat3
