/*
   Copyright 2026 The circdist Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CIRCDIST_ARITH_HPP
#define CIRCDIST_ARITH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace circdist {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Precondition violated by the caller (bad level, non-prime, level mismatch...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal cross-check failed; indicates a bug, never a user error.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Numerical evaluation could not be certified.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw ConsistencyError(what);
}

// ---------------------------------------------------------------------------
// Small-integer number theory. Levels stay in the low thousands, so trial
// division is all we ever need.

inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorisation as ascending (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  require(n >= 1, "factor: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (auto [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    ds.push_back(d);
    if (d * d != n) ds.push_back(n / d);
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

/// If n = p^k with k >= 1, returns p.
inline std::optional<std::int64_t> prime_power_base(std::int64_t n) {
  if (n < 2) return std::nullopt;
  auto f = factor(n);
  if (f.size() != 1) return std::nullopt;
  return f.front().first;
}

inline int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Largest divisor of n coprime to p.
inline std::int64_t prime_to_part(std::int64_t n, std::int64_t p) {
  while (n % p == 0) n /= p;
  return n;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t r = 1;
  b = mod(b, n);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % n);
    b = static_cast<std::int64_t>((__int128)b * b % n);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo n; throws if gcd(a, n) != 1.
inline std::int64_t invmod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t g = n, x = 0, x1 = 1, a1 = mod(a, n);
  while (a1 != 0) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  require(g == 1, "invmod: " + std::to_string(a) + " is not a unit mod " + std::to_string(n));
  return mod(x, n);
}

/// Solve x = r1 (mod n1), x = r2 (mod n2) for coprime moduli.
inline std::int64_t crt(std::int64_t r1, std::int64_t n1, std::int64_t r2, std::int64_t n2) {
  require(gcd64(n1, n2) == 1, "crt: moduli must be coprime");
  if (n2 == 1) return mod(r1, n1);
  std::int64_t t = static_cast<std::int64_t>((__int128)mod(r2 - r1, n2) * invmod(n1, n2) % n2);
  return mod(r1 + n1 * t, n1 * n2);
}

/// Multiplicative order of a modulo n (a must be a unit).
inline std::int64_t mult_order(std::int64_t a, std::int64_t n) {
  if (n == 1) return 1;
  require(gcd64(a, n) == 1, "mult_order: not a unit");
  std::int64_t x = mod(a, n), k = 1;
  while (x != 1) {
    x = x * mod(a, n) % n;
    ++k;
  }
  return k;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / gcd64(a, b) * b; }

// ---------------------------------------------------------------------------
// Big-number helpers.

inline Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

inline bool is_integral(const Rational& q) { return denom(q) == 1; }

inline std::string to_string(const Integer& z) { return z.str(); }

/// "p/q", or "p" for integers. Exact and locale-free.
inline std::string to_string(const Rational& q) {
  if (denom(q) == 1) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
    require(q != 0, "parse_rational: zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw DomainError("parse_rational: malformed rational '" + s + "'");
  }
}

/// Residue of an l-integral rational modulo l^k, in [0, l^k).
inline std::int64_t residue_mod(const Rational& q, std::int64_t modulus) {
  Integer d = denom(q);
  Integer m(modulus);
  Integer dm = d % m;
  require(gcd(dm, m) == 1 || modulus == 1, "residue_mod: denominator not invertible");
  if (modulus == 1) return 0;
  std::int64_t dinv = invmod(static_cast<std::int64_t>(dm), modulus);
  Integer r = (numer(q) % m) * dinv % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

/// Best rational approximation to x with denominator at most `bound`
/// (continued-fraction convergents and semiconvergents).
inline Rational best_rational(long double x, std::int64_t bound) {
  long double a = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double fl = std::floor(a);
    Integer ai(static_cast<long long>(fl));
    Integer p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > bound) {
      // semiconvergent with the largest admissible partial quotient
      Integer t = (Integer(bound) - q0) / q1;
      Integer ps = t * p1 + p0, qs = t * q1 + q0;
      Rational c1(p1, q1), c2(ps, qs);
      long double e1 = std::fabs(static_cast<long double>(c1.convert_to<double>()) - x);
      long double e2 = std::fabs(static_cast<long double>(c2.convert_to<double>()) - x);
      return (qs > 0 && e2 < e1) ? c2 : c1;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double frac = a - fl;
    if (frac < 1e-18L) break;
    a = 1.0L / frac;
  }
  return Rational(p1, q1);
}

}  // namespace circdist

#endif  // CIRCDIST_ARITH_HPP
