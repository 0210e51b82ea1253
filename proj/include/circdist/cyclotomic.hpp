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

#ifndef CIRCDIST_CYCLOTOMIC_HPP
#define CIRCDIST_CYCLOTOMIC_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "circdist/arith.hpp"
#include "circdist/fp_poly.hpp"

namespace circdist {

using IntPoly = std::vector<Integer>;  // ascending coefficients

namespace detail {

struct CycloData {
  std::int64_t n = 1;
  int phi = 1;
  IntPoly poly;
  std::vector<std::pair<int, long>> low;  // nonzero (j, c_j) with j < phi
};

inline void poly_mul_xd_minus_1(IntPoly& f, std::int64_t d) {
  // f <- f * (x^d - 1)
  IntPoly g(f.size() + d, Integer(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    g[i + d] += f[i];
    g[i] -= f[i];
  }
  f = std::move(g);
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline IntPoly compute_cyclotomic(std::int64_t n) {
  // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}: multiply first, then divide.
  IntPoly f{Integer(1)};
  auto ds = divisors(n);
  for (auto d : ds)
    if (mobius(n / d) == 1) poly_mul_xd_minus_1(f, d);
  for (auto d : ds) {
    if (mobius(n / d) != -1) continue;
    // long division by the monic x^d - 1 done directly
    std::size_t deg = f.size() - 1;
    IntPoly rem = f;
    IntPoly q(deg - d + 1, Integer(0));
    for (std::int64_t i = static_cast<std::int64_t>(deg); i >= d; --i) {
      Integer c = rem[i];
      if (c == 0) continue;
      q[i - d] = c;
      rem[i] = 0;
      rem[i - d] += c;
    }
    for (std::int64_t i = 0; i < d; ++i) ensure(rem[i] == 0, "cyclotomic_polynomial: inexact division");
    f = std::move(q);
  }
  return f;
}

inline const CycloData& cyclo(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<CycloData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto d = std::make_unique<CycloData>();
  d->n = n;
  d->poly = compute_cyclotomic(n);
  d->phi = static_cast<int>(d->poly.size()) - 1;
  ensure(d->phi == euler_phi(n), "cyclotomic_polynomial: degree mismatch");
  for (int j = 0; j < d->phi; ++j)
    if (d->poly[j] != 0) d->low.emplace_back(j, d->poly[j].convert_to<long>());
  auto& ref = *d;
  cache.emplace(n, std::move(d));
  return ref;
}

/// Reduce an integer polynomial (any length, read as a polynomial in zeta_n)
/// to the canonical remainder of length phi(n).
inline std::vector<Integer> reduce_mod_cyclo(std::vector<Integer> v, std::int64_t n) {
  const auto& cd = cyclo(n);
  if (static_cast<std::int64_t>(v.size()) > n) {
    for (std::size_t i = n; i < v.size(); ++i) v[i % n] += v[i];
    v.resize(n);
  }
  for (int i = static_cast<int>(v.size()) - 1; i >= cd.phi; --i) {
    if (v[i] == 0) continue;
    const Integer c = v[i];
    const int shift = i - cd.phi;
    for (auto [j, cj] : cd.low) {
      if (cj == 1)
        v[shift + j] -= c;
      else if (cj == -1)
        v[shift + j] += c;
      else
        v[shift + j] -= c * cj;
    }
    v[i] = 0;
  }
  v.resize(cd.phi, Integer(0));
  return v;
}

}  // namespace detail

/// Phi_n(x), ascending integer coefficients.
inline IntPoly cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, "cyclotomic_polynomial: n must be >= 1");
  return detail::cyclo(n).poly;
}

// ---------------------------------------------------------------------------
// Unit groups (Z/n)^x and their subgroups.

/// Units mod n in ascending order; for n = 1 the trivial group is {0}.
inline std::vector<std::int64_t> units_mod(std::int64_t n) {
  std::vector<std::int64_t> u;
  if (n == 1) return {0};
  for (std::int64_t a = 1; a < n; ++a)
    if (gcd64(a, n) == 1) u.push_back(a);
  return u;
}

/// Elements a of (Z/m)^x with a = 1 mod n, i.e. Gal(Q(zeta_m)/Q(zeta_n)).
inline std::vector<std::int64_t> relative_group(std::int64_t m, std::int64_t n) {
  require(n >= 1 && m % n == 0, "relative_group: n must divide m");
  std::vector<std::int64_t> out;
  for (auto a : units_mod(m))
    if (mod(a, n) == mod(1, n)) out.push_back(a);
  return out;
}

/// A chain 1 = C_0 < C_1 < ... < C_r = H with C_i = <C_{i-1}, h_i>; steps hold
/// (h_i, [C_i : C_{i-1}]). Lets norms be computed with O(log |H|) products.
struct SubgroupChain {
  std::int64_t modulus = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> steps;
};

inline SubgroupChain subgroup_chain(std::int64_t n, const std::vector<std::int64_t>& elems) {
  SubgroupChain ch;
  ch.modulus = n;
  if (n == 1) return ch;
  std::vector<char> in(n, 0);
  std::vector<std::int64_t> cur{1};
  in[1] = 1;
  for (auto h : elems) {
    h = mod(h, n);
    if (in[h]) continue;
    std::int64_t k = 1, x = h;
    while (!in[x]) {
      x = x * h % n;
      ++k;
    }
    std::vector<std::int64_t> next;
    next.reserve(cur.size() * k);
    std::int64_t hp = 1;
    for (std::int64_t j = 0; j < k; ++j) {
      for (auto c : cur) next.push_back(c * hp % n);
      hp = hp * h % n;
    }
    for (auto c : next) in[c] = 1;
    cur = std::move(next);
    ch.steps.emplace_back(h, k);
  }
  ensure(cur.size() == elems.size() || elems.empty(), "subgroup_chain: input is not a subgroup");
  return ch;
}

struct GaloisElt {
  std::int64_t level = 1;
  std::int64_t a = 1;

  GaloisElt() = default;
  GaloisElt(std::int64_t n, std::int64_t a_) : level(n), a(n == 1 ? 0 : mod(a_, n)) {
    require(n >= 1, "GaloisElt: level must be >= 1");
    require(n == 1 || gcd64(a_, n) == 1, "GaloisElt: a must be a unit mod n");
  }
  static GaloisElt tau(std::int64_t n) { return GaloisElt(n, n - 1); }

  friend GaloisElt operator*(const GaloisElt& x, const GaloisElt& y) {
    require(x.level == y.level, "GaloisElt: level mismatch");
    return GaloisElt(x.level, x.level == 1 ? 0 : x.a * y.a % x.level);
  }
  GaloisElt inverse() const { return GaloisElt(level, level == 1 ? 0 : invmod(a, level)); }
  friend bool operator==(const GaloisElt& x, const GaloisElt& y) { return x.level == y.level && x.a == y.a; }
};

/// Inverse Frobenius at l on the prime-to-l part, identity on the l-part.
inline GaloisElt sigma_ell(std::int64_t ell, std::int64_t n) {
  require(is_prime(ell), "sigma_ell: ell must be prime");
  require(n >= 1, "sigma_ell: bad level");
  const std::int64_t m = prime_to_part(n, ell);
  const std::int64_t la = n / m;
  if (m == 1) return GaloisElt(n, 1);
  return GaloisElt(n, crt(1, la, invmod(ell, m), m));
}

/// Arithmetic Frobenius at l on the prime-to-l part, identity on the l-part.
inline GaloisElt frobenius_ell(std::int64_t ell, std::int64_t n) { return sigma_ell(ell, n).inverse(); }

// ---------------------------------------------------------------------------

/// Element of Q(zeta_n), stored as an integer numerator vector on the power
/// basis over a positive common denominator, kept in lowest terms.
class CycElt {
 public:
  CycElt() : CycElt(1) {}
  explicit CycElt(std::int64_t n) : n_(n), den_(1) {
    require(n >= 1, "CycElt: level must be >= 1");
    num_.assign(detail::cyclo(n).phi, Integer(0));
  }

  CycElt(std::int64_t n, std::vector<Integer> num, Integer den = 1) : n_(n), num_(std::move(num)), den_(std::move(den)) {
    require(n >= 1, "CycElt: level must be >= 1");
    require(den_ != 0, "CycElt: zero denominator");
    require(static_cast<int>(num_.size()) == detail::cyclo(n).phi, "CycElt: coefficient count must equal phi(n)");
    normalize();
  }

  static CycElt from_coeffs(std::int64_t n, const std::vector<Rational>& c) {
    require(static_cast<int>(c.size()) == detail::cyclo(n).phi, "CycElt: coefficient count must equal phi(n)");
    Integer d = 1;
    for (auto& q : c) d = lcm(d, denom(q));
    std::vector<Integer> num;
    num.reserve(c.size());
    for (auto& q : c) num.push_back(numer(q) * (d / denom(q)));
    return CycElt(n, std::move(num), d);
  }

  /// Any integer polynomial in zeta_n, reduced.
  static CycElt from_poly(std::int64_t n, std::vector<Integer> poly, Integer den = 1) {
    if (poly.empty()) poly.push_back(0);
    return CycElt(n, detail::reduce_mod_cyclo(std::move(poly), n), std::move(den));
  }

  static CycElt constant(std::int64_t n, const Rational& q) {
    CycElt x(n);
    x.num_[0] = numer(q);
    x.den_ = denom(q);
    return x;
  }
  static CycElt one(std::int64_t n) { return constant(n, 1); }

  static CycElt zeta(std::int64_t n, std::int64_t k = 1) {
    std::vector<Integer> v(n, Integer(0));
    v[mod(k, n)] = 1;
    return from_poly(n, std::move(v));
  }

  /// 1 - zeta_n^k.
  static CycElt one_minus_zeta(std::int64_t n, std::int64_t k = 1) {
    std::vector<Integer> v(n, Integer(0));
    v[0] += 1;
    v[mod(k, n)] -= 1;
    return from_poly(n, std::move(v));
  }

  std::int64_t level() const { return n_; }
  int phi() const { return static_cast<int>(num_.size()); }
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  Rational coeff(int i) const { return Rational(num_.at(i), den_); }
  std::vector<Rational> coeffs() const {
    std::vector<Rational> c;
    c.reserve(num_.size());
    for (auto& z : num_) c.emplace_back(z, den_);
    return c;
  }

  bool is_zero() const {
    for (auto& z : num_)
      if (z != 0) return false;
    return true;
  }
  bool is_integral() const { return den_ == 1; }
  bool is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
      if (num_[i] != 0) return false;
    return true;
  }
  bool is_one() const { return is_rational() && num_[0] == den_; }

  friend bool operator==(const CycElt& x, const CycElt& y) {
    return x.n_ == y.n_ && x.den_ == y.den_ && x.num_ == y.num_;
  }
  friend bool operator!=(const CycElt& x, const CycElt& y) { return !(x == y); }

  friend CycElt operator+(const CycElt& x, const CycElt& y) { return add(x, y, 1); }
  friend CycElt operator-(const CycElt& x, const CycElt& y) { return add(x, y, -1); }
  CycElt operator-() const {
    CycElt r = *this;
    for (auto& z : r.num_) z = -z;
    return r;
  }

  friend CycElt operator*(const CycElt& x, const CycElt& y) {
    require(x.n_ == y.n_, "CycElt: level mismatch (" + std::to_string(x.n_) + " vs " + std::to_string(y.n_) + ")");
    const int phi = x.phi();
    std::vector<Integer> prod(2 * phi - 1, Integer(0));
    for (int i = 0; i < phi; ++i) {
      if (x.num_[i] == 0) continue;
      const Integer& a = x.num_[i];
      for (int j = 0; j < phi; ++j)
        if (y.num_[j] != 0) prod[i + j] += a * y.num_[j];
    }
    return CycElt(x.n_, detail::reduce_mod_cyclo(std::move(prod), x.n_), x.den_ * y.den_);
  }

  CycElt scaled(const Rational& q) const {
    CycElt r = *this;
    for (auto& z : r.num_) z *= numer(q);
    r.den_ *= denom(q);
    r.normalize();
    return r;
  }

  /// Non-negative integer power by repeated squaring.
  CycElt pow(Integer e) const {
    require(e >= 0, "CycElt::pow: exponent must be non-negative (use inverse())");
    CycElt result = one(n_), base = *this;
    while (e > 0) {
      if ((e & 1) != 0) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < num_.size(); ++i) {
      if (i) s += ", ";
      s += to_string(Rational(num_[i], den_));
    }
    return s + "]@" + std::to_string(n_);
  }

 private:
  static CycElt add(const CycElt& x, const CycElt& y, int sign) {
    require(x.n_ == y.n_, "CycElt: level mismatch (" + std::to_string(x.n_) + " vs " + std::to_string(y.n_) + ")");
    Integer d = lcm(x.den_, y.den_);
    Integer fx = d / x.den_, fy = d / y.den_;
    std::vector<Integer> v(x.num_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = x.num_[i] * fx;
      if (sign > 0)
        v[i] += y.num_[i] * fy;
      else
        v[i] -= y.num_[i] * fy;
    }
    return CycElt(x.n_, std::move(v), d);
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& z : num_) z = -z;
    }
    if (den_ == 1) return;
    Integer g = den_;
    for (auto& z : num_) {
      if (g == 1) break;
      if (z != 0) g = gcd(g, z);
    }
    if (is_zero()) g = den_;
    if (g == 1) return;
    den_ /= g;
    for (auto& z : num_) z /= g;
  }

  std::int64_t n_;
  std::vector<Integer> num_;
  Integer den_;
};

// ---------------------------------------------------------------------------
// Galois action, coercion, traces and norms.

/// zeta_n -> zeta_n^a.
inline CycElt act(std::int64_t a, const CycElt& x) {
  const std::int64_t n = x.level();
  require(n == 1 || gcd64(a, n) == 1, "act: a must be a unit mod the level");
  if (n <= 2 || mod(a, n) == 1) return x;
  std::vector<Integer> v(n, Integer(0));
  const auto& num = x.numerators();
  const std::int64_t am = mod(a, n);
  for (std::size_t i = 0; i < num.size(); ++i)
    if (num[i] != 0) v[static_cast<std::int64_t>(i) * am % n] = num[i];
  return CycElt::from_poly(n, std::move(v), x.denominator());
}

inline CycElt act(const GaloisElt& g, const CycElt& x) {
  require(g.level == x.level(), "act: level mismatch");
  return act(g.a, x);
}

inline CycElt conj(const CycElt& x) { return act(x.level() - 1, x); }

/// View x in Q(zeta_m) through zeta_n = zeta_m^{m/n}.
inline CycElt coerce_up(const CycElt& x, std::int64_t m) {
  const std::int64_t n = x.level();
  require(m % n == 0, "coerce_up: level " + std::to_string(n) + " does not divide " + std::to_string(m));
  if (m == n) return x;
  const std::int64_t s = m / n;
  std::vector<Integer> v(m, Integer(0));
  const auto& num = x.numerators();
  for (std::size_t i = 0; i < num.size(); ++i) v[(static_cast<std::int64_t>(i) * s) % m] += num[i];
  return CycElt::from_poly(m, std::move(v), x.denominator());
}

namespace detail {

// Tr from level m to level m/l on a polynomial in zeta_m of length m.
inline std::vector<Integer> trace_step(const std::vector<Integer>& v, std::int64_t m, std::int64_t ell) {
  const std::int64_t mp = m / ell;
  std::vector<Integer> w(mp, Integer(0));
  if (mp % ell == 0) {
    for (std::int64_t k = 0; k < m; k += ell) w[k / ell] += v[k] * ell;
    return w;
  }
  // l does not divide m' : zeta_m = zeta_{m'}^s zeta_l^t with s*l + t*m' = 1
  std::int64_t s = invmod(ell % mp, mp);
  for (std::int64_t k = 0; k < m; ++k) {
    if (v[k] == 0) continue;
    std::int64_t pos = (k % mp) * s % mp;
    if (k % ell == 0)
      w[pos] += v[k] * (ell - 1);
    else
      w[pos] -= v[k];
  }
  return w;
}

}  // namespace detail

/// Field trace from Q(zeta_m) down to Q(zeta_n), n | m.
inline CycElt trace_down(const CycElt& x, std::int64_t n) {
  std::int64_t m = x.level();
  require(n >= 1 && m % n == 0, "trace_down: n must divide the level");
  std::vector<Integer> v(m, Integer(0));
  const auto& num = x.numerators();
  for (std::size_t i = 0; i < num.size(); ++i) v[i] = num[i];
  while (m != n) {
    std::int64_t ell = prime_divisors(m / n).front();
    v = detail::trace_step(v, m, ell);
    m /= ell;
  }
  return CycElt::from_poly(n, std::move(v), x.denominator());
}

/// Rewrite an element of Q(zeta_m) known to lie in Q(zeta_n); verified.
inline CycElt descend(const CycElt& y, std::int64_t n) {
  const std::int64_t m = y.level();
  require(m % n == 0, "descend: n must divide the level");
  if (m == n) return y;
  const std::int64_t deg = euler_phi(m) / euler_phi(n);
  CycElt x = trace_down(y, n).scaled(Rational(1, deg));
  if (coerce_up(x, m) != y) throw ConsistencyError("descend: element does not lie in Q(zeta_" + std::to_string(n) + ")");
  return x;
}

/// prod_{h in H} h(x) via the chain of H, and prod_{h != 1} h(x) alongside.
inline std::pair<CycElt, CycElt> chain_norm_and_adjugate(const CycElt& x, const SubgroupChain& ch) {
  CycElt nrm = x, adj = CycElt::one(x.level());
  const std::int64_t n = x.level();
  for (auto [h, k] : ch.steps) {
    // P_j = prod_{i<j} h^i(nrm); want P_{k-1} and P_k
    auto prefix = [&](std::int64_t j) {
      CycElt P = CycElt::one(n);
      std::int64_t done = 0;
      for (int bit = 62; bit >= 0; --bit) {
        if (done > 0) {
          P = P * act(powmod(h, done, n), P);
          done *= 2;
        }
        if ((j >> bit) & 1) {
          P = done == 0 ? nrm : P * act(powmod(h, done, n), nrm);
          done += 1;
        }
      }
      return P;
    };
    CycElt Pk1 = prefix(k - 1);
    CycElt Pk = Pk1 * act(powmod(h, k - 1, n), nrm);
    adj = adj * act(h, Pk1);
    nrm = std::move(Pk);
  }
  return {nrm, adj};
}

/// N^m_n(x) = prod over G^m_n, returned at level n.
inline CycElt norm_down(const CycElt& x, std::int64_t n) {
  const std::int64_t m = x.level();
  require(n >= 1 && m % n == 0, "norm_down: " + std::to_string(n) + " does not divide " + std::to_string(m));
  if (m == n) return x;
  auto ch = subgroup_chain(m, relative_group(m, n));
  return descend(chain_norm_and_adjugate(x, ch).first, n);
}

/// N_{Q(zeta_n)/Q}(x), exact.
inline Rational absolute_norm(const CycElt& x) {
  CycElt r = norm_down(x, 1);
  return r.coeff(0);
}

inline CycElt inverse(const CycElt& x) {
  require(!x.is_zero(), "inverse: zero element");
  const std::int64_t n = x.level();
  auto ch = subgroup_chain(n, units_mod(n));
  auto [nrm, adj] = chain_norm_and_adjugate(x, ch);
  ensure(nrm.is_rational(), "inverse: norm is not rational");
  return adj.scaled(1 / nrm.coeff(0));
}

/// x^e for any integer e.
inline CycElt power(const CycElt& x, const Integer& e) {
  if (e >= 0) return x.pow(e);
  return inverse(x).pow(-e);
}

// ---------------------------------------------------------------------------
// Reduction modulo primes and p-adic valuation.

inline FpPoly reduce_poly_mod(const IntPoly& f, std::int64_t ell) {
  std::vector<std::int64_t> c;
  Integer L(ell);
  for (auto& z : f) {
    Integer r = z % L;
    c.push_back(r.convert_to<std::int64_t>());
  }
  return FpPoly(ell, std::move(c));
}

/// Reduction of an l-integral element to F_l[x]/(Phi_n mod l).
inline FpPoly reduce_mod_ell(const CycElt& x, std::int64_t ell) {
  require(is_prime(ell), "reduce_mod_ell: ell must be prime");
  Integer L(ell);
  if (x.denominator() % L == 0)
    throw DomainError("reduce_mod_ell: denominator " + x.denominator().str() + " is divisible by " + std::to_string(ell));
  std::int64_t dinv = invmod((x.denominator() % L).convert_to<std::int64_t>(), ell);
  std::vector<std::int64_t> c;
  for (auto& z : x.numerators()) c.push_back(mod((z % L).convert_to<std::int64_t>() * dinv, ell));
  FpPoly phi = reduce_poly_mod(cyclotomic_polynomial(x.level()), ell);
  return FpPoly(ell, std::move(c)) % phi;
}

/// True iff x lies in every prime of Z[zeta_n] above l.
inline bool vanishes_at_all_primes_above(const CycElt& x, std::int64_t ell) {
  FpPoly r = reduce_mod_ell(x, ell);
  if (r.is_zero()) return true;
  FpPoly rad = reduce_poly_mod(cyclotomic_polynomial(x.level()), ell).radical();
  return (r % rad).is_zero();
}

/// Valuation at the prime above p of Q(zeta_{p^k}), normalised by v(1 - zeta) = 1.
inline std::int64_t valuation_at_p(const CycElt& x, std::int64_t p) {
  const std::int64_t n = x.level();
  require(is_prime(p), "valuation_at_p: p must be prime");
  auto base = prime_power_base(n);
  require(base && *base == p, "valuation_at_p: level must be a power of p");
  require(!x.is_zero(), "valuation_at_p: zero element");
  const int phi = x.phi();
  std::int64_t v = 0;
  for (Integer d = x.denominator(); d % p == 0; d /= p) v -= phi;
  const IntPoly cyc = cyclotomic_polynomial(n);  // cyc(1) = p
  std::vector<Integer> y = x.numerators();
  while (true) {
    Integer s = 0;
    for (auto& z : y) s += z;
    if (s % p != 0) break;
    // y' = y - (s/p) * Phi_n vanishes at 1; divide by (1 - x)
    Integer t = s / p;
    std::vector<Integer> w(phi + 1, Integer(0));
    for (int i = 0; i < phi; ++i) w[i] = y[i];
    for (int i = 0; i <= phi; ++i) w[i] -= t * cyc[i];
    // w = (1 - x) q  =>  q_0 = w_0, q_i = w_i + q_{i-1}
    std::vector<Integer> q(phi, Integer(0));
    Integer acc = 0;
    for (int i = 0; i < phi; ++i) {
      acc += w[i];
      q[i] = acc;
    }
    ensure(acc + w[phi] == 0, "valuation_at_p: inexact division by 1 - zeta");
    y = detail::reduce_mod_cyclo(std::move(q), n);
    ++v;
  }
  return v;
}

inline bool is_unit(const CycElt& x) {
  if (x.is_zero() || !x.is_integral()) return false;
  Rational nm = absolute_norm(x);
  return nm == 1 || nm == -1;
}

inline bool is_p_unit(const CycElt& x, std::int64_t p) {
  require(is_prime(p), "is_p_unit: p must be prime");
  if (x.is_zero() || !x.is_integral()) return false;
  Integer nm = boost::multiprecision::abs(numer(absolute_norm(x)));
  while (nm % p == 0) nm /= p;
  return nm == 1;
}

}  // namespace circdist

#endif  // CIRCDIST_CYCLOTOMIC_HPP
