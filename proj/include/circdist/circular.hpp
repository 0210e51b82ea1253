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

#ifndef CIRCDIST_CIRCULAR_HPP
#define CIRCDIST_CIRCULAR_HPP

#include <map>
#include <utility>
#include <vector>

#include "circdist/cyclotomic.hpp"

namespace circdist {

/// Element of Z[x]/(x^n - 1). Multiplying by 1 - x^k or x^k costs O(n), which
/// makes long products of circular units cheap before one final reduction.
class CyclicAccumulator {
 public:
  explicit CyclicAccumulator(std::int64_t n) : n_(n), v_(n, Integer(0)) { v_[0] = 1; }

  std::int64_t level() const { return n_; }

  void mul_one_minus_zeta(std::int64_t k) {
    k = mod(k, n_);
    if (k == 0) {
      std::fill(v_.begin(), v_.end(), Integer(0));
      return;
    }
    std::vector<Integer> w = v_;
    for (std::int64_t i = 0; i < n_; ++i) w[(i + k) % n_] -= v_[i];
    v_.swap(w);
  }

  void mul_zeta(std::int64_t k) {
    k = mod(k, n_);
    if (k == 0) return;
    std::rotate(v_.rbegin(), v_.rbegin() + k, v_.rend());
  }

  void mul_integer(const Integer& c) {
    for (auto& z : v_) z *= c;
  }

  /// Multiply by (1 - x^k)^e, e >= 0.
  void mul_one_minus_zeta_pow(std::int64_t k, Integer e) {
    for (; e > 0; --e) mul_one_minus_zeta(k);
  }

  CycElt value() const { return CycElt::from_poly(n_, v_); }

 private:
  std::int64_t n_;
  std::vector<Integer> v_;
};

/// c * zeta_n^k * prod_a (1 - zeta_n^a)^{e_a}, with a in [1, n).
/// Multiplicatively closed and stable under the Galois action; used to carry
/// distribution values built from 1 - zeta without expanding them.
class CircularForm {
 public:
  CircularForm() = default;
  explicit CircularForm(std::int64_t n, Rational c = 1) : n_(n), c_(std::move(c)) {
    require(n >= 1, "CircularForm: bad level");
    require(c_ != 0, "CircularForm: zero constant");
  }

  static CircularForm one_minus_zeta(std::int64_t n, std::int64_t a = 1) {
    CircularForm f(n);
    f.add_factor(a, 1);
    return f;
  }

  std::int64_t level() const { return n_; }
  const Rational& constant() const { return c_; }
  std::int64_t zeta_exponent() const { return k_; }
  const std::map<std::int64_t, Integer>& factors() const { return e_; }

  void add_factor(std::int64_t a, const Integer& e) {
    a = mod(a, n_);
    if (e == 0) return;
    if (a == 0) throw DomainError("CircularForm: factor 1 - 1 = 0");
    auto& slot = e_[a];
    slot += e;
    if (slot == 0) e_.erase(a);
  }

  friend CircularForm operator*(const CircularForm& x, const CircularForm& y) {
    require(x.n_ == y.n_, "CircularForm: level mismatch");
    CircularForm r = x;
    r.c_ *= y.c_;
    r.k_ = mod(r.k_ + y.k_, r.n_);
    for (auto& [a, e] : y.e_) r.add_factor(a, e);
    return r;
  }

  CircularForm pow(const Integer& t) const {
    CircularForm r(n_);
    if (t == 0) return r;
    const unsigned e = boost::multiprecision::abs(t).convert_to<unsigned>();
    r.c_ = Rational(boost::multiprecision::pow(numer(c_), e), boost::multiprecision::pow(denom(c_), e));
    if (t < 0) r.c_ = 1 / r.c_;
    Integer kk = Integer(k_) * t % n_;
    r.k_ = mod(kk.convert_to<std::int64_t>(), n_);
    for (auto& [a, e] : e_) r.e_[a] = e * t;
    return r;
  }

  CircularForm act(std::int64_t g) const {
    require(n_ == 1 || gcd64(g, n_) == 1, "CircularForm::act: not a unit");
    CircularForm r(n_, c_);
    r.k_ = mod(k_ * g, n_);
    for (auto& [a, e] : e_) r.add_factor(a * mod(g, n_), e);
    return r;
  }

  /// Expand to a field element (one inversion at most).
  CycElt materialize() const {
    CyclicAccumulator pos(n_), neg(n_);
    bool has_neg = false;
    for (auto& [a, e] : e_) {
      if (e > 0)
        pos.mul_one_minus_zeta_pow(a, e);
      else {
        neg.mul_one_minus_zeta_pow(a, -e);
        has_neg = true;
      }
    }
    pos.mul_zeta(k_);
    CycElt v = pos.value();
    if (has_neg) v = v * inverse(neg.value());
    return v.scaled(c_);
  }

 private:
  std::int64_t n_ = 1;
  Rational c_ = 1;
  std::int64_t k_ = 0;
  std::map<std::int64_t, Integer> e_;
};

/// epsilon_n = (1 - zeta_n)(1 - zeta_n^{-1}).
inline CycElt epsilon(std::int64_t n) {
  return CycElt::one_minus_zeta(n) * CycElt::one_minus_zeta(n, n - 1);
}

/// epsilon_n^x for x indexed by the elements of G_n^+ (given as `elems`),
/// returned as a quotient of two algebraic integers num / den.
inline std::pair<CycElt, CycElt> epsilon_power_parts(std::int64_t n, const std::vector<std::int64_t>& elems,
                                                     const std::vector<Integer>& x) {
  require(elems.size() == x.size(), "epsilon_power_parts: size mismatch");
  CyclicAccumulator pos(n), neg(n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    CyclicAccumulator& acc = x[i] > 0 ? pos : neg;
    Integer e = boost::multiprecision::abs(x[i]);
    acc.mul_one_minus_zeta_pow(elems[i], e);
    acc.mul_one_minus_zeta_pow(n - elems[i], e);
  }
  return {pos.value(), neg.value()};
}

inline bool epsilon_power_is_one(std::int64_t n, const std::vector<std::int64_t>& elems, const std::vector<Integer>& x) {
  auto [num, den] = epsilon_power_parts(n, elems, x);
  return num == den;
}

inline CycElt epsilon_power(std::int64_t n, const std::vector<std::int64_t>& elems, const std::vector<Integer>& x) {
  auto [num, den] = epsilon_power_parts(n, elems, x);
  if (den.is_one()) return num;
  return num * inverse(den);
}

}  // namespace circdist

#endif  // CIRCDIST_CIRCULAR_HPP
