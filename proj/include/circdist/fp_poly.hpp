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

#ifndef CIRCDIST_FP_POLY_HPP
#define CIRCDIST_FP_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circdist/arith.hpp"

namespace circdist {

/// Dense polynomial over the prime field F_p, ascending coefficients, no
/// trailing zeros (the zero polynomial has an empty coefficient vector).
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::int64_t p, std::vector<std::int64_t> c) : p_(p), c_(std::move(c)) {
    require(is_prime(p_), "FpPoly: modulus must be prime");
    for (auto& x : c_) x = circdist::mod(x, p_);
    trim();
  }

  static FpPoly constant(std::int64_t p, std::int64_t v) { return FpPoly(p, {v}); }
  static FpPoly monomial(std::int64_t p, int k) {
    std::vector<std::int64_t> c(k + 1, 0);
    c[k] = 1;
    return FpPoly(p, std::move(c));
  }

  std::int64_t prime() const { return p_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return FpPoly(a.p_, std::move(c));
  }

  friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
    return FpPoly(a.p_, std::move(c));
  }

  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    }
    return FpPoly(a.p_, std::move(c));
  }

  FpPoly scaled(std::int64_t s) const {
    auto c = c_;
    for (auto& x : c) x = x * circdist::mod(s, p_) % p_;
    return FpPoly(p_, std::move(c));
  }

  FpPoly monic() const { return is_zero() ? *this : scaled(invmod(lead(), p_)); }

  /// Quotient and remainder; b must be nonzero.
  static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    require(!b.is_zero(), "FpPoly::divmod: division by zero");
    const std::int64_t p = a.p_;
    if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
    std::vector<std::int64_t> r = a.c_;
    std::vector<std::int64_t> q(a.c_.size() - b.c_.size() + 1, 0);
    const std::int64_t inv = invmod(b.lead(), p);
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      std::int64_t f = r[i] * inv % p;
      if (f == 0) continue;
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] = circdist::mod(r[i - db + j] - f * b.c_[j], p);
    }
    return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
  }

  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

  FpPoly derivative() const {
    std::vector<std::int64_t> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(static_cast<std::int64_t>(i % p_) * c_[i]);
    return FpPoly(p_, std::move(c));
  }

  /// Monic gcd (zero if both inputs are zero).
  static FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
      FpPoly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Product of the distinct monic irreducible factors. Handles factors whose
  /// multiplicity is divisible by p, where f / gcd(f, f') alone is not enough.
  FpPoly radical() const {
    require(!is_zero(), "FpPoly::radical: zero polynomial");
    if (degree() == 0) return FpPoly(p_, {1});
    FpPoly d = derivative();
    if (d.is_zero()) return pth_root().radical();
    FpPoly g = gcd(*this, d);
    FpPoly w = (*this / g).monic();
    if (g.degree() == 0) return w;
    FpPoly rg = g.radical();
    return (w * rg / gcd(w, rg)).monic();
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += std::to_string(c_[i]);
      if (i > 0) s += i == 1 ? "*x" : "*x^" + std::to_string(i);
    }
    return s;
  }

 private:
  // f(x) = h(x^p) = h(x)^p over F_p.
  FpPoly pth_root() const {
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < c_.size(); i += static_cast<std::size_t>(p_)) c.push_back(c_[i]);
    return FpPoly(p_, std::move(c));
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::int64_t p_ = 2;
  std::vector<std::int64_t> c_;
};

}  // namespace circdist

#endif  // CIRCDIST_FP_POLY_HPP
