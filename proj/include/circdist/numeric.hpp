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

#ifndef CIRCDIST_NUMERIC_HPP
#define CIRCDIST_NUMERIC_HPP

#include <cmath>
#include <vector>

#include <gmp.h>
#include <mpfr.h>

#include "circdist/cyclotomic.hpp"

// Complex embeddings of Q(zeta_n) evaluated in MPFR with an explicit error
// radius. zeta_n is sent to exp(2 pi i t a / n) where a runs over units and t
// is a fixed "twist" unit (t = 1 is the standard embedding).

namespace circdist {

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline double log2_abs(const Integer& z) {
  if (z == 0) return -1e300;
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.backend().data());
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

}  // namespace detail

/// cos/sin(2 pi k / n) for k = 0..n-1 at a fixed working precision.
class EmbeddingTable {
 public:
  EmbeddingTable(std::int64_t n, mpfr_prec_t prec) : n_(n), prec_(prec) {
    detail::Mpfr pi(prec + 32), ang(prec + 32);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    cos_.reserve(n);
    sin_.reserve(n);
    for (std::int64_t k = 0; k < n; ++k) {
      mpfr_mul_si(ang.get(), pi.get(), 2 * k, MPFR_RNDN);
      mpfr_div_si(ang.get(), ang.get(), n, MPFR_RNDN);
      detail::Mpfr c(prec), s(prec);
      mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
      cos_.push_back(c);
      sin_.push_back(s);
    }
  }
  std::int64_t level() const { return n_; }
  mpfr_prec_t precision() const { return prec_; }
  const detail::Mpfr& cos_at(std::int64_t k) const { return cos_[mod(k, n_)]; }
  const detail::Mpfr& sin_at(std::int64_t k) const { return sin_[mod(k, n_)]; }

 private:
  std::int64_t n_;
  mpfr_prec_t prec_;
  std::vector<detail::Mpfr> cos_, sin_;
};

/// Value of one embedding with a rigorous error bound on each component.
struct EmbeddedValue {
  detail::Mpfr re{64}, im{64};
  double log2_radius = 0;  // |error| <= 2^log2_radius on re and on im

  double re_approx() const { return mpfr_get_d(re.get(), MPFR_RNDN); }
  double im_approx() const { return mpfr_get_d(im.get(), MPFR_RNDN); }
};

/// log2 of sum |coefficients| of the numerator (0 for the zero element).
inline double log2_coeff_sum(const CycElt& x) {
  double mx = -1e300;
  for (auto& z : x.numerators()) mx = std::max(mx, detail::log2_abs(z));
  if (mx < -1e299) return 0;
  return mx + std::log2(static_cast<double>(x.phi()));
}

/// Evaluate sigma_{t*a}(d*x) where d is the denominator of x (numerator only).
inline EmbeddedValue embed_numerator(const CycElt& x, std::int64_t a, const EmbeddingTable& tab,
                                     std::int64_t twist = 1) {
  require(tab.level() == x.level(), "embed: table level mismatch");
  const std::int64_t n = x.level();
  const mpfr_prec_t P = tab.precision();
  EmbeddedValue out;
  mpfr_set_prec(out.re.get(), P);
  mpfr_set_prec(out.im.get(), P);
  mpfr_set_zero(out.re.get(), 1);
  mpfr_set_zero(out.im.get(), 1);
  detail::Mpfr c(P), t(P);
  const auto& num = x.numerators();
  const std::int64_t ta = mod(twist * a, n);
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i] == 0) continue;
    mpfr_set_z(c.get(), num[i].backend().data(), MPFR_RNDN);
    std::int64_t k = static_cast<std::int64_t>(i) * ta % n;
    mpfr_mul(t.get(), c.get(), tab.cos_at(k).get(), MPFR_RNDN);
    mpfr_add(out.re.get(), out.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), c.get(), tab.sin_at(k).get(), MPFR_RNDN);
    mpfr_add(out.im.get(), out.im.get(), t.get(), MPFR_RNDN);
  }
  // table entries are within 2^{-P+2}; every coefficient conversion, product
  // and partial sum adds at most S * 2^{-P}
  out.log2_radius = log2_coeff_sum(x) + std::log2(static_cast<double>(x.phi()) + 16.0) - static_cast<double>(P) + 3.0;
  return out;
}

/// Precision (bits) beyond which every nonzero embedding of the numerator of
/// x is certified to exceed 2^margin times the error radius. Uses
/// |sigma(y)| >= |N(y)| / prod_{other} |sigma'(y)| >= S^{-(phi-1)} for integral y != 0.
inline mpfr_prec_t separation_precision(const CycElt& x, int margin) {
  double ls = std::max(1.0, log2_coeff_sum(x));
  double bits = static_cast<double>(x.phi() + 1) * ls + std::log2(static_cast<double>(x.phi()) + 16.0) + margin + 16.0;
  return static_cast<mpfr_prec_t>(std::ceil(bits));
}

/// Sign of the real part of each embedding a in `reps`, certified. x must be
/// nonzero at every embedding (true for any nonzero field element).
inline std::vector<int> certified_real_signs(const CycElt& x, const std::vector<std::int64_t>& reps,
                                             std::int64_t twist = 1) {
  require(!x.is_zero(), "certified_real_signs: zero element");
  const mpfr_prec_t cap = separation_precision(x, 4);
  mpfr_prec_t P = 128 + static_cast<mpfr_prec_t>(log2_coeff_sum(x));
  while (true) {
    EmbeddingTable tab(x.level(), P);
    std::vector<int> signs;
    bool ok = true;
    for (auto a : reps) {
      EmbeddedValue v = embed_numerator(x, a, tab, twist);
      // |re| >= 2^{exp-1}; certified once that clears the radius
      if (mpfr_zero_p(v.re.get()) || static_cast<double>(mpfr_get_exp(v.re.get())) - 1.0 <= v.log2_radius + 1) {
        ok = false;
        break;
      }
      signs.push_back(mpfr_sgn(v.re.get()) > 0 ? 1 : -1);
    }
    if (ok) return signs;
    if (P > cap) throw PrecisionError("certified_real_signs: precision cap exceeded");
    P *= 2;
  }
}

/// log|sigma_{t a}(x)| for each a, with absolute error below 2^-60.
inline std::vector<long double> log_abs_embeddings(const CycElt& x, const std::vector<std::int64_t>& reps,
                                                   std::int64_t twist = 1) {
  require(!x.is_zero(), "log_abs_embeddings: zero element");
  const mpfr_prec_t cap = separation_precision(x, 70);
  mpfr_prec_t P = 192 + static_cast<mpfr_prec_t>(log2_coeff_sum(x));
  const long double log_den = static_cast<long double>(detail::log2_abs(x.denominator())) * std::log(2.0L);
  while (true) {
    EmbeddingTable tab(x.level(), P);
    std::vector<long double> out;
    bool ok = true;
    detail::Mpfr m(P), t(P);
    for (auto a : reps) {
      EmbeddedValue v = embed_numerator(x, a, tab, twist);
      mpfr_sqr(m.get(), v.re.get(), MPFR_RNDN);
      mpfr_sqr(t.get(), v.im.get(), MPFR_RNDN);
      mpfr_add(m.get(), m.get(), t.get(), MPFR_RNDN);
      mpfr_sqrt(m.get(), m.get(), MPFR_RNDN);
      // need |z| > 2^{radius + 64} for the log to be accurate to 2^-60
      if (mpfr_zero_p(m.get()) || static_cast<double>(mpfr_get_exp(m.get())) - 1.0 <= v.log2_radius + 66) {
        ok = false;
        break;
      }
      mpfr_log(t.get(), m.get(), MPFR_RNDN);
      out.push_back(static_cast<long double>(mpfr_get_ld(t.get(), MPFR_RNDN)) - log_den);
    }
    if (ok) return out;
    if (P > cap) throw PrecisionError("log_abs_embeddings: precision cap exceeded");
    P *= 2;
  }
}

/// Representatives of G_n^+ = (Z/n)^x / {+-1}: min(a, n - a), ascending.
inline std::vector<std::int64_t> plus_representatives(std::int64_t n) {
  std::vector<std::int64_t> reps;
  if (n <= 2) return {1};
  for (std::int64_t a = 1; 2 * a <= n; ++a)
    if (gcd64(a, n) == 1) reps.push_back(a);
  return reps;
}

/// True iff x is tau-fixed and every real embedding of x is positive.
inline bool is_totally_positive(const CycElt& x, std::int64_t twist = 1) {
  require(!x.is_zero(), "is_totally_positive: zero element");
  require(conj(x) == x, "is_totally_positive: element is not fixed by complex conjugation");
  require(gcd64(twist, x.level()) == 1 || x.level() == 1, "is_totally_positive: twist must be a unit");
  for (int s : certified_real_signs(x, plus_representatives(x.level()), twist))
    if (s < 0) return false;
  return true;
}

}  // namespace circdist

#endif  // CIRCDIST_NUMERIC_HPP
