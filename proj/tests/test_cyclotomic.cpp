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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "circdist/cyclotomic.hpp"
#include "circdist/numeric.hpp"

using namespace circdist;

namespace {

std::mt19937_64 rng(20260115);

// Oracle: Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d by plain long division.
IntPoly oracle_cyclotomic(std::int64_t n) {
  IntPoly num(n + 1, Integer(0));
  num[0] = -1;
  num[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    IntPoly den = oracle_cyclotomic(d);
    IntPoly q(num.size() - den.size() + 1, Integer(0));
    for (std::int64_t i = static_cast<std::int64_t>(num.size()) - 1; i >= static_cast<std::int64_t>(den.size()) - 1; --i) {
      Integer c = num[i] / den.back();
      q[i - den.size() + 1] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[i - den.size() + 1 + j] -= c * den[j];
    }
    for (auto& z : num) REQUIRE(z == 0);
    num = q;
  }
  return num;
}

CycElt random_elt(std::int64_t n, int range = 3, bool allow_den = true) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Rational> c;
  for (int i = 0; i < euler_phi(n); ++i) c.emplace_back(d(rng), allow_den ? (1 + (d(rng) & 1)) : 1);
  return CycElt::from_coeffs(n, c);
}

CycElt nonzero_elt(std::int64_t n, int range = 3) {
  CycElt x = random_elt(n, range);
  while (x.is_zero()) x = random_elt(n, range);
  return x;
}

// Oracle: product of all conjugates in (Z/m)^x fixing zeta_n, one at a time.
CycElt naive_relative_norm(const CycElt& x, std::int64_t n) {
  CycElt r = CycElt::one(x.level());
  for (auto a : relative_group(x.level(), n)) r = r * act(a, x);
  return r;
}

std::complex<long double> eval_ld(const CycElt& x, std::int64_t a) {
  const long double pi = std::acos(-1.0L);
  std::complex<long double> s = 0;
  auto c = x.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    long double ang = 2 * pi * static_cast<long double>((static_cast<std::int64_t>(i) * a) % x.level()) / x.level();
    s += static_cast<long double>(c[i].convert_to<double>()) * std::polar(1.0L, ang);
  }
  return s;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match the division recursion", "[cyclotomic]") {
  REQUIRE(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  REQUIRE(cyclotomic_polynomial(4) == IntPoly{1, 0, 1});
  IntPoly phi12 = oracle_cyclotomic(12);
  REQUIRE(phi12 == IntPoly{1, 0, -1, 0, 1});
  REQUIRE(cyclotomic_polynomial(12) == phi12);
  for (std::int64_t n = 1; n <= 120; ++n) {
    INFO("n = " << n);
    REQUIRE(cyclotomic_polynomial(n) == oracle_cyclotomic(n));
  }
  // Phi_105 is the first with a coefficient of absolute value 2
  auto p105 = cyclotomic_polynomial(105);
  REQUIRE(p105[7] == -2);
}

TEST_CASE("Galois action", "[cyclotomic]") {
  REQUIRE(act(3, CycElt::zeta(4)) == -CycElt::zeta(4));
  CycElt x = random_elt(15);
  REQUIRE(act(1, x) == x);
  REQUIRE(act(2, CycElt::one_minus_zeta(5)) == CycElt::one_minus_zeta(5, 2));
  REQUIRE_THROWS_AS(act(GaloisElt(5, 2), CycElt::zeta(4)), DomainError);
  REQUIRE_THROWS_AS(act(2, CycElt::zeta(4)), DomainError);
  // composition corresponds to multiplication mod n
  for (std::int64_t n : {7, 12, 20, 21}) {
    CycElt y = random_elt(n);
    for (auto a : units_mod(n))
      for (auto b : units_mod(n)) REQUIRE(act(a, act(b, y)) == act(a * b % n, y));
  }
  REQUIRE(GaloisElt::tau(12).a == 11);
}

TEST_CASE("field arithmetic", "[cyclotomic]") {
  for (std::int64_t n : {3, 5, 8, 12, 15, 24}) {
    CycElt x = nonzero_elt(n), y = random_elt(n), z = random_elt(n);
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x * inverse(x) == CycElt::one(n));
    REQUIRE(power(x, -3) * x.pow(3) == CycElt::one(n));
    // zeta^n = 1 and sum of primitive powers is mu(n)
    REQUIRE(CycElt::zeta(n).pow(n) == CycElt::one(n));
  }
  REQUIRE(CycElt::zeta(12, 12 + 5) == CycElt::zeta(12, 5));
  REQUIRE(CycElt::one_minus_zeta(2) == CycElt::constant(2, 2));
}

TEST_CASE("norm_down examples", "[cyclotomic]") {
  REQUIRE(norm_down(CycElt::one_minus_zeta(4), 2) == CycElt::constant(2, 2));
  REQUIRE(norm_down(CycElt::one_minus_zeta(8), 4) == CycElt::one_minus_zeta(4));
  REQUIRE(norm_down(CycElt::one_minus_zeta(4), 2) == CycElt::one_minus_zeta(2));
  // N^15_5(1 - zeta_15) * sigma_3(1 - zeta_5) == 1 - zeta_5
  CycElt lhs = norm_down(CycElt::one_minus_zeta(15), 5);
  REQUIRE(lhs * act(sigma_ell(3, 5), CycElt::one_minus_zeta(5)) == CycElt::one_minus_zeta(5));
  REQUIRE_THROWS_AS(norm_down(CycElt::one_minus_zeta(15), 4), DomainError);
}

TEST_CASE("norm_down agrees with the naive product and is transitive", "[cyclotomic][property]") {
  for (std::int64_t M = 2; M <= 60; ++M) {
    CycElt x = random_elt(M, 2);
    for (auto m : divisors(M)) {
      CycElt nm = norm_down(x, m);
      REQUIRE(coerce_up(nm, M) == naive_relative_norm(x, m));
      for (auto n : divisors(m)) {
        INFO(n << " | " << m << " | " << M);
        REQUIRE(norm_down(x, n) == norm_down(nm, n));
      }
    }
  }
}

TEST_CASE("norms are Galois equivariant", "[cyclotomic][property]") {
  for (std::int64_t m : {12, 20, 24, 30, 36}) {
    CycElt x = random_elt(m, 2);
    for (auto n : divisors(m)) {
      for (auto g : units_mod(m)) REQUIRE(norm_down(act(g, x), n) == act(mod(g, n), norm_down(x, n)));
    }
  }
}

TEST_CASE("compatible roots", "[cyclotomic][property]") {
  for (std::int64_t n = 1; n <= 30; ++n)
    for (std::int64_t m = 1; m * n <= 90; ++m) REQUIRE(coerce_up(CycElt::zeta(n), m * n) == CycElt::zeta(m * n, m));
}

TEST_CASE("distribution relation for 1 - zeta", "[cyclotomic][property]") {
  for (std::int64_t m = 1; m <= 30; ++m) {
    for (std::int64_t ell = 2; m * ell <= 200; ++ell) {
      if (!is_prime(ell)) continue;
      INFO("m = " << m << ", l = " << ell);
      CycElt N = norm_down(CycElt::one_minus_zeta(m * ell), m);
      CycElt fm = CycElt::one_minus_zeta(m);
      if (m % ell == 0)
        REQUIRE(N == fm);
      else if (m == 1)
        REQUIRE(N == CycElt::constant(1, ell));  // prod over primitive l-th roots
      else
        REQUIRE(N * act(sigma_ell(ell, m), fm) == fm);
    }
  }
}

TEST_CASE("sigma_ell", "[cyclotomic]") {
  REQUIRE(sigma_ell(2, 4).a == 1);
  REQUIRE(sigma_ell(3, 5).a == 2);
  auto s = sigma_ell(3, 45);
  REQUIRE(s.a == 37);
  // oracle: a = 1 mod 9 and 3a = 1 mod 5
  REQUIRE(s.a % 9 == 1);
  REQUIRE((3 * s.a) % 5 == 1);
  for (std::int64_t n = 2; n <= 80; ++n)
    for (std::int64_t ell : {2, 3, 5, 7}) {
      auto a = sigma_ell(ell, n).a;
      std::int64_t m = prime_to_part(n, ell);
      REQUIRE(mod(a - 1, n / m) == 0);
      REQUIRE(mod(a * ell, m) == mod(1, m));
    }
}

TEST_CASE("reduction modulo primes", "[cyclotomic]") {
  REQUIRE(reduce_mod_ell(CycElt::constant(3, 2), 5) == FpPoly::constant(5, 2));
  FpPoly r = reduce_mod_ell(CycElt::one_minus_zeta(3), 3);
  REQUIRE(r == FpPoly(3, {1, 2}));
  // Phi_3 = (x - 1)^2 mod 3, so 1 - x is nilpotent of order 2
  FpPoly phi3 = reduce_poly_mod(cyclotomic_polynomial(3), 3);
  REQUIRE(phi3 == FpPoly(3, {1, 1, 1}));
  REQUIRE(((r * r) % phi3).is_zero());
  REQUIRE_THROWS_AS(reduce_mod_ell(CycElt::constant(3, Rational(1, 2)), 2), DomainError);
}

TEST_CASE("radical over F_l equals Phi of the l-free part", "[cyclotomic][property]") {
  for (std::int64_t N = 2; N <= 120; ++N) {
    for (std::int64_t ell : {2, 3, 5, 7, 11}) {
      std::int64_t np = prime_to_part(N, ell);
      FpPoly expect = reduce_poly_mod(cyclotomic_polynomial(np), ell).monic();
      INFO("N = " << N << ", l = " << ell);
      REQUIRE(reduce_poly_mod(cyclotomic_polynomial(N), ell).radical() == expect);
    }
  }
  // the textbook f / gcd(f, f') is wrong here: Phi_9 = (x - 1)^6 mod 3
  FpPoly f = reduce_poly_mod(cyclotomic_polynomial(9), 3);
  REQUIRE(f.derivative().is_zero());
  REQUIRE(f.radical() == FpPoly(3, {-1, 1}));
}

TEST_CASE("vanishing at all primes above l", "[cyclotomic]") {
  REQUIRE(vanishes_at_all_primes_above(CycElt(7), 3));
  // zeta_3 zeta_4 = zeta_12^7
  CycElt x = CycElt::one_minus_zeta(12, 7) - coerce_up(CycElt::one_minus_zeta(4), 12);
  REQUIRE(vanishes_at_all_primes_above(x, 3));
  REQUIRE_FALSE(vanishes_at_all_primes_above(CycElt::constant(3, 2), 5));
  REQUIRE(vanishes_at_all_primes_above(CycElt::one_minus_zeta(9), 3));
  REQUIRE_FALSE(vanishes_at_all_primes_above(CycElt::one_minus_zeta(9), 2));
  // ideal property
  for (std::int64_t n : {9, 12, 15, 20, 21}) {
    for (auto ell : prime_divisors(n)) {
      CycElt a = CycElt::one_minus_zeta(n, n / ell);  // 1 - zeta_l is in every prime above l
      REQUIRE(vanishes_at_all_primes_above(a, ell));
      for (int t = 0; t < 5; ++t) REQUIRE(vanishes_at_all_primes_above(a * random_elt(n, 3, false), ell));
    }
  }
}

TEST_CASE("valuation at p", "[cyclotomic]") {
  REQUIRE(valuation_at_p(CycElt::one_minus_zeta(9), 3) == 1);
  REQUIRE(valuation_at_p(CycElt::constant(9, 3), 3) == 6);
  // oracle: 3 / (1 - zeta_9)^6 is a unit (norm +-1)
  CycElt u = CycElt::constant(9, 3) * inverse(CycElt::one_minus_zeta(9).pow(6));
  REQUIRE(u.is_integral());
  REQUIRE(boost::multiprecision::abs(absolute_norm(u)) == 1);
  // (1 - zeta_5)^{2 + sigma_2}: augmentation 3
  CycElt w = CycElt::one_minus_zeta(5).pow(2) * act(2, CycElt::one_minus_zeta(5));
  REQUIRE(valuation_at_p(w, 5) == 3);
  REQUIRE(valuation_at_p(CycElt::constant(25, Rational(2, 5)), 5) == -20);
  REQUIRE_THROWS_AS(valuation_at_p(CycElt(9), 3), DomainError);
  for (std::int64_t n : {4, 8, 9, 25, 27}) {
    std::int64_t p = *prime_power_base(n);
    for (int t = 0; t < 10; ++t) {
      CycElt x = nonzero_elt(n), y = nonzero_elt(n);
      REQUIRE(valuation_at_p(x * y, p) == valuation_at_p(x, p) + valuation_at_p(y, p));
    }
  }
}

TEST_CASE("units and p-units", "[cyclotomic]") {
  REQUIRE(is_unit(CycElt::one_minus_zeta(12)));
  REQUIRE_FALSE(is_unit(CycElt::one_minus_zeta(9)));
  REQUIRE(is_p_unit(CycElt::one_minus_zeta(9), 3));
  REQUIRE_FALSE(is_unit(CycElt::constant(5, 2)));
  REQUIRE_FALSE(is_p_unit(CycElt::constant(5, 2), 3));
  // oracle: absolute norm of 1 - zeta_n is Phi_n(1)
  for (std::int64_t n = 2; n <= 60; ++n) {
    Integer phi1 = 0;
    for (auto& c : cyclotomic_polynomial(n)) phi1 += c;
    REQUIRE(absolute_norm(CycElt::one_minus_zeta(n)) == Rational(phi1));
  }
  // numeric oracle for the absolute norm
  for (std::int64_t n : {7, 12, 16, 21}) {
    CycElt x = nonzero_elt(n);
    long double prod = 1;
    for (auto a : units_mod(n)) prod *= std::abs(eval_ld(x, a));
    long double exact = std::fabs(absolute_norm(x).convert_to<long double>());
    REQUIRE(std::fabs(prod - exact) <= 1e-9L * std::max<long double>(1, exact));
  }
}

TEST_CASE("total positivity", "[cyclotomic]") {
  CycElt eps = CycElt::one_minus_zeta(12) * CycElt::one_minus_zeta(12, 11);
  REQUIRE(is_totally_positive(eps));
  REQUIRE_FALSE(is_totally_positive(CycElt::constant(7, -1)));
  REQUIRE(is_totally_positive(CycElt::constant(7, 2)));
  REQUIRE_THROWS_AS(is_totally_positive(CycElt::zeta(7)), DomainError);
  // zeta + zeta^-1 has mixed signs at level 7
  CycElt c = CycElt::zeta(7) + CycElt::zeta(7, 6);
  REQUIRE_FALSE(is_totally_positive(c));
  // 2 cos(2 pi / 7) - 1.2469796 is about 3.7e-9: needs more than a naive check
  CycElt near = c - CycElt::constant(7, Rational(12469796, 10000000));
  auto signs = certified_real_signs(near, plus_representatives(7));
  REQUIRE(signs == std::vector<int>{1, -1, -1});
}

TEST_CASE("boolean outputs do not depend on the embedding", "[cyclotomic][property]") {
  for (std::int64_t n : {7, 9, 12, 15, 20}) {
    for (int t = 0; t < 8; ++t) {
      CycElt x = random_elt(n);
      x = x + conj(x);
      if (x.is_zero()) continue;
      bool base = is_totally_positive(x);
      for (auto tw : units_mod(n)) REQUIRE(is_totally_positive(x, tw) == base);
    }
    CycElt e = CycElt::one_minus_zeta(n) * CycElt::one_minus_zeta(n, n - 1);
    for (auto tw : units_mod(n)) REQUIRE(is_totally_positive(e, tw));
  }
}
