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

#ifndef CIRCDIST_DISTRIBUTIONS_HPP
#define CIRCDIST_DISTRIBUTIONS_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "circdist/circular.hpp"
#include "circdist/cyclotomic.hpp"
#include "circdist/groupring.hpp"
#include "circdist/lattice.hpp"
#include "circdist/numeric.hpp"

namespace circdist {

// ---------------------------------------------------------------------------
// Supports.

using Support = std::set<std::int64_t>;

/// All divisors d > 1 of the given levels.
inline Support divisor_closure(const std::vector<std::int64_t>& levels) {
  Support s;
  for (auto n : levels) {
    require(n >= 2, "divisor_closure: levels must be >= 2");
    for (auto d : divisors(n))
      if (d > 1) s.insert(d);
  }
  return s;
}

inline bool is_divisor_closed(const Support& s) {
  for (auto n : s) {
    if (n < 2) return false;
    for (auto d : divisors(n))
      if (d > 1 && !s.count(d)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Towers: compatible families r_n in Z[G_n].

/// Either a global integer combination sum c_i [a_i] of automorphisms
/// zeta -> zeta^{a_i} (compatible at every level prime to the a_i), or an
/// element of Z[G_top] pushed down to the divisors of top.
class RTower {
 public:
  RTower() = default;

  static RTower comb(std::vector<std::pair<Integer, std::int64_t>> terms) {
    RTower r;
    for (auto& [c, a] : terms) {
      require(a != 0, "RTower: automorphism index must be nonzero");
      if (c != 0) r.terms_.emplace_back(c, a);
    }
    return r;
  }
  static RTower one() { return comb({{1, 1}}); }
  static RTower tau() { return comb({{1, -1}}); }
  static RTower one_plus_tau() { return comb({{1, 1}, {1, -1}}); }
  static RTower one_minus_tau() { return comb({{1, 1}, {-1, -1}}); }
  static RTower integer(const Integer& c) { return comb({{c, 1}}); }

  static RTower from_element(const GroupRingElt& x) {
    require(!x.plus(), "RTower::from_element: element must lie in Z[G_n]");
    RTower r;
    r.top_ = x.level();
    const auto& e = x.elements();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Rational& c = x.coeffs()[i];
      require(denom(c) == 1, "RTower::from_element: coefficients must be integers");
      if (c != 0) r.terms_.emplace_back(numer(c), e[i]);
    }
    return r;
  }

  const std::optional<std::int64_t>& top() const { return top_; }
  const std::vector<std::pair<Integer, std::int64_t>>& terms() const { return terms_; }

  bool covers(std::int64_t n) const {
    if (top_) return *top_ % n == 0;
    for (auto& t : terms_)
      if (gcd64(t.second, n) != 1) return false;
    return true;
  }

  GroupRingElt at(std::int64_t n) const {
    require(covers(n), "RTower: tower does not cover level " + std::to_string(n));
    GroupRingElt x(n, false);
    for (auto& [c, a] : terms_) {
      const std::int64_t idx = canonical_element(n, false, a);
      x.set_coeff(idx, x.coeff(idx) + Rational(c));
    }
    return x;
  }

  friend RTower operator*(const RTower& x, const RTower& y) {
    require(!x.top_ || !y.top_ || *x.top_ == *y.top_, "RTower: top levels differ");
    RTower r;
    r.top_ = x.top_ ? x.top_ : y.top_;
    std::map<std::int64_t, Integer> acc;
    for (auto& [c, a] : x.terms_)
      for (auto& [d, b] : y.terms_) {
        std::int64_t ab;
        if (r.top_)
          ab = mod(static_cast<std::int64_t>((static_cast<__int128>(a) * b) % *r.top_), *r.top_);
        else
          ab = a * b;
        acc[ab] += c * d;
      }
    for (auto& [a, c] : acc)
      if (c != 0) r.terms_.emplace_back(c, a);
    return r;
  }

 private:
  std::optional<std::int64_t> top_;
  std::vector<std::pair<Integer, std::int64_t>> terms_;
};

// ---------------------------------------------------------------------------
// Distribution tables.

class DistTable {
 public:
  DistTable() = default;

  /// Values as field elements; a circular form for a level is kept alongside
  /// when one is known, so that towers act without expanding products.
  DistTable(Support support, std::map<std::int64_t, CycElt> values,
            std::map<std::int64_t, CircularForm> forms = {})
      : support_(std::move(support)), values_(std::move(values)), forms_(std::move(forms)) {
    require(!support_.empty(), "DistTable: empty support");
    require(is_divisor_closed(support_), "DistTable: support is not divisor-closed");
    for (auto n : support_) {
      auto it = values_.find(n);
      require(it != values_.end(), "DistTable: missing value at level " + std::to_string(n));
      require(it->second.level() == n, "DistTable: value at " + std::to_string(n) + " has the wrong level");
      require(!it->second.is_zero(), "DistTable: zero value at level " + std::to_string(n));
    }
    require(values_.size() == support_.size(), "DistTable: value outside the support");
  }

  static DistTable from_forms(const Support& support, const std::map<std::int64_t, CircularForm>& forms) {
    std::map<std::int64_t, CycElt> values;
    for (auto& [n, f] : forms) values.emplace(n, f.materialize());
    return DistTable(support, std::move(values), forms);
  }

  const Support& support() const { return support_; }
  bool contains(std::int64_t n) const { return support_.count(n) > 0; }
  const CycElt& value(std::int64_t n) const {
    auto it = values_.find(n);
    require(it != values_.end(), "DistTable: level " + std::to_string(n) + " outside the support");
    return it->second;
  }
  const std::map<std::int64_t, CycElt>& values() const { return values_; }
  bool has_forms() const { return !forms_.empty() && forms_.size() == values_.size(); }
  const CircularForm* form(std::int64_t n) const {
    auto it = forms_.find(n);
    return it == forms_.end() ? nullptr : &it->second;
  }

  /// f(zeta_n^a) = sigma_a f(zeta_n).
  CycElt value_at(std::int64_t n, std::int64_t a) const { return act(a, value(n)); }

  /// Pointwise product on a common support.
  friend DistTable operator*(const DistTable& x, const DistTable& y) {
    require(x.support_ == y.support_, "DistTable: supports differ");
    std::map<std::int64_t, CycElt> v;
    std::map<std::int64_t, CircularForm> f;
    for (auto n : x.support_) {
      v.emplace(n, x.value(n) * y.value(n));
      if (x.form(n) && y.form(n)) f.emplace(n, *x.form(n) * *y.form(n));
    }
    if (f.size() != v.size()) f.clear();
    return DistTable(x.support_, std::move(v), std::move(f));
  }

 private:
  Support support_;
  std::map<std::int64_t, CycElt> values_;
  std::map<std::int64_t, CircularForm> forms_;
};

inline DistTable phi_table(const Support& s) {
  std::map<std::int64_t, CircularForm> forms;
  for (auto n : s) forms.emplace(n, CircularForm::one_minus_zeta(n));
  return DistTable::from_forms(s, forms);
}

inline void require_odd_prime_set(const std::set<std::int64_t>& pi) {
  for (auto p : pi) require(p > 2 && is_prime(p), "delta: " + std::to_string(p) + " is not an odd prime");
}

inline DistTable delta_table(const std::set<std::int64_t>& pi, const Support& s) {
  require_odd_prime_set(pi);
  std::map<std::int64_t, CircularForm> forms;
  for (auto n : s) {
    bool inside = true;
    for (auto ell : prime_divisors(n))
      if (!pi.count(ell)) inside = false;
    forms.emplace(n, CircularForm(n, inside ? -1 : 1));
  }
  return DistTable::from_forms(s, forms);
}

/// tau applied to every value.
inline DistTable conj_table(const DistTable& f) {
  std::map<std::int64_t, CycElt> v;
  std::map<std::int64_t, CircularForm> forms;
  for (auto n : f.support()) {
    v.emplace(n, conj(f.value(n)));
    if (f.form(n)) forms.emplace(n, f.form(n)->act(n - 1));
  }
  if (forms.size() != v.size()) forms.clear();
  return DistTable(f.support(), std::move(v), std::move(forms));
}

struct CheckResult {
  std::string check;
  std::vector<std::int64_t> levels;
  std::string witness;
  bool pass = true;
};

struct Report {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::vector<CheckResult> failures() const {
    std::vector<CheckResult> out;
    for (auto& c : checks)
      if (!c.pass) out.push_back(c);
    return out;
  }
  void add(std::string check, std::vector<std::int64_t> levels, bool pass, std::string witness = {}) {
    checks.push_back(CheckResult{std::move(check), std::move(levels), std::move(witness), pass});
  }
};

/// n -> f(n)^{r_n}.
inline DistTable power_by_tower(const DistTable& f, const RTower& r) {
  std::map<std::int64_t, CycElt> values;
  std::map<std::int64_t, CircularForm> forms;
  for (auto n : f.support()) {
    require(r.covers(n), "power_by_tower: tower does not cover level " + std::to_string(n));
    const GroupRingElt rn = r.at(n);
    if (const CircularForm* cf = f.form(n)) {
      CircularForm acc(n);
      for (std::size_t i = 0; i < rn.size(); ++i)
        if (rn.coeffs()[i] != 0) acc = acc * cf->act(rn.elements()[i]).pow(numer(rn.coeffs()[i]));
      forms.emplace(n, acc);
      values.emplace(n, acc.materialize());
    } else {
      CycElt acc = CycElt::one(n);
      for (std::size_t i = 0; i < rn.size(); ++i)
        if (rn.coeffs()[i] != 0) acc = acc * power(act(rn.elements()[i], f.value(n)), numer(rn.coeffs()[i]));
      values.emplace(n, acc);
    }
  }
  if (forms.size() != values.size()) forms.clear();
  return DistTable(f.support(), std::move(values), std::move(forms));
}

/// The norm relations: N^{ml}_m f(ml) = f(m) if l | m, f(m)^{1 - sigma_l} otherwise.
inline Report verify_relations(const DistTable& f) {
  Report rep;
  for (auto m : f.support()) {
    for (auto ml : f.support()) {
      if (ml <= m || ml % m != 0) continue;
      const std::int64_t ell = ml / m;
      if (!is_prime(ell)) continue;
      const CycElt lhs = norm_down(f.value(ml), m);
      CycElt rhs = f.value(m);
      if (m % ell != 0) rhs = rhs * inverse(act(sigma_ell(ell, m), rhs));
      const bool ok = lhs == rhs;
      rep.add("norm_relation", {m, ell}, ok,
              ok ? "" : "N^" + std::to_string(ml) + "_" + std::to_string(m) + "(f(" + std::to_string(ml) +
                            ")) differs from " + (m % ell ? "f(m)^(1-sigma_l)" : "f(m)"));
    }
  }
  return rep;
}

/// f(zeta_l zeta_n) == f(zeta_n) modulo every prime above l, for l prime to n.
/// One pair per level suffices: the Galois group permutes both the primes
/// above l and the pairs (zeta_l^u, zeta_n^v) transitively.
inline Report verify_strictness(const DistTable& f) {
  Report rep;
  for (auto n : f.support()) {
    for (auto nl : f.support()) {
      if (nl <= n || nl % n != 0) continue;
      const std::int64_t ell = nl / n;
      if (!is_prime(ell) || n % ell == 0) continue;
      // zeta_l zeta_n = zeta_{nl}^{n + l}
      const CycElt lhs = f.value_at(nl, n + ell);
      const CycElt diff = lhs - coerce_up(f.value(n), nl);
      try {
        const bool ok = vanishes_at_all_primes_above(diff, ell);
        rep.add("strictness", {n, ell}, ok,
                ok ? "" : "f(zeta_" + std::to_string(ell) + " zeta_" + std::to_string(n) + ") - f(zeta_" + std::to_string(n) +
                              ") is nonzero modulo a prime above " + std::to_string(ell));
      } catch (const DomainError&) {
        rep.add("strictness", {n, ell}, false, "value is not " + std::to_string(ell) + "-integral");
      }
    }
  }
  return rep;
}

struct TorsionClass {
  bool torsion_form = false;
  std::set<std::int64_t> pi;
  std::string str() const {
    if (!torsion_form) return "not torsion-form";
    std::string s = "delta({";
    bool first = true;
    for (auto p : pi) {
      s += (first ? "" : ",") + std::to_string(p);
      first = false;
    }
    return s + "})";
  }
};

inline TorsionClass classify_torsion(const DistTable& f) {
  for (auto& [n, v] : f.values())
    require(v.is_one() || v == CycElt::constant(n, -1),
            "classify_torsion: value at level " + std::to_string(n) + " is not +-1");
  TorsionClass out;
  for (auto n : f.support()) {
    auto pb = prime_power_base(n);
    if (pb && *pb != 2 && !f.value(n).is_one()) out.pi.insert(*pb);
  }
  for (auto n : f.support()) {
    bool inside = true;
    for (auto ell : prime_divisors(n))
      if (!out.pi.count(ell)) inside = false;
    const bool minus = !f.value(n).is_one();
    if (minus != inside) return TorsionClass{};
  }
  out.torsion_form = true;
  return out;
}

// ---------------------------------------------------------------------------
// Exponents against epsilon_n.

struct ExponentSolution {
  GroupRingElt projected;       // j in Q[G_n^+] e_n
  GroupRingElt representative;  // canonical element of j + Q I_n with least denominator
  Integer denominator = 1;      // least denominator over the coset j + Q I_n
  std::vector<std::pair<std::int64_t, int>> denominator_factors;
  IdealLattice annihilator;
};

/// Exact test u^d = epsilon_n^{d j}, d the common denominator of j.
inline bool verify_exponent(const CycElt& u, const GroupRingElt& j) {
  require(j.plus() && j.level() == u.level(), "verify_exponent: exponent must lie in Q[G_n^+] at the level of u");
  const Integer d = j.common_denominator();
  IntVector x;
  for (auto& q : j.coeffs()) x.push_back(numer(q) * (d / denom(q)));
  auto [pos, neg] = epsilon_power_parts(u.level(), j.elements(), x);
  return power(u, d) * neg == pos;
}

namespace detail {

inline Eigen::MatrixXd epsilon_log_matrix(std::int64_t n, const std::vector<std::int64_t>& elems) {
  const std::size_t k = elems.size();
  Eigen::MatrixXd L(k, k);
  const long double pi = std::acos(-1.0L);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t g = 0; g < k; ++g) {
      long double s = std::sin(pi * static_cast<long double>(elems[j] * elems[g] % n) / n);
      L(j, g) = static_cast<double>(std::log(4 * s * s));
    }
  return L;
}

// Least-denominator point of the affine space j0 + Q I, or the zero vector if j0 = 0.
inline std::pair<RatVector, Integer> coset_representative(const RatVector& j0, const IdealLattice& I) {
  const std::size_t k = j0.size();
  Rational yy = 0;
  for (auto& q : j0) yy += q * q;
  if (yy == 0) return {RatVector(k, Rational(0)), Integer(1)};
  // Lambda = Z^k meets Q j0 + Q I; phi(s) = <j0, s> / <j0, j0> vanishes on I
  IntMatrix gens = I.hnf;
  gens.push_back(primitive_integer(j0));
  IntMatrix S = saturate(gens, k);
  std::vector<Rational> vals;
  for (auto& s : S) {
    Rational t = 0;
    for (std::size_t i = 0; i < k; ++i) t += j0[i] * Rational(s[i]);
    vals.push_back(t / yy);
  }
  // g = gcd of the values, with g = sum w_i vals_i
  Integer D = 1;
  for (auto& v : vals) D = lcm(D, denom(v));
  Integer g = 0;
  std::vector<Integer> w(vals.size(), Integer(0));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    Integer vi = numer(vals[i]) * (D / denom(vals[i]));
    if (vi == 0) continue;
    Integer gg, s, t;
    detail::xgcd(g, vi, gg, s, t);
    for (auto& x : w) x *= s;
    w[i] += t;
    g = gg;
  }
  ensure(g != 0, "coset_representative: degenerate functional");
  const Rational gq = Rational(g) / Rational(D);
  RatVector x(k, Rational(0));
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t c = 0; c < k; ++c) x[c] += Rational(w[i]) * Rational(S[i][c]);
  for (auto& q : x) q /= gq;
  return {x, numer(gq)};
}

}  // namespace detail

/// Solve u = epsilon_n^j in Q (x) V(n). Returns nullopt when exact verification
/// fails at every denominator bound 2, 4, ..., 2^12.
inline std::optional<ExponentSolution> solve_exponent(const CycElt& u) {
  const std::int64_t n = u.level();
  require(n >= 2, "solve_exponent: level must be >= 2");
  require(!u.is_zero(), "solve_exponent: zero element");
  require(conj(u) == u, "solve_exponent: element is not fixed by complex conjugation");
  require(is_totally_positive(u), "solve_exponent: element is not totally positive");
  const auto elems = group_elements(n, true);
  const std::size_t k = elems.size();
  const GroupRingElt e = idempotent_e_n(n);
  const IdealLattice I = annihilator_In_formula(n);

  const auto logs = log_abs_embeddings(u, elems);
  Eigen::VectorXd b(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) b(static_cast<Eigen::Index>(i)) = static_cast<double>(logs[i]);
  const Eigen::MatrixXd L = detail::epsilon_log_matrix(n, elems);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(L);
  cod.setThreshold(1e-9);
  Eigen::VectorXd x = cod.solve(b);
  // x is the minimum-norm solution; e_n is an orthogonal projection, so apply it anyway
  Eigen::MatrixXd E(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  {
    RatMatrix m = multiplication_matrix(e);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < k; ++c) E(i, c) = m[i][c].convert_to<double>();
  }
  const Eigen::VectorXd y = E * x;

  for (std::int64_t bound = 2; bound <= 4096; bound *= 2) {
    std::vector<Rational> c;
    bool close = true;
    for (std::size_t i = 0; i < k; ++i) {
      c.push_back(best_rational(y(static_cast<Eigen::Index>(i)), bound));
      if (std::fabs(c.back().convert_to<double>() - y(static_cast<Eigen::Index>(i))) > 1e-6) close = false;
    }
    if (!close) continue;
    GroupRingElt j0(n, true, c);
    if (e * j0 != j0) continue;
    auto [rep, den] = detail::coset_representative(j0.coeffs(), I);
    // canonical representative modulo den^{-1} I
    IntVector scaled;
    for (auto& q : rep) scaled.push_back(numer(q * Rational(den)));
    scaled = reduce_mod_lattice(lattice_scale(I.hnf, den), scaled);
    std::vector<Rational> rc;
    for (auto& z : scaled) rc.push_back(Rational(z) / Rational(den));
    GroupRingElt r(n, true, rc);
    if (!verify_exponent(u, r)) continue;
    ExponentSolution sol{j0, r, den, {}, I};
    if (den > 1) sol.denominator_factors = factor(den.convert_to<std::int64_t>());
    return sol;
  }
  return std::nullopt;
}

/// A representative of j + Q I_n with denominator prime to p, if one exists.
inline std::optional<GroupRingElt> p_integral_representative(const ExponentSolution& s, std::int64_t p) {
  if (s.denominator % p != 0) return s.representative;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Euler system conditions.

/// eps(r') = f(zeta_m prod_{l | r'} zeta_l) for r' | r.
inline CycElt euler_element(const DistTable& f, std::int64_t m, std::int64_t rp) {
  const std::int64_t level = m * rp;
  std::int64_t t = rp;
  for (auto ell : prime_divisors(rp)) t += level / ell;
  return f.value_at(level, t);
}

inline Report check_euler_conditions(const DistTable& f, std::int64_t m, std::int64_t r) {
  require(m >= 2, "check_euler_conditions: m must be >= 2");
  require(r >= 1, "check_euler_conditions: r must be positive");
  for (auto [ell, e] : factor(r)) {
    require(e == 1, "check_euler_conditions: r must be squarefree");
    require(ell % m == 1, "check_euler_conditions: prime " + std::to_string(ell) + " is not 1 mod m");
  }
  for (auto d : divisors(m * r))
    if (d > 1) require(f.contains(d), "check_euler_conditions: level " + std::to_string(d) + " missing from the support");
  Report rep;
  for (auto rp : divisors(r)) {
    const CycElt eps = euler_element(f, m, rp);
    // ES1: eps lies in Q(mr') by construction
    rep.add("ES1", {m, rp}, eps.level() == m * rp);
    if (rp > 1) {
      const bool unit = is_unit(eps);
      rep.add("ES2", {m, rp}, unit, unit ? "" : "value is not a unit");
    }
    for (auto ell : prime_divisors(rp)) {
      const std::int64_t lo = m * (rp / ell);
      const CycElt below = euler_element(f, m, rp / ell);
      // norm descent with the arithmetic Frobenius at l on Q(mr'/l)
      const CycElt lhs = norm_down(eps, lo);
      const CycElt rhs = act(frobenius_ell(ell, lo), below) * inverse(below);
      const bool ok3 = lhs == rhs;
      rep.add("ES3", {m, rp, ell}, ok3, ok3 ? "" : "norm of eps(r') differs from eps(r'/l)^(Fr_l - 1)");
      bool ok4;
      std::string w;
      try {
        ok4 = vanishes_at_all_primes_above(eps - coerce_up(below, m * rp), ell);
        if (!ok4) w = "eps(r') - eps(r'/l) is nonzero modulo a prime above " + std::to_string(ell);
      } catch (const DomainError&) {
        ok4 = false;
        w = "value is not " + std::to_string(ell) + "-integral";
      }
      rep.add("ES4", {m, rp, ell}, ok4, w);
    }
  }
  return rep;
}

}  // namespace circdist

#endif  // CIRCDIST_DISTRIBUTIONS_HPP
