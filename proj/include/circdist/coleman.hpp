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

#ifndef CIRCDIST_COLEMAN_HPP
#define CIRCDIST_COLEMAN_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circdist/circular.hpp"
#include "circdist/distributions.hpp"
#include "circdist/groupring.hpp"

namespace circdist {

/// A computation that ran but could not produce the requested object.
class ComputationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// kappa digits.

struct KappaEntry {
  int n = 0;
  std::int64_t level = 0;
  GroupRingElt a_n;        // in Q[G_{mp^n}^+], p-integral
  GroupRingElt projected;  // image in Q[G_m^+]
  std::map<int, std::pair<std::int64_t, std::int64_t>> digits;  // k -> (|a_n|_k, |-a_n|_k)
  std::optional<IdealLattice> annihilator;                      // I_{mp^n}, when a_n was solved for
};

struct KappaDigits {
  std::int64_t m = 0;
  std::int64_t p = 0;
  std::vector<KappaEntry> entries;
};

/// |x|_k at depth n: the trivial coefficient of x reduced modulo p^{n-k}.
inline std::int64_t kappa_digit(const GroupRingElt& projected, std::int64_t p, int n, int k) {
  require(k >= 0 && k < n, "kappa_digit: need 0 <= k < n");
  return residue_mod(projected.trivial_coefficient(), ipow(p, n - k));
}

inline void fill_digits(KappaEntry& e, std::int64_t p, const std::vector<int>& k_range) {
  for (int k : k_range) {
    if (k >= e.n) continue;
    e.digits[k] = {kappa_digit(e.projected, p, e.n, k), kappa_digit(-e.projected, p, e.n, k)};
  }
}

inline KappaEntry kappa_entry(const DistTable& f, std::int64_t m, std::int64_t p, int n, const std::vector<int>& k_range) {
  const std::int64_t level = m * ipow(p, n);
  require(f.contains(level), "kappa_digits: level " + std::to_string(level) + " missing from the support");
  auto sol = solve_exponent(f.value(level));
  if (!sol) throw ComputationFailure("kappa_digits: no exponent found at level " + std::to_string(level));
  auto rep = p_integral_representative(*sol, p);
  if (!rep)
    throw ComputationFailure("kappa_digits: no p-integral representative found at level " + std::to_string(level));
  KappaEntry e{n, level, *rep, rep->project(m, true), {}, sol->annihilator};
  fill_digits(e, p, k_range);
  return e;
}

/// a_n with f(mp^n) = epsilon_{mp^n}^{a_n} for n = 1..N; the table values are
/// taken as elements of V(mp^n) directly.
inline KappaDigits kappa_digits(const DistTable& f, std::int64_t m, std::int64_t p, int N, const std::vector<int>& k_range) {
  require(m >= 2, "kappa_digits: m must be >= 2");
  require(is_prime(p), "kappa_digits: p must be prime");
  require(N >= 1, "kappa_digits: depth must be positive");
  for (int k : k_range) require(k >= 0, "kappa_digits: k must be non-negative");
  KappaDigits out{m, p, {}};
  for (int n = 1; n <= N; ++n) out.entries.push_back(kappa_entry(f, m, p, n, k_range));
  return out;
}

/// Digits from given projected coefficients (entry i has depth i + 1).
inline KappaDigits kappa_from_projected(std::int64_t m, std::int64_t p, const std::vector<GroupRingElt>& projected,
                                        const std::vector<int>& k_range) {
  KappaDigits out{m, p, {}};
  for (std::size_t i = 0; i < projected.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    require(projected[i].level() == m && projected[i].plus(), "kappa_from_projected: element not in Q[G_m^+]");
    KappaEntry e{n, m * ipow(p, n), projected[i], projected[i], {}, std::nullopt};
    fill_digits(e, p, k_range);
    out.entries.push_back(std::move(e));
  }
  return out;
}

struct KVerdict {
  int k = 0;
  std::int64_t threshold = 0;
  std::vector<std::int64_t> plus_digits, minus_digits;
  std::int64_t max_plus = 0, max_minus = 0;
  bool bounded_plus = false, bounded_minus = false;
  int n_min = 0, n_max = 0;
  bool bounded() const { return bounded_plus || bounded_minus; }
};

struct BoundednessVerdict {
  std::int64_t m = 0, p = 0;
  std::vector<KVerdict> per_k;
  static constexpr bool evidence_only = true;
};

/// Digits counted as bounded at k when every observed value stays below
/// p^{ceil((n_max - k) / 2)}. Finite-range evidence only.
inline BoundednessVerdict boundedness_report(const KappaDigits& d, const std::vector<int>& k_range) {
  BoundednessVerdict v{d.m, d.p, {}};
  int n_max = 0;
  for (auto& e : d.entries) n_max = std::max(n_max, e.n);
  for (int k : k_range) {
    KVerdict kv;
    kv.k = k;
    kv.n_max = n_max;
    kv.n_min = k + 1;
    kv.threshold = ipow(d.p, (n_max - k + 1) / 2);
    for (auto& e : d.entries) {
      auto it = e.digits.find(k);
      if (it == e.digits.end()) continue;
      kv.plus_digits.push_back(it->second.first);
      kv.minus_digits.push_back(it->second.second);
      kv.max_plus = std::max(kv.max_plus, it->second.first);
      kv.max_minus = std::max(kv.max_minus, it->second.second);
    }
    require(!kv.plus_digits.empty(), "boundedness_report: no entries above k = " + std::to_string(k));
    kv.bounded_plus = kv.max_plus < kv.threshold;
    kv.bounded_minus = kv.max_minus < kv.threshold;
    v.per_k.push_back(std::move(kv));
  }
  return v;
}

// ---------------------------------------------------------------------------
// The norm-compatible family epsilon_{qp^a}^{Pi_a}.

struct NcndLevel {
  int a = 0;
  std::int64_t level = 0;
  GroupRingElt pi;  // Pi_a in Z[G_{qp^a}^+]
  CycElt value;
};

struct NcndFamily {
  std::int64_t p = 0, q = 0;
  std::vector<NcndLevel> levels;
  std::vector<NcndLevel> alternative;  // same family built with the section g -> g + qp^b
  std::vector<bool> alternative_value_equal;
  Report checks;
};

/// Pi_a = sum_{b=1}^{a-1} T_b, T_b lifting the norm element of G_{qp^b}^+ by
/// g -> g (smallest non-negative representatives) or by g -> g + qp^b.
inline GroupRingElt ncnd_pi(std::int64_t p, std::int64_t q, int a, bool alternative_section = false) {
  const std::int64_t L = q * ipow(p, a);
  GroupRingElt pi(L, true);
  for (int b = 1; b < a; ++b) {
    const std::int64_t lb = q * ipow(p, b);
    for (auto g : group_elements(lb, true)) {
      const std::int64_t lift = alternative_section ? g + lb : g;
      pi.set_coeff(lift, pi.coeff(lift) + 1);
    }
  }
  return pi;
}

namespace detail {

inline std::vector<NcndLevel> ncnd_levels(std::int64_t p, std::int64_t q, int a_max, bool alternative) {
  std::vector<NcndLevel> out;
  for (int a = 2; a <= a_max; ++a) {
    const std::int64_t L = q * ipow(p, a);
    GroupRingElt pi = ncnd_pi(p, q, a, alternative);
    CycElt v = epsilon_power(L, pi.elements(), pi.integer_coeffs());
    out.push_back(NcndLevel{a, L, pi, v});
  }
  return out;
}

inline bool norm_compatible(const std::vector<NcndLevel>& lv, Report& rep, const std::string& name) {
  bool all = true;
  for (std::size_t i = 0; i + 1 < lv.size(); ++i) {
    const bool ok = norm_down(lv[i + 1].value, lv[i].level) == lv[i].value;
    rep.add(name, {lv[i + 1].level, lv[i].level}, ok, ok ? "" : "norm of the upper value differs");
    all = all && ok;
  }
  return all;
}

}  // namespace detail

/// Values epsilon_{qp^a}^{Pi_a} for a = 2..a_max with exact checks: the norm
/// element T_a kills epsilon_{qp^a}, consecutive values are norm-compatible,
/// and the same holds for the family built from a second section.
inline NcndFamily ncnd_family(std::int64_t p, std::int64_t q, int a_max) {
  require(is_prime(p) && p > 2, "ncnd_family: p must be an odd prime");
  require(is_prime(q) && q > 2, "ncnd_family: q must be an odd prime");
  require(p != q, "ncnd_family: p and q must differ");
  require(a_max >= 3, "ncnd_family: a_max must be >= 3");
  NcndFamily fam{p, q, detail::ncnd_levels(p, q, a_max, false), detail::ncnd_levels(p, q, a_max, true), {}, {}};
  for (auto& lv : fam.levels) {
    const auto elems = group_elements(lv.level, true);
    const bool killed = epsilon_power_is_one(lv.level, elems, IntVector(elems.size(), Integer(1)));
    fam.checks.add("norm_element_kills_epsilon", {lv.level}, killed, killed ? "" : "epsilon^{T_a} != 1");
  }
  detail::norm_compatible(fam.levels, fam.checks, "norm_compatibility");
  Report alt;
  const bool alt_ok = detail::norm_compatible(fam.alternative, alt, "norm_compatibility");
  fam.checks.add("section_independence", {fam.levels.front().level, fam.levels.back().level}, alt_ok,
                 alt_ok ? "" : "family from the alternative section is not norm-compatible");
  for (std::size_t i = 0; i < fam.levels.size(); ++i)
    fam.alternative_value_equal.push_back(fam.levels[i].value == fam.alternative[i].value);
  return fam;
}

// ---------------------------------------------------------------------------
// Valuations at prime-power levels.

struct ValuationReport {
  std::map<std::int64_t, std::int64_t> valuations;  // p^n -> valuation of f(p^n) at the prime above p
  bool constant = false;
  std::optional<std::int64_t> value;
};

inline ValuationReport valuation_constancy(const DistTable& f) {
  ValuationReport r;
  for (auto n : f.support()) {
    auto pb = prime_power_base(n);
    if (pb) r.valuations[n] = valuation_at_p(f.value(n), *pb);
  }
  require(r.valuations.size() >= 2, "valuation_constancy: need at least two prime-power levels");
  r.constant = true;
  for (auto& [n, v] : r.valuations)
    if (v != r.valuations.begin()->second) r.constant = false;
  if (r.constant) r.value = r.valuations.begin()->second;
  return r;
}

}  // namespace circdist

#endif  // CIRCDIST_COLEMAN_HPP
