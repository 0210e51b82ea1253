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

// Acceptance run: one PASS/FAIL line per criterion; exits 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "circdist/coleman.hpp"
#include "circdist/json_io.hpp"

using namespace circdist;

namespace {

// Pinned parameters.
constexpr double kRelationsSeconds = 60.0;  // criterion 1 runtime target
constexpr std::uint64_t kSeed = 20260101;   // criteria 6 and 11
constexpr int kRoundTrips = 50;             // criterion 6
constexpr std::int64_t kRoundTripMaxLevel = 36;
constexpr int kTowerRange = 3;              // coefficients of random towers lie in [-3, 3]
constexpr int kKappaDepth = 5;              // criterion 7
constexpr int kKappaMaxK = 3;

struct Line {
  bool pass = true;
  std::string detail;
};

Line& fail(Line& l, const std::string& why) {
  if (l.pass) l.detail = why;
  l.pass = false;
  return l;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string levels_str(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

Support range_closure(std::int64_t hi, std::vector<std::int64_t> extra = {}) {
  for (std::int64_t n = 2; n <= hi; ++n) extra.push_back(n);
  return divisor_closure(extra);
}

Line criterion1() {
  Line l;
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = verify_relations(phi_table(range_closure(30, {60, 72, 90, 120})));
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << r.checks.size() << " relations, " << r.failures().size() << " failures, " << std::fixed << std::setprecision(1)
     << secs << " s";
  l.detail = os.str();
  if (!r.all_pass()) fail(l, "failure at " + levels_str(r.failures().front().levels));
  if (secs >= kRelationsSeconds) fail(l, os.str() + " exceeds the runtime target");
  return l;
}

Line criterion2() {
  Line l;
  const Support s = range_closure(120);
  const Report phi = verify_strictness(phi_table(s));
  if (!phi.all_pass()) return fail(l, "phi fails at " + levels_str(phi.failures().front().levels));

  const Report d3 = verify_strictness(delta_table({3}, divisor_closure({15})));
  bool witness = false;
  for (auto& c : d3.failures()) witness = witness || c.levels == std::vector<std::int64_t>{3, 5};
  if (!witness) return fail(l, "delta({3}) has no witness at (3, 5)");

  // delta_Pi with Pi = odd primes <= 13 fails exactly at pairs (n, l) with
  // l > 13 prime and every prime of n in Pi, e.g. (3, 17); with every odd
  // prime of the range in Pi it passes.
  const Report d13 = verify_strictness(delta_table({3, 5, 7, 11, 13}, s));
  std::size_t low = 0;
  for (auto& c : d13.failures())
    if (c.levels[1] <= 13) ++low;
  if (low != 0) return fail(l, "delta(odd primes <= 13) fails at some l <= 13");
  std::set<std::int64_t> all_odd;
  for (std::int64_t q = 3; q <= 60; ++q)
    if (is_prime(q)) all_odd.insert(q);
  const Report dall = verify_strictness(delta_table(all_odd, s));
  if (!dall.all_pass()) return fail(l, "delta(all odd primes) fails at " + levels_str(dall.failures().front().levels));
  l.detail = std::to_string(phi.checks.size()) + " pairs for phi; delta({3}) witness (3, 5); delta(odd <= 13) clean for l <= 13, " +
             std::to_string(d13.failures().size()) + " failures at l > 13 (first " +
             levels_str(d13.failures().empty() ? std::vector<std::int64_t>{} : d13.failures().front().levels) +
             "); delta(all odd primes) clean";
  return l;
}

Line criterion3() {
  Line l;
  int compared = 0;
  for (std::int64_t n = 2; n <= 40; ++n) {
    if (euler_phi(n) > 16) continue;
    ++compared;
    if (annihilator_In_formula(n) != annihilator_In_oracle(n)) return fail(l, "formula and oracle differ at n = " + std::to_string(n));
  }
  for (std::int64_t n : {3, 4, 5, 7, 8, 9, 16, 25})
    if (annihilator_In_formula(n).rank() != 0) return fail(l, "I_" + std::to_string(n) + " is nonzero");
  const auto norm = GroupRingElt::subgroup_sum(12, true, group_elements(12, true));
  if (annihilator_In_formula(12) != ideal_generated_by(12, true, {norm})) return fail(l, "I_12 is not generated by the norm element");
  l.detail = std::to_string(compared) + " levels compared; I_n = 0 at 3,4,5,7,8,9,16,25; I_12 = (sum g)";
  return l;
}

Line criterion4() {
  Line l;
  const std::vector<std::pair<std::int64_t, std::int64_t>> eq{{3, 3}, {4, 2}, {4, 3}, {5, 3}, {6, 2},
                                                              {6, 5}, {9, 3}, {10, 7}, {12, 5}, {15, 7}};
  for (auto [n, ell] : eq) {
    const auto img = project_annihilator(n * ell, n, annihilator_of_mu(n * ell, n * ell));
    if (img != annihilator_of_mu(n, n)) return fail(l, "equality fails at " + levels_str({n, ell}));
  }
  for (std::int64_t n : {3, 5}) {
    const auto img = project_annihilator(2 * n, n, annihilator_of_mu(2 * n, 2 * n));
    const auto ann = annihilator_of_mu(n, n);
    if (!lattice_contains(ann.hnf, img.hnf) || index_of_sublattice(ann, img) != 2)
      return fail(l, "no index-2 inclusion at " + levels_str({n, 2}));
  }
  for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{{24, 12}, {36, 12}})
    if (project_annihilator(m, n, annihilator_Tn(m, true)) != annihilator_Tn(n, true))
      return fail(l, "T* projection differs at " + levels_str({m, n}));
  l.detail = "10 equalities, index 2 at (3,2) and (5,2), T* projections at (24,12) and (36,12)";
  return l;
}

Line criterion5() {
  Line l;
  std::string d;
  for (auto [m, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{12, 3}, {15, 5}, {20, 5}}) {
    const int b0 = image_claim_b0(m, p);
    for (int b : {b0, b0 + 1}) {
      const ImageClaim c = image_is_p_times_I(m, p, b);
      if (c != ImageClaim::holds)
        return fail(l, "(" + std::to_string(m) + ", " + std::to_string(p) + ") at b = " + std::to_string(b) + ": " + to_string(c));
    }
    d += (d.empty() ? "" : ", ") + std::string("b0(") + std::to_string(m) + "," + std::to_string(p) + ") = " + std::to_string(b0);
  }
  l.detail = d;
  return l;
}

Line criterion6() {
  Line l;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::int64_t> level(3, kRoundTripMaxLevel);
  std::uniform_int_distribution<int> coef(-kTowerRange, kTowerRange);
  int mutations = 0;
  for (int t = 0; t < kRoundTrips; ++t) {
    const std::int64_t n = level(rng);
    const auto elems = group_elements(n, true);
    IntVector r;
    for (std::size_t i = 0; i < elems.size(); ++i) r.push_back(coef(rng));
    const GroupRingElt rg = GroupRingElt::from_integers(n, true, r);
    const CycElt u = epsilon_power(n, elems, r);
    const auto sol = solve_exponent(u);
    const std::string where = "n = " + std::to_string(n) + ", r = " + rg.str();
    if (!sol) return fail(l, "no solution at " + where);
    if (!sol->annihilator.contains(sol->representative - rg)) return fail(l, "j - r outside I_n at " + where);
    if (!verify_exponent(u, sol->representative)) return fail(l, "exact check rejects the solution at " + where);
    std::uniform_int_distribution<std::size_t> pos(0, elems.size() - 1);
    GroupRingElt bad = sol->representative;
    const std::int64_t g = elems[pos(rng)];
    bad.set_coeff(g, bad.coeff(g) + 1 + (t % 3));
    if (sol->annihilator.contains(bad - rg)) continue;  // the corruption landed back in the coset
    ++mutations;
    if (verify_exponent(u, bad)) return fail(l, "exact check accepts a corrupted exponent at " + where);
  }
  l.detail = std::to_string(kRoundTrips) + " round trips, " + std::to_string(mutations) + " mutations rejected";
  return l;
}

Line criterion7() {
  Line l;
  // trivial coefficients at m = 4, 3, 5: r1 -> 1, 1, 1; r2 -> 1, 1, 1; r3 -> 1, 1, 2
  const std::vector<std::pair<std::string, RTower>> towers{
      {"one", RTower::one()},
      {"s7 + s11 - s13", RTower::comb({{1, 7}, {1, 11}, {-1, 13}})},
      {"2 - s7", RTower::comb({{2, 1}, {-1, 7}})}};
  std::vector<int> ks;
  for (int k = 1; k <= kKappaMaxK; ++k) ks.push_back(k);
  int digits = 0;
  for (auto [m, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{4, 3}, {3, 2}, {5, 3}}) {
    const Support s = divisor_closure({m * ipow(p, kKappaDepth)});
    for (auto& [name, r] : towers) {
      const std::string where = name + " at (m, p) = (" + std::to_string(m) + ", " + std::to_string(p) + ")";
      const DistTable f = power_by_tower(phi_table(s), RTower::one_plus_tau() * r);
      const KappaDigits d = kappa_digits(f, m, p, kKappaDepth, ks);
      const Rational c = r.at(m).project(m, true).trivial_coefficient();
      for (auto& e : d.entries)
        for (auto& [k, pm] : e.digits) {
          ++digits;
          if (pm.first != residue_mod(c, ipow(p, e.n - k)) || pm.second != residue_mod(-c, ipow(p, e.n - k)))
            return fail(l, "digit mismatch for " + where);
        }
      const BoundednessVerdict v = boundedness_report(d, ks);
      for (auto& kv : v.per_k) {
        if (!kv.bounded()) return fail(l, "not bounded at k = " + std::to_string(kv.k) + " for " + where);
        // the plus digits settle on c
        const auto& pd = kv.plus_digits;
        if (pd.size() >= 2 && pd[pd.size() - 1] != pd[pd.size() - 2]) return fail(l, "digits did not stabilize for " + where);
      }
    }
  }
  l.detail = std::to_string(digits) + " digits matched; bounded at every k <= 3 (evidence only)";
  return l;
}

Line criterion8() {
  Line l;
  for (auto [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 5}, {5, 3}}) {
    const NcndFamily f = ncnd_family(p, q, 3);
    for (auto& c : f.checks.checks)
      if (!c.pass) return fail(l, c.check + " fails at " + levels_str(c.levels));
  }
  l.detail = "norm compatibility, epsilon^T = 1 and the second section's family at (3,5), (5,3)";
  return l;
}

Line criterion9() {
  Line l;
  const Support s = divisor_closure({3, 4, 9, 5, 25, 8});
  const std::vector<std::int64_t> levels{3, 4, 9, 5, 25, 8};
  const std::vector<RTower> towers{RTower::one(), RTower::integer(4), RTower::comb({{2, 1}, {1, 7}, {-1, 11}, {1, 13}}),
                                   RTower::comb({{-3, 7}, {1, 1}})};
  for (auto& r : towers) {
    const Integer aug = numer(r.at(9).augmentation());
    const ValuationReport v = valuation_constancy(power_by_tower(phi_table(s), r));
    for (auto n : levels)
      if (Integer(v.valuations.at(n)) != aug) return fail(l, "valuation at " + std::to_string(n) + " differs from the augmentation");
    const ValuationReport w = valuation_constancy(power_by_tower(phi_table(s), r) * delta_table({3, 5}, s));
    for (auto n : levels)
      if (Integer(w.valuations.at(n)) != aug) return fail(l, "delta changes the valuation at " + std::to_string(n));
  }
  const ValuationReport d = valuation_constancy(delta_table({3}, s));
  if (!d.constant || *d.value != 0) return fail(l, "delta({3}) has nonzero valuation");
  l.detail = "4 towers (augmentations 1, 4, 3, -2), with and without delta({3,5})";
  return l;
}

Line criterion10() {
  Line l;
  const Support s = divisor_closure({3 * 7 * 13});
  const Report good = check_euler_conditions(phi_table(s), 3, 7 * 13);
  if (!good.all_pass()) return fail(l, good.failures().front().check + " fails at " + levels_str(good.failures().front().levels));
  const DistTable bad = phi_table(s) * delta_table({3}, s);
  if (verify_strictness(bad).all_pass()) return fail(l, "the modified table is strict");
  const Report r = check_euler_conditions(bad, 3, 7 * 13);
  bool es4 = false;
  for (auto& c : r.failures()) es4 = es4 || (c.check == "ES4" && !c.witness.empty());
  if (!es4) return fail(l, "no ES4 witness for phi * delta({3})");
  l.detail = std::to_string(good.checks.size()) + " conditions for phi; phi * delta({3}) fails ES4";
  return l;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CIRCDIST_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line criterion11() {
  Line l;
  namespace fs = std::filesystem;
  const std::vector<std::string> suite{
      "verify --support 'closure(1..30,60)'",
      "strictness --table 'delta(3)' --support 'closure(15)'",
      "annihilator --n 20 --oracle",
      "idempotent --n 60",
      "kappa --m 4 --p 3 --N 4 --table 'pow(phi, comb(2:1, 2:-1))'",
      "boundedness --m 5 --p 3 --N 3 --k 1..2 --table 'pow(phi, one_plus_tau)'",
      "ncnd --p 3 --q 5",
      "euler --m 3 --r 91",
      "torsion --table 'delta(3,5)' --support 'closure(45, 12)'",
      "valuation --table 'pow(phi, comb(2:1, 1:7))' --support 'closure(9, 8, 25)'"};
  const fs::path dir = fs::temp_directory_path() / ("circdist_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (int run = 0; run < 2; ++run)
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const fs::path out = dir / (std::to_string(run) + "_" + std::to_string(i) + ".json");
      const int st = run_cli("--seed " + std::to_string(kSeed) + " " + suite[i] + " -o " + out.string());
      if (st != 0 && st != 1) {
        fs::remove_all(dir);
        return fail(l, "command failed with status " + std::to_string(st) + ": " + suite[i]);
      }
    }
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const std::string a = slurp(dir / ("0_" + std::to_string(i) + ".json"));
    const std::string b = slurp(dir / ("1_" + std::to_string(i) + ".json"));
    bytes += a.size();
    if (a.empty() || a != b) {
      fs::remove_all(dir);
      return fail(l, "reports differ for: " + suite[i]);
    }
  }
  fs::remove_all(dir);
  l.detail = std::to_string(suite.size()) + " commands, " + std::to_string(bytes) + " bytes identical across two runs";
  return l;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Line()>>> criteria{
      {"distribution relations", criterion1},   {"strictness", criterion2},          {"annihilator oracle", criterion3},
      {"projection laws", criterion4},          {"image claim", criterion5},         {"exponent round trip", criterion6},
      {"kappa digits", criterion7},             {"norm-compatible family", criterion8},
      {"valuation constancy", criterion9},      {"Euler conditions", criterion10},   {"determinism", criterion11}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
      l = criteria[i].second();
    } catch (const std::exception& e) {
      l.pass = false;
      l.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << (i + 1) << ": " << (l.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " - "
              << l.detail << " [" << std::fixed << std::setprecision(1) << seconds_since(t0) << " s]" << std::endl;
    failed += !l.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
