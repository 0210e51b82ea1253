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

// circdist: command-line front end.
//
// Exit status: 0 when every check passes, 1 on a mathematical failure,
// 2 on usage or structural errors.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "circdist/coleman.hpp"
#include "circdist/json_io.hpp"
#include "circdist/table_builder.hpp"

using namespace circdist;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Config {
  std::string command;
  std::string table = "phi";
  std::string support;
  std::vector<std::int64_t> pi;
  std::int64_t n = 0, m = 0, p = 0, q = 0, r = 0;
  int depth = 0;
  std::string k_range = "1..3";
  std::string kind = "In";
  bool oracle = false;
  int shuffles = 2;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
};

struct Outcome {
  Json payload;
  bool pass = true;
};

std::vector<int> parse_k_range(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int a = std::stoi(item.substr(0, dots)), b = std::stoi(item.substr(dots + 2));
        require(a <= b, "k range must be increasing");
        for (int k = a; k <= b; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw DomainError("malformed k range '" + s + "'");
    }
  }
  require(!out.empty(), "empty k range");
  for (int k : out) require(k >= 0, "k must be non-negative");
  return out;
}

std::optional<std::set<std::int64_t>> pi_set(const Config& c) {
  if (c.pi.empty()) return std::nullopt;
  return std::set<std::int64_t>(c.pi.begin(), c.pi.end());
}

Support support_or(const Config& c, std::int64_t fallback) {
  if (!c.support.empty()) return parse_support(c.support);
  require(fallback > 0, c.command + ": --support is required");
  return divisor_closure({fallback});
}

DistTable table_for(const Config& c, const Support& s) { return build_table(c.table, s, pi_set(c)); }

void merge(Json& dst, const Json& src) {
  for (auto it = src.begin(); it != src.end(); ++it) dst[it.key()] = it.value();
}

Json report_payload(const Report& r) {
  return Json{{"all_pass", r.all_pass()}, {"failures", r.failures().size()}, {"checks", to_json(r)}};
}

Outcome run_report(const Report& r, Json head = Json::object()) {
  merge(head, report_payload(r));
  return Outcome{head, r.all_pass()};
}

Outcome cmd_verify(const Config& c) {
  const Support s = support_or(c, 0);
  return run_report(verify_relations(table_for(c, s)), Json{{"table", c.table}, {"support", std::vector<std::int64_t>(s.begin(), s.end())}});
}

Outcome cmd_strictness(const Config& c) {
  const Support s = support_or(c, 0);
  return run_report(verify_strictness(table_for(c, s)), Json{{"table", c.table}, {"support", std::vector<std::int64_t>(s.begin(), s.end())}});
}

Outcome cmd_annihilator(const Config& c) {
  require(c.n >= 1, "annihilator: --n is required");
  Json out{{"n", c.n}, {"kind", c.kind}};
  if (c.kind == "T" || c.kind == "Tstar") {
    out["lattice"] = to_json(annihilator_Tn(c.n, c.kind == "Tstar"));
    return Outcome{out, true};
  }
  require(c.kind == "In", "annihilator: --kind must be In, T or Tstar");
  const IdealLattice f = annihilator_In_formula(c.n);
  out["formula"] = to_json(f);
  if (!c.oracle) return Outcome{out, true};
  const IdealLattice o = annihilator_In_oracle(c.n);
  out["oracle"] = to_json(o);
  out["equal"] = f == o;
  return Outcome{out, f == o};
}

Outcome cmd_idempotent(const Config& c) {
  require(c.n >= 1, "idempotent: --n is required");
  Json groups = Json::object();
  for (auto ell : prime_divisors(c.n)) groups[std::to_string(ell)] = decomposition_group(c.n, ell);
  const GroupRingElt e = idempotent_e_n(c.n);
  const bool idem = e * e == e;
  return Outcome{Json{{"n", c.n}, {"decomposition_groups", groups}, {"e_n", to_json(e)}, {"idempotent", idem}}, idem};
}

KappaDigits kappa_for(const Config& c) {
  require(c.m >= 2 && c.p >= 2 && c.depth >= 1, c.command + ": --m, --p and --N are required");
  const Support s = support_or(c, c.m * ipow(c.p, c.depth));
  return kappa_digits(table_for(c, s), c.m, c.p, c.depth, parse_k_range(c.k_range));
}

// Digits recomputed after shifting a_n by random elements of I_{mp^n}.
Report shuffle_checks(const Config& c, const KappaDigits& d) {
  Report rep;
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (auto& e : d.entries) {
    if (!e.annihilator) continue;
    for (int t = 0; t < c.shuffles; ++t) {
      GroupRingElt shifted = e.a_n;
      for (auto& b : e.annihilator->basis()) shifted = shifted + Rational(coef(rng)) * b;
      const GroupRingElt proj = shifted.project(d.m, true);
      bool same = true;
      for (auto& [k, pm] : e.digits)
        same = same && kappa_digit(proj, d.p, e.n, k) == pm.first && kappa_digit(-proj, d.p, e.n, k) == pm.second;
      rep.add("digit_independence", {e.level}, same, same ? "" : "digits moved under a shift by I");
    }
  }
  return rep;
}

Outcome cmd_kappa(const Config& c) {
  const KappaDigits d = kappa_for(c);
  Json out{{"table", c.table}, {"seed", c.seed}};
  merge(out, to_json(d));
  const Report rep = shuffle_checks(c, d);
  out["checks"] = to_json(rep);
  return Outcome{out, rep.all_pass()};
}

Outcome cmd_boundedness(const Config& c) {
  const KappaDigits d = kappa_for(c);
  const BoundednessVerdict v = boundedness_report(d, parse_k_range(c.k_range));
  bool all = true;
  for (auto& k : v.per_k) all = all && k.bounded();
  Json out{{"table", c.table}};
  merge(out, to_json(v));
  out["bounded_every_k"] = all;
  return Outcome{out, all};
}

Outcome cmd_ncnd(const Config& c) {
  const NcndFamily f = ncnd_family(c.p, c.q, c.depth == 0 ? 3 : c.depth);
  return Outcome{to_json(f), f.checks.all_pass()};
}

Outcome cmd_euler(const Config& c) {
  require(c.m >= 2 && c.r >= 1, "euler: --m and --r are required");
  const Support s = support_or(c, c.m * c.r);
  return run_report(check_euler_conditions(table_for(c, s), c.m, c.r), Json{{"table", c.table}, {"m", c.m}, {"r", c.r}});
}

Outcome cmd_torsion(const Config& c) {
  const TorsionClass t = classify_torsion(table_for(c, support_or(c, 0)));
  Json out{{"table", c.table}};
  merge(out, to_json(t));
  return Outcome{out, t.torsion_form};
}

Outcome cmd_valuation(const Config& c) {
  const ValuationReport v = valuation_constancy(table_for(c, support_or(c, 0)));
  Json out{{"table", c.table}};
  merge(out, to_json(v));
  return Outcome{out, v.constant};
}

Outcome dispatch(const Config& c) {
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "strictness") return cmd_strictness(c);
  if (c.command == "annihilator") return cmd_annihilator(c);
  if (c.command == "idempotent") return cmd_idempotent(c);
  if (c.command == "kappa") return cmd_kappa(c);
  if (c.command == "boundedness") return cmd_boundedness(c);
  if (c.command == "ncnd") return cmd_ncnd(c);
  if (c.command == "euler") return cmd_euler(c);
  if (c.command == "torsion") return cmd_torsion(c);
  if (c.command == "valuation") return cmd_valuation(c);
  throw DomainError("unknown command '" + c.command + "'");
}

void render_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  for (auto& [k, v] : j.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object() && v.front().contains("check")) {
      os << pad << k << ":\n";
      for (auto& c : v) {
        os << pad << "  " << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << ' '
           << c["levels"].dump();
        if (!c["witness"].get<std::string>().empty()) os << "  " << c["witness"].get<std::string>();
        os << '\n';
      }
    } else if (v.is_object() && !v.empty()) {
      os << pad << k << ":\n";
      render_text(os, v, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << pad << k << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad << "  [" << i << "]\n";
        render_text(os, v[i], indent + 4);
      }
    } else {
      os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

std::string render(const Json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::ostringstream os;
  render_text(os, j, 0);
  return os.str();
}

// Writes to a temporary sibling and renames it over the target.
bool write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

void add_table_options(CLI::App* sub, Config& c) {
  sub->add_option("--table", c.table, "Table expression, e.g. pow(phi, one_plus_tau)");
  sub->add_option("--support", c.support, "Support, e.g. closure(1..30,60)");
  sub->add_option("--pi", c.pi, "Odd prime set for a bare delta")->delimiter(',');
}

void add_kappa_options(CLI::App* sub, Config& c) {
  add_table_options(sub, c);
  sub->add_option("--m", c.m, "Base level m")->required();
  sub->add_option("--p", c.p, "Prime p")->required();
  sub->add_option("--N", c.depth, "Depth N")->required();
  sub->add_option("--k", c.k_range, "k range, e.g. 1..3 or 1,2");
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"circdist: circular distributions over cyclotomic fields"};
  app.require_subcommand(1);
  app.add_option("-o,--output", c.output, "Write the report to this path (atomically)");
  app.add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", c.seed, "Seed for randomized checks");

  auto* verify = app.add_subcommand("verify", "Check the distribution relations");
  add_table_options(verify, c);
  auto* strict = app.add_subcommand("strictness", "Check the strictness congruences");
  add_table_options(strict, c);
  auto* ann = app.add_subcommand("annihilator", "Annihilator lattices in the group ring");
  ann->add_option("--n", c.n, "Level")->required();
  ann->add_option("--kind", c.kind, "In, T or Tstar")->check(CLI::IsMember({"In", "T", "Tstar"}));
  ann->add_flag("--oracle", c.oracle, "Also compute I_n numerically and compare");
  auto* idem = app.add_subcommand("idempotent", "The idempotent e_n and decomposition groups");
  idem->add_option("--n", c.n, "Level")->required();
  auto* kappa = app.add_subcommand("kappa", "kappa coefficients and digits");
  add_kappa_options(kappa, c);
  kappa->add_option("--shuffles", c.shuffles, "Random I_n shifts per level for the independence check");
  auto* bound = app.add_subcommand("boundedness", "Finite-range boundedness verdicts");
  add_kappa_options(bound, c);
  auto* ncnd = app.add_subcommand("ncnd", "Norm-compatible family for primes p, q");
  ncnd->add_option("--p", c.p, "Odd prime p")->required();
  ncnd->add_option("--q", c.q, "Odd prime q")->required();
  ncnd->add_option("--N", c.depth, "Largest exponent a (default 3)");
  auto* euler = app.add_subcommand("euler", "Euler system conditions");
  add_table_options(euler, c);
  euler->add_option("--m", c.m, "Base level m")->required();
  euler->add_option("--r", c.r, "Squarefree product of primes 1 mod m")->required();
  auto* tors = app.add_subcommand("torsion", "Classify a +-1 valued table");
  add_table_options(tors, c);
  auto* val = app.add_subcommand("valuation", "Valuations at prime-power levels");
  add_table_options(val, c);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  Outcome res;
  try {
    res = dispatch(c);
  } catch (const DomainError& e) {
    std::cerr << "circdist: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "circdist: " << c.command << " failed: " << e.what() << '\n';
    return kFail;
  }

  Json report = envelope(c.command, res.payload);
  report["pass"] = res.pass;
  const std::string text = render(report, c.format);
  if (c.output.empty()) {
    std::cout << text;
  } else if (!write_atomic(c.output, text)) {
    std::cerr << "circdist: cannot write " << c.output << '\n';
    return kUsage;
  }
  return res.pass ? kPass : kFail;
}
