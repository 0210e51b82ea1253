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

#ifndef CIRCDIST_JSON_IO_HPP
#define CIRCDIST_JSON_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "circdist/coleman.hpp"
#include "circdist/distributions.hpp"
#include "circdist/groupring.hpp"

namespace circdist {

// Key order is insertion order, so every report serializes identically.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "circdist/1";

/// Integers as JSON numbers when they fit in 64 bits, as decimal strings otherwise.
inline Json integer_json(const Integer& z) {
  if (boost::multiprecision::abs(z) < (Integer(1) << 62)) return z.convert_to<std::int64_t>();
  return z.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  require(j.is_number_integer(), "json: expected an integer");
  return Integer(j.get<std::int64_t>());
}

inline Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (auto& q : v) a.push_back(to_string(q));
  return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  require(j.is_array(), "json: expected an array of rationals");
  std::vector<Rational> out;
  for (auto& x : j) {
    require(x.is_string(), "json: rationals are strings");
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

inline Json to_json(const CycElt& x) { return Json{{"level", x.level()}, {"coeffs", rationals_json(x.coeffs())}}; }

inline CycElt cycelt_from_json(const Json& j) {
  require(j.is_object() && j.contains("level") && j.contains("coeffs"), "json: CycElt needs level and coeffs");
  return CycElt::from_coeffs(j.at("level").get<std::int64_t>(), rationals_from_json(j.at("coeffs")));
}

inline Json to_json(const GroupRingElt& x) {
  return Json{{"level", x.level()}, {"plus", x.plus()}, {"elements", x.elements()}, {"coeffs", rationals_json(x.coeffs())}};
}

inline GroupRingElt groupringelt_from_json(const Json& j) {
  GroupRingElt x(j.at("level").get<std::int64_t>(), j.at("plus").get<bool>(), rationals_from_json(j.at("coeffs")));
  require(j.at("elements").get<std::vector<std::int64_t>>() == x.elements(), "json: element order mismatch");
  return x;
}

inline Json to_json(const IdealLattice& l) {
  Json rows = Json::array();
  for (auto& r : l.hnf) {
    Json row = Json::array();
    for (auto& z : r) row.push_back(integer_json(z));
    rows.push_back(std::move(row));
  }
  return Json{{"level", l.level}, {"plus", l.plus}, {"elements", group_elements(l.level, l.plus)}, {"hnf", std::move(rows)}};
}

inline IdealLattice lattice_from_json(const Json& j) {
  const std::int64_t n = j.at("level").get<std::int64_t>();
  const bool plus = j.at("plus").get<bool>();
  IntMatrix rows;
  for (auto& r : j.at("hnf")) {
    IntVector v;
    for (auto& z : r) v.push_back(integer_from_json(z));
    require(v.size() == group_elements(n, plus).size(), "json: HNF row has the wrong length");
    rows.push_back(std::move(v));
  }
  return make_lattice(n, plus, std::move(rows));
}

inline Json to_json(const DistTable& f) {
  Json values = Json::object();
  for (auto n : f.support()) values[std::to_string(n)] = to_json(f.value(n));
  return Json{{"support", std::vector<std::int64_t>(f.support().begin(), f.support().end())}, {"values", std::move(values)}};
}

inline DistTable table_from_json(const Json& j) {
  Support s;
  for (auto& n : j.at("support")) s.insert(n.get<std::int64_t>());
  std::map<std::int64_t, CycElt> v;
  for (auto& [k, x] : j.at("values").items()) v.emplace(std::stoll(k), cycelt_from_json(x));
  return DistTable(s, std::move(v));
}

inline Json to_json(const Report& r) {
  Json a = Json::array();
  for (auto& c : r.checks)
    a.push_back(Json{{"check", c.check}, {"levels", c.levels}, {"witness", c.witness}, {"pass", c.pass}});
  return a;
}

inline Json to_json(const TorsionClass& t) {
  return Json{{"torsion_form", t.torsion_form}, {"pi", std::vector<std::int64_t>(t.pi.begin(), t.pi.end())}, {"class", t.str()}};
}

inline Json to_json(const ExponentSolution& s) {
  Json f = Json::array();
  for (auto& [p, e] : s.denominator_factors) f.push_back(Json::array({p, e}));
  return Json{{"projected", to_json(s.projected)},
              {"representative", to_json(s.representative)},
              {"denominator", integer_json(s.denominator)},
              {"denominator_factors", std::move(f)},
              {"annihilator", to_json(s.annihilator)}};
}

inline Json to_json(const KappaDigits& d) {
  Json entries = Json::array();
  for (auto& e : d.entries) {
    Json digits = Json::object();
    for (auto& [k, pm] : e.digits) digits[std::to_string(k)] = Json::array({pm.first, pm.second});
    entries.push_back(Json{{"n", e.n}, {"a_n", to_json(e.a_n)}, {"projected", to_json(e.projected)}, {"digits", std::move(digits)}});
  }
  return Json{{"m", d.m}, {"p", d.p}, {"entries", std::move(entries)}};
}

inline Json to_json(const BoundednessVerdict& v) {
  Json ks = Json::array();
  for (auto& k : v.per_k)
    ks.push_back(Json{{"k", k.k},
                      {"n_range", Json::array({k.n_min, k.n_max})},
                      {"threshold", k.threshold},
                      {"plus_digits", k.plus_digits},
                      {"minus_digits", k.minus_digits},
                      {"bounded_plus", k.bounded_plus},
                      {"bounded_minus", k.bounded_minus},
                      {"bounded", k.bounded()}});
  return Json{{"m", v.m}, {"p", v.p}, {"evidence_only", BoundednessVerdict::evidence_only}, {"per_k", std::move(ks)}};
}

inline Json to_json(const NcndLevel& l) {
  return Json{{"a", l.a}, {"level", l.level}, {"pi", to_json(l.pi)}, {"value", to_json(l.value)}};
}

inline Json to_json(const NcndFamily& f) {
  Json lv = Json::array(), alt = Json::array();
  for (auto& l : f.levels) lv.push_back(to_json(l));
  for (auto& l : f.alternative) alt.push_back(to_json(l));
  return Json{{"p", f.p},
              {"q", f.q},
              {"levels", std::move(lv)},
              {"alternative", std::move(alt)},
              {"alternative_value_equal", f.alternative_value_equal},
              {"checks", to_json(f.checks)}};
}

inline Json to_json(const ValuationReport& r) {
  Json v = Json::object();
  for (auto& [n, x] : r.valuations) v[std::to_string(n)] = x;
  return Json{{"valuations", std::move(v)}, {"constant", r.constant}, {"value", r.value ? Json(*r.value) : Json(nullptr)}};
}

/// Top-level report object: schema tag, command name, then the payload keys.
inline Json envelope(const std::string& command, const Json& payload) {
  Json out{{"schema", kSchema}, {"command", command}};
  for (auto& [k, v] : payload.items()) out[k] = v;
  return out;
}

}  // namespace circdist

#endif  // CIRCDIST_JSON_IO_HPP
