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

#ifndef CIRCDIST_TABLE_BUILDER_HPP
#define CIRCDIST_TABLE_BUILDER_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "circdist/distributions.hpp"

namespace circdist {

// Grammar:
//   table   := phi | delta | delta(INT, ...) | pow(table, tower)
//            | mul(table, table) | conj(table)
//   tower   := one | tau | one_plus_tau | one_minus_tau | INT
//            | comb(INT:INT, ...)            coefficient:automorphism
//   support := closure(item, ...)            item := INT | INT..INT
// Level 1 is dropped from supports.
// A bare `delta` takes its prime set from the caller.

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : DomainError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}

  std::size_t pos() const { return i_; }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) != 0) return false;
    i_ += tok.size();
    return true;
  }
  std::string ident() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_) fail("expected a name");
    return s_.substr(start, i_ - start);
  }
  std::int64_t integer() {
    skip();
    const std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (digits == i_) {
      i_ = start;
      fail("expected an integer");
    }
    if (i_ - digits > 15) fail("integer too large", start);
    return std::stoll(s_.substr(start, i_ - start));
  }
  bool at_integer() {
    skip();
    return i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-' || s_[i_] == '+');
  }
  void finish() {
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, i_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

 private:
  std::string s_;
  std::size_t i_ = 0;
};

inline RTower parse_tower(Parser& in) {
  if (in.at_integer()) return RTower::integer(in.integer());
  in.skip();
  const std::size_t at = in.pos();
  const std::string name = in.ident();
  if (name == "one") return RTower::one();
  if (name == "tau") return RTower::tau();
  if (name == "one_plus_tau") return RTower::one_plus_tau();
  if (name == "one_minus_tau") return RTower::one_minus_tau();
  if (name == "comb") {
    in.expect('(');
    std::vector<std::pair<Integer, std::int64_t>> terms;
    do {
      const std::int64_t c = in.integer();
      in.expect(':');
      const std::size_t apos = in.pos();
      const std::int64_t a = in.integer();
      if (a == 0) in.fail("automorphism index must be nonzero", apos);
      terms.emplace_back(c, a);
    } while (in.accept(','));
    in.expect(')');
    return RTower::comb(std::move(terms));
  }
  in.fail("unknown tower '" + name + "'", at);
}

inline DistTable parse_table(Parser& in, const Support& s, const std::optional<std::set<std::int64_t>>& pi) {
  in.skip();
  const std::size_t at = in.pos();
  const std::string name = in.ident();
  try {
    if (name == "phi") return phi_table(s);
    if (name == "delta") {
      std::set<std::int64_t> primes;
      if (in.accept('(')) {
        do primes.insert(in.integer());
        while (in.accept(','));
        in.expect(')');
      } else {
        if (!pi) in.fail("delta needs a prime set", at);
        primes = *pi;
      }
      return delta_table(primes, s);
    }
    if (name == "pow") {
      in.expect('(');
      DistTable f = parse_table(in, s, pi);
      in.expect(',');
      in.skip();
      const std::size_t tpos = in.pos();
      RTower r = parse_tower(in);
      in.expect(')');
      for (auto n : s)
        if (!r.covers(n)) in.fail("tower does not cover level " + std::to_string(n), tpos);
      return power_by_tower(f, r);
    }
    if (name == "mul") {
      in.expect('(');
      DistTable f = parse_table(in, s, pi);
      in.expect(',');
      DistTable g = parse_table(in, s, pi);
      in.expect(')');
      return f * g;
    }
    if (name == "conj") {
      in.expect('(');
      DistTable f = parse_table(in, s, pi);
      in.expect(')');
      return conj_table(f);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(name + ": " + e.what(), at);
  }
  in.fail("unknown table '" + name + "'", at);
}

}  // namespace detail

/// Parses `closure(...)` into a divisor-closed support.
inline Support parse_support(const std::string& spec) {
  detail::Parser in(spec);
  in.skip();
  const std::size_t at = in.pos();
  if (in.ident() != "closure") in.fail("support must be closure(...)", at);
  in.expect('(');
  std::vector<std::int64_t> levels;
  do {
    in.skip();
    const std::size_t ipos = in.pos();
    const std::int64_t a = in.integer();
    std::int64_t b = a;
    if (in.accept("..")) b = in.integer();
    if (a < 1 || b < a) in.fail("levels must be positive and ranges increasing", ipos);
    if (b > 100000) in.fail("level too large", ipos);
    for (std::int64_t n = std::max<std::int64_t>(a, 2); n <= b; ++n) levels.push_back(n);
  } while (in.accept(','));
  in.expect(')');
  in.finish();
  if (levels.empty()) in.fail("support is empty", 0);
  return divisor_closure(levels);
}

/// Parses and builds a table on the support s. `pi` feeds a bare `delta`.
inline DistTable build_table(const std::string& spec, const Support& s,
                             const std::optional<std::set<std::int64_t>>& pi = std::nullopt) {
  detail::Parser in(spec);
  DistTable f = detail::parse_table(in, s, pi);
  in.finish();
  return f;
}

inline RTower parse_tower(const std::string& spec) {
  detail::Parser in(spec);
  RTower r = detail::parse_tower(in);
  in.finish();
  return r;
}

}  // namespace circdist

#endif  // CIRCDIST_TABLE_BUILDER_HPP
