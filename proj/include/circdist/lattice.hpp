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

#ifndef CIRCDIST_LATTICE_HPP
#define CIRCDIST_LATTICE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "circdist/arith.hpp"

// Integer lattices given by generator rows. The canonical form is the row
// Hermite normal form: echelon, positive pivots, entries above a pivot reduced
// into [0, pivot), zero rows dropped.

namespace circdist {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// g = s a + t b with g = gcd(a, b) >= 0.
inline void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Integer s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Integer t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

inline bool is_zero_row(const IntVector& v) {
  for (auto& z : v)
    if (z != 0) return false;
  return true;
}

}  // namespace detail

/// Row Hermite normal form of the lattice spanned by the rows.
inline IntMatrix hnf(IntMatrix rows) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), detail::is_zero_row), rows.end());
  if (rows.empty()) return {};
  const std::size_t ncols = rows.front().size();
  for (auto& r : rows) require(r.size() == ncols, "hnf: ragged matrix");
  std::size_t prow = 0;
  std::vector<std::size_t> pivcols;
  for (std::size_t c = 0; c < ncols && prow < rows.size(); ++c) {
    // bring a row with nonzero entry in column c to position prow
    std::size_t k = prow;
    while (k < rows.size() && rows[k][c] == 0) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[prow], rows[k]);
    for (std::size_t i = prow + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Integer g, s, t;
      detail::xgcd(rows[prow][c], rows[i][c], g, s, t);
      Integer a = rows[prow][c] / g, b = rows[i][c] / g;
      IntVector& P = rows[prow];
      IntVector& R = rows[i];
      for (std::size_t j = c; j < ncols; ++j) {
        Integer pj = P[j], rj = R[j];
        P[j] = s * pj + t * rj;
        R[j] = a * rj - b * pj;
      }
    }
    if (rows[prow][c] < 0)
      for (auto& z : rows[prow]) z = -z;
    const Integer piv = rows[prow][c];
    for (std::size_t i = 0; i < prow; ++i) {
      if (rows[i][c] == 0) continue;
      Integer q = detail::floor_div(rows[i][c], piv);
      if (q == 0) continue;
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= q * rows[prow][j];
    }
    pivcols.push_back(c);
    ++prow;
  }
  rows.resize(prow);
  return rows;
}

/// Column index of each HNF row's pivot.
inline std::vector<std::size_t> pivot_columns(const IntMatrix& h) {
  std::vector<std::size_t> cols;
  for (auto& r : h) {
    std::size_t c = 0;
    while (c < r.size() && r[c] == 0) ++c;
    cols.push_back(c);
  }
  return cols;
}

/// Canonical representative of v modulo the lattice with HNF basis h: every
/// pivot coordinate reduced into [0, pivot).
inline IntVector reduce_mod_lattice(const IntMatrix& h, IntVector v) {
  auto cols = pivot_columns(h);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Integer& piv = h[i][cols[i]];
    Integer q = detail::floor_div(v[cols[i]], piv);
    if (q == 0) continue;
    for (std::size_t j = cols[i]; j < v.size(); ++j) v[j] -= q * h[i][j];
  }
  return v;
}

/// Integer coordinates of v in the HNF basis h, or nullopt if v is not in the lattice.
inline std::optional<IntVector> lattice_coordinates(const IntMatrix& h, IntVector v) {
  auto cols = pivot_columns(h);
  IntVector coord;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Integer& piv = h[i][cols[i]];
    if (v[cols[i]] % piv != 0) return std::nullopt;
    Integer q = v[cols[i]] / piv;
    coord.push_back(q);
    if (q != 0)
      for (std::size_t j = cols[i]; j < v.size(); ++j) v[j] -= q * h[i][j];
  }
  if (!detail::is_zero_row(v)) return std::nullopt;
  return coord;
}

inline bool in_lattice(const IntMatrix& h, const IntVector& v) { return lattice_coordinates(h, v).has_value(); }

inline bool lattice_contains(const IntMatrix& super, const IntMatrix& sub) {
  for (auto& r : sub)
    if (!in_lattice(super, r)) return false;
  return true;
}

/// Exact determinant by fraction-free elimination (Bareiss).
inline Integer determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// [super : sub] for sub contained in super of the same rank.
inline Integer lattice_index(const IntMatrix& super, const IntMatrix& sub) {
  require(super.size() == sub.size(), "lattice_index: ranks differ");
  IntMatrix coords;
  for (auto& r : sub) {
    auto c = lattice_coordinates(super, r);
    require(c.has_value(), "lattice_index: not a sublattice");
    coords.push_back(*c);
  }
  return boost::multiprecision::abs(determinant(coords));
}

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> piv;
  if (a.empty()) return piv;
  const std::size_t ncols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t k = r;
    while (k < a.size() && a[k][c] == 0) ++k;
    if (k == a.size()) continue;
    std::swap(a[r], a[k]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  a.resize(r);
  return piv;
}

inline std::size_t rank(const IntMatrix& m) { return hnf(m).size(); }

/// Basis of {y in Q^k : M y = 0} for an r x k matrix M.
inline RatMatrix rational_kernel(const RatMatrix& m, std::size_t k) {
  RatMatrix a = m;
  auto piv = rref(a);
  std::vector<char> is_piv(k, 0);
  for (auto c : piv) is_piv[c] = 1;
  RatMatrix out;
  for (std::size_t f = 0; f < k; ++f) {
    if (is_piv[f]) continue;
    RatVector y(k, Rational(0));
    y[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) y[piv[i]] = -a[i][f];
    out.push_back(std::move(y));
  }
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r;
  for (auto& row : m) {
    RatVector v;
    for (auto& z : row) v.emplace_back(z);
    r.push_back(std::move(v));
  }
  return r;
}

/// Scale a rational vector to a primitive integer vector.
inline IntVector primitive_integer(const RatVector& v) {
  Integer d = 1;
  for (auto& q : v) d = lcm(d, denom(q));
  IntVector out;
  Integer g = 0;
  for (auto& q : v) {
    out.push_back(numer(q) * (d / denom(q)));
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

/// HNF basis of {x in Z^k : M x = 0} for a rational r x k matrix M.
inline IntMatrix integer_kernel(const RatMatrix& m, std::size_t k) {
  // Integer rows spanning the same row space as M.
  IntMatrix a;
  {
    RatMatrix e = m;
    rref(e);
    for (auto& row : e) a.push_back(primitive_integer(row));
  }
  const std::size_t r = a.size();
  if (r == 0) {
    IntMatrix id(k, IntVector(k, Integer(0)));
    for (std::size_t i = 0; i < k; ++i) id[i][i] = 1;
    return id;
  }
  // rows of [A^T | I]; unimodular row reduction of the left block leaves the
  // kernel in the right block of the rows whose left part vanishes
  IntMatrix aug(k, IntVector(r + k, Integer(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = a[j][i];
    aug[i][r + i] = 1;
  }
  IntMatrix h = hnf(aug);
  IntMatrix ker;
  for (auto& row : h) {
    bool left_zero = true;
    for (std::size_t j = 0; j < r; ++j)
      if (row[j] != 0) {
        left_zero = false;
        break;
      }
    if (left_zero) ker.emplace_back(row.begin() + r, row.end());
  }
  return hnf(ker);
}

/// HNF basis of (Q L) intersected with Z^k.
inline IntMatrix saturate(const IntMatrix& gens, std::size_t k) {
  IntMatrix h = hnf(gens);
  if (h.empty()) return h;
  RatMatrix perp = rational_kernel(to_rational(h), k);
  IntMatrix sat = integer_kernel(perp, k);
  ensure(sat.size() == h.size(), "saturate: rank changed");
  ensure(lattice_contains(sat, h), "saturate: lost generators");
  return sat;
}

inline IntMatrix lattice_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix all = a;
  all.insert(all.end(), b.begin(), b.end());
  return hnf(all);
}

inline IntMatrix lattice_scale(const IntMatrix& a, const Integer& s) {
  IntMatrix out = a;
  for (auto& r : out)
    for (auto& z : r) z *= s;
  return hnf(out);
}

}  // namespace circdist

#endif  // CIRCDIST_LATTICE_HPP
