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

#ifndef CIRCDIST_GROUPRING_HPP
#define CIRCDIST_GROUPRING_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "circdist/circular.hpp"
#include "circdist/cyclotomic.hpp"
#include "circdist/lattice.hpp"
#include "circdist/numeric.hpp"

namespace circdist {

// ---------------------------------------------------------------------------
// Group elements. G_n is listed as the units in [1, n) ascending; G_n^+ as the
// representatives min(a, n - a), ascending. Level 1 and 2 give the trivial
// group {1}.

inline std::vector<std::int64_t> group_elements(std::int64_t n, bool plus) {
  require(n >= 1, "group_elements: bad level");
  if (n <= 2) return {1};
  return plus ? plus_representatives(n) : units_mod(n);
}

inline std::int64_t canonical_element(std::int64_t n, bool plus, std::int64_t a) {
  if (n <= 2) return 1;
  a = mod(a, n);
  require(gcd64(a, n) == 1, "canonical_element: not a unit");
  if (plus) a = std::min(a, n - a);
  return a;
}

/// Element of Q[G_n] or Q[G_n^+] with a dense coefficient vector over
/// group_elements(n, plus).
class GroupRingElt {
 public:
  GroupRingElt() = default;
  GroupRingElt(std::int64_t n, bool plus) : n_(n), plus_(plus), elems_(group_elements(n, plus)) {
    c_.assign(elems_.size(), Rational(0));
  }
  GroupRingElt(std::int64_t n, bool plus, std::vector<Rational> c) : GroupRingElt(n, plus) {
    require(c.size() == elems_.size(), "GroupRingElt: coefficient count mismatch");
    c_ = std::move(c);
  }

  static GroupRingElt identity(std::int64_t n, bool plus) { return basis(n, plus, 1); }
  static GroupRingElt basis(std::int64_t n, bool plus, std::int64_t a, const Rational& c = 1) {
    GroupRingElt x(n, plus);
    x.c_[x.index_of(a)] = c;
    return x;
  }
  static GroupRingElt from_integers(std::int64_t n, bool plus, const IntVector& v) {
    std::vector<Rational> c;
    for (auto& z : v) c.emplace_back(z);
    return GroupRingElt(n, plus, std::move(c));
  }
  /// Sum over a subgroup (given as a list of canonical elements).
  static GroupRingElt subgroup_sum(std::int64_t n, bool plus, const std::vector<std::int64_t>& h) {
    GroupRingElt x(n, plus);
    for (auto a : h) x.c_[x.index_of(a)] += 1;
    return x;
  }

  std::int64_t level() const { return n_; }
  bool plus() const { return plus_; }
  const std::vector<std::int64_t>& elements() const { return elems_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }

  std::size_t index_of(std::int64_t a) const {
    std::int64_t ca = canonical_element(n_, plus_, a);
    auto it = std::lower_bound(elems_.begin(), elems_.end(), ca);
    ensure(it != elems_.end() && *it == ca, "GroupRingElt: element not found");
    return static_cast<std::size_t>(it - elems_.begin());
  }
  const Rational& coeff(std::int64_t a) const { return c_[index_of(a)]; }
  void set_coeff(std::int64_t a, const Rational& q) { c_[index_of(a)] = q; }
  Rational trivial_coefficient() const { return c_[index_of(1)]; }

  bool is_integral() const {
    for (auto& q : c_)
      if (denom(q) != 1) return false;
    return true;
  }
  bool is_zero() const {
    for (auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  IntVector integer_coeffs() const {
    IntVector v;
    for (auto& q : c_) {
      require(denom(q) == 1, "GroupRingElt: coefficients are not integral");
      v.push_back(numer(q));
    }
    return v;
  }
  Integer common_denominator() const {
    Integer d = 1;
    for (auto& q : c_) d = lcm(d, denom(q));
    return d;
  }

  Rational augmentation() const {
    Rational s = 0;
    for (auto& q : c_) s += q;
    return s;
  }

  friend bool operator==(const GroupRingElt& x, const GroupRingElt& y) {
    return x.n_ == y.n_ && x.plus_ == y.plus_ && x.c_ == y.c_;
  }
  friend bool operator!=(const GroupRingElt& x, const GroupRingElt& y) { return !(x == y); }

  friend GroupRingElt operator+(const GroupRingElt& x, const GroupRingElt& y) {
    x.check_same(y);
    GroupRingElt r = x;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += y.c_[i];
    return r;
  }
  friend GroupRingElt operator-(const GroupRingElt& x, const GroupRingElt& y) {
    x.check_same(y);
    GroupRingElt r = x;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= y.c_[i];
    return r;
  }
  friend GroupRingElt operator-(const GroupRingElt& x) { return Rational(-1) * x; }
  friend GroupRingElt operator*(const Rational& s, const GroupRingElt& x) {
    GroupRingElt r = x;
    for (auto& q : r.c_) q *= s;
    return r;
  }
  friend GroupRingElt operator*(const GroupRingElt& x, const GroupRingElt& y) {
    x.check_same(y);
    GroupRingElt r(x.n_, x.plus_);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        r.c_[r.index_of(x.elems_[i] * y.elems_[j])] += x.c_[i] * y.c_[j];
      }
    }
    return r;
  }

  /// Multiply by a single group element g.
  GroupRingElt shifted(std::int64_t g) const {
    GroupRingElt r(n_, plus_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r.c_[r.index_of(elems_[i] * g)] += c_[i];
    return r;
  }

  /// pi^m_n: push coefficients along G_m -> G_n (and to G_n^+ if to_plus).
  GroupRingElt project(std::int64_t n, bool to_plus) const {
    require(n >= 1 && n_ % n == 0, "project: " + std::to_string(n) + " does not divide " + std::to_string(n_));
    require(to_plus || !plus_, "project: cannot lift from the plus quotient");
    GroupRingElt r(n, to_plus);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) r.c_[r.index_of(elems_[i])] += c_[i];
    return r;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += to_string(c_[i]) + "*[" + std::to_string(elems_[i]) + "]";
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check_same(const GroupRingElt& y) const {
    require(n_ == y.n_ && plus_ == y.plus_, "GroupRingElt: level or quotient mismatch");
  }

  std::int64_t n_ = 1;
  bool plus_ = true;
  std::vector<std::int64_t> elems_{1};
  std::vector<Rational> c_{Rational(0)};
};

// ---------------------------------------------------------------------------
// Lattices inside Z[G_n] / Z[G_n^+].

struct IdealLattice {
  std::int64_t level = 1;
  bool plus = true;
  IntMatrix hnf;  // rows in canonical HNF

  std::size_t rank() const { return hnf.size(); }
  std::size_t ambient_dim() const { return group_elements(level, plus).size(); }
  bool contains(const GroupRingElt& x) const {
    require(x.level() == level && x.plus() == plus, "IdealLattice::contains: level mismatch");
    if (!x.is_integral()) return false;
    return in_lattice(hnf, x.integer_coeffs());
  }
  std::vector<GroupRingElt> basis() const {
    std::vector<GroupRingElt> out;
    for (auto& r : hnf) out.push_back(GroupRingElt::from_integers(level, plus, r));
    return out;
  }
  friend bool operator==(const IdealLattice& a, const IdealLattice& b) {
    return a.level == b.level && a.plus == b.plus && a.hnf == b.hnf;
  }
  friend bool operator!=(const IdealLattice& a, const IdealLattice& b) { return !(a == b); }
};

inline IdealLattice make_lattice(std::int64_t n, bool plus, IntMatrix gens) {
  return IdealLattice{n, plus, hnf(std::move(gens))};
}

inline IdealLattice scale_lattice(const IdealLattice& l, const Integer& s) {
  return IdealLattice{l.level, l.plus, lattice_scale(l.hnf, s)};
}

/// Lattice index [super : sub] when sub is contained in super with equal rank.
inline Integer index_of_sublattice(const IdealLattice& super, const IdealLattice& sub) {
  require(super.level == sub.level && super.plus == sub.plus, "index: level mismatch");
  return lattice_index(super.hnf, sub.hnf);
}

/// The Z[G]-ideal generated by the given elements (all group translates).
inline IdealLattice ideal_generated_by(std::int64_t n, bool plus, const std::vector<GroupRingElt>& gens) {
  IntMatrix rows;
  for (auto& g : gens)
    for (auto a : group_elements(n, plus)) rows.push_back(g.shifted(a).integer_coeffs());
  return make_lattice(n, plus, std::move(rows));
}

/// Image of L under pi^m_n (to the plus quotient if L is plus or to_plus is set).
inline IdealLattice project_annihilator(std::int64_t m, std::int64_t n, const IdealLattice& L, bool to_plus = false) {
  require(L.level == m, "project_annihilator: lattice is not at level m");
  require(m % n == 0, "project_annihilator: " + std::to_string(n) + " does not divide " + std::to_string(m));
  bool target_plus = L.plus || to_plus;
  IntMatrix rows;
  for (auto& r : L.hnf) rows.push_back(GroupRingElt::from_integers(m, L.plus, r).project(n, target_plus).integer_coeffs());
  return make_lattice(n, target_plus, std::move(rows));
}

// ---------------------------------------------------------------------------
// Decomposition groups and the idempotent e_n.

/// Image in G_n^+ of (Z/l^a)^x x <l mod m>, n = l^a m; canonical elements ascending.
inline std::vector<std::int64_t> decomposition_group(std::int64_t n, std::int64_t ell) {
  require(is_prime(ell), "decomposition_group: ell must be prime");
  require(n % ell == 0, "decomposition_group: " + std::to_string(ell) + " does not divide " + std::to_string(n));
  const std::int64_t m = prime_to_part(n, ell);
  std::vector<char> frob(m, 0);
  {
    std::int64_t x = 1 % m;
    do {
      frob[x] = 1;
      x = x * (ell % m) % m;
    } while (x != 1 % m);
  }
  std::vector<std::int64_t> out;
  for (auto a : units_mod(n))
    if (frob[a % m]) out.push_back(canonical_element(n, true, a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// e_H = |H|^{-1} sum_{h in H} h in Q[G_n^+].
inline GroupRingElt subgroup_idempotent(std::int64_t n, const std::vector<std::int64_t>& h) {
  return Rational(1, static_cast<long>(h.size())) * GroupRingElt::subgroup_sum(n, true, h);
}

inline GroupRingElt idempotent_e_n(std::int64_t n) {
  require(n >= 2, "idempotent_e_n: n must be >= 2");
  const auto one = GroupRingElt::identity(n, true);
  GroupRingElt e = one;
  for (auto ell : prime_divisors(n)) e = e * (one - subgroup_idempotent(n, decomposition_group(n, ell)));
  if (prime_power_base(n)) e = e + subgroup_idempotent(n, group_elements(n, true));
  ensure(e * e == e, "idempotent_e_n: result is not idempotent");
  return e;
}

/// Matrix of x -> e * x on the coefficient vectors (columns indexed by x).
inline RatMatrix multiplication_matrix(const GroupRingElt& e) {
  const std::size_t k = e.size();
  RatMatrix m(k, RatVector(k, Rational(0)));
  for (std::size_t j = 0; j < k; ++j) {
    GroupRingElt col = e.shifted(e.elements()[j]);
    for (std::size_t i = 0; i < k; ++i) m[i][j] = col.coeffs()[i];
  }
  return m;
}

/// I_n as {x in Z[G_n^+] : e_n x = 0}.
inline IdealLattice annihilator_In_formula(std::int64_t n) {
  const GroupRingElt e = idempotent_e_n(n);
  const std::size_t k = e.size();
  IdealLattice L{n, true, integer_kernel(multiplication_matrix(e), k)};
  // e_n is a projection of trace k * e_n(1): the kernel rank is fixed by it
  Rational expected = Rational(static_cast<long>(k)) * (1 - e.trivial_coefficient());
  ensure(expected == Rational(static_cast<long>(L.rank())), "annihilator_In_formula: rank mismatch");
  for (auto& b : L.basis()) ensure((e * b).is_zero(), "annihilator_In_formula: closure check failed");
  return L;
}

/// Maximum phi(n) accepted by the numeric oracle (CIRCDIST_MAX_PHI, default 48).
inline std::int64_t oracle_max_phi() {
  if (const char* s = std::getenv("CIRCDIST_MAX_PHI")) {
    try {
      long v = std::stol(s);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 48;
}

/// I_n from the logarithmic embedding of epsilon_n: numeric kernel, rational
/// reconstruction, and exact verification of epsilon_n^v = 1 for every vector.
inline IdealLattice annihilator_In_oracle(std::int64_t n) {
  require(n >= 2, "annihilator_In_oracle: n must be >= 2");
  require(euler_phi(n) <= oracle_max_phi(),
          "annihilator_In_oracle: phi(" + std::to_string(n) + ") exceeds CIRCDIST_MAX_PHI");
  const auto elems = group_elements(n, true);
  const std::size_t k = elems.size();
  if (n <= 2) return IdealLattice{n, true, {}};
  // L(j, g) = log |sigma_j(g eps)| = log(4 sin^2(pi j g / n))
  Eigen::MatrixXd L(k, k);
  const long double pi = std::acos(-1.0L);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t g = 0; g < k; ++g) {
      long double s = std::sin(pi * static_cast<long double>(elems[j] * elems[g] % n) / n);
      L(j, g) = static_cast<double>(std::log(4 * s * s));
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::size_t nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < 1e-9) {
      ++nullity;
    } else if (sv(i) < 1e-4) {
      throw PrecisionError("annihilator_In_oracle: no singular value gap at level " + std::to_string(n));
    }
  }
  if (nullity == 0) return IdealLattice{n, true, {}};
  Eigen::MatrixXd V = svd.matrixV().rightCols(static_cast<Eigen::Index>(nullity));
  Eigen::MatrixXd P = V * V.transpose();
  // the kernel projector is rational with small denominators
  RatMatrix Pq(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Pq[i][j] = best_rational(P(i, j), 4096);
      if (std::fabs(Pq[i][j].convert_to<double>() - P(i, j)) > 1e-7)
        throw PrecisionError("annihilator_In_oracle: projector entry not reconstructed");
    }
  IntMatrix gens;
  for (std::size_t j = 0; j < k; ++j) {
    RatVector col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = Pq[i][j];
    bool zero = true;
    for (auto& q : col)
      if (q != 0) zero = false;
    if (zero) continue;
    IntVector v = primitive_integer(col);
    if (!epsilon_power_is_one(n, elems, v))
      throw PrecisionError("annihilator_In_oracle: reconstructed vector fails exact verification");
    gens.push_back(std::move(v));
  }
  IdealLattice out{n, true, saturate(gens, k)};
  ensure(out.rank() == nullity, "annihilator_In_oracle: rank disagrees with numeric nullity");
  return out;
}

// ---------------------------------------------------------------------------
// Annihilators of roots of unity in Z[G_n].

/// {c in Z[G_n] : sum c_g e_g = 0 mod N} for an exponent map g -> e_g.
inline IdealLattice exponent_kernel(std::int64_t n, std::int64_t N, const std::vector<std::int64_t>& exps) {
  const auto elems = group_elements(n, false);
  const std::size_t k = elems.size();
  require(exps.size() == k, "exponent_kernel: size mismatch");
  IntMatrix gens;
  IntVector first(k, Integer(0));
  // identity is always elems[0] = 1 with e_1 = 1
  first[0] = N;
  gens.push_back(first);
  for (std::size_t i = 1; i < k; ++i) {
    IntVector v(k, Integer(0));
    v[i] = 1;
    v[0] = -exps[i];
    gens.push_back(std::move(v));
  }
  return make_lattice(n, false, std::move(gens));
}

/// Ann_{Z[G_t]}(mu_s) for s | t: the exponent of g on mu_s is g mod s.
inline IdealLattice annihilator_of_mu(std::int64_t t, std::int64_t s) {
  require(s >= 1 && t % s == 0, "annihilator_of_mu: s must divide t");
  std::vector<std::int64_t> exps;
  for (auto g : group_elements(t, false)) exps.push_back(mod(g, s));
  if (!exps.empty()) exps[0] = 1 % s;
  return exponent_kernel(t, s, exps);
}

/// Order of -zeta_n and the exponent map g -> e_g with g(-zeta_n) = (-zeta_n)^{e_g}.
inline std::pair<std::int64_t, std::vector<std::int64_t>> minus_zeta_exponents(std::int64_t n) {
  const std::int64_t M = lcm64(2, n);
  const std::int64_t base = mod(M / 2 + M / n, M);  // -zeta_n = zeta_M^base
  const std::int64_t N = M / gcd64(M, base);
  std::vector<std::int64_t> exps;
  for (auto g : group_elements(n, false)) {
    const std::int64_t target = mod(M / 2 + g * (M / n), M);
    std::int64_t e = 0;
    while (e < N && mod(e * base, M) != target) ++e;
    ensure(e < N, "minus_zeta_exponents: discrete log failed");
    exps.push_back(e);
  }
  return {N, exps};
}

/// T_n = Ann(-zeta_n) in Z[G_n]; starred: T_{2n} relabelled to level n when n is odd.
inline IdealLattice annihilator_Tn(std::int64_t n, bool starred) {
  require(n >= 2, "annihilator_Tn: n must be >= 2");
  if (starred && n % 2 == 1) {
    IdealLattice t2 = annihilator_Tn(2 * n, false);
    // G_{2n} -> G_n, a -> a mod n, is a bijection for odd n
    const auto src = group_elements(2 * n, false);
    IntMatrix rows;
    for (auto& r : t2.hnf) {
      GroupRingElt x(n, false);
      for (std::size_t i = 0; i < src.size(); ++i) x.set_coeff(src[i] % n, Rational(r[i]));
      rows.push_back(x.integer_coeffs());
    }
    return make_lattice(n, false, std::move(rows));
  }
  auto [N, exps] = minus_zeta_exponents(n);
  return exponent_kernel(n, N, exps);
}

// ---------------------------------------------------------------------------
// The image claim pi(I_{mp^{b+1}}) = p I_{mp^b}.

/// Kernel of G^+_{M} -> G^+_{M/p} as canonical elements of G^+_M.
inline std::vector<std::int64_t> plus_relative_group(std::int64_t M, std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto a : group_elements(M, true))
    if (canonical_element(n, true, a) == 1) out.push_back(a);
  return out;
}

/// Smallest b >= 0 such that every prime l | m has full decomposition group in
/// Gal(Q(mp^inf)^+ / Q(mp^b)^+). Checked on the first layer, which suffices
/// because that relative group is pro-cyclic of p-power order.
inline int image_claim_b0(std::int64_t m, std::int64_t p, int search_limit = 12) {
  require(is_prime(p) && m % p == 0, "image_claim_b0: p must be a prime dividing m");
  for (int b = 0; b <= search_limit; ++b) {
    const std::int64_t lo = m * ipow(p, b), hi = lo * p;
    if (p == 2 && lo % 4 != 0) continue;
    const auto ker = plus_relative_group(hi, lo);
    bool full = true;
    for (auto ell : prime_divisors(m)) {
      auto D = decomposition_group(hi, ell);
      for (auto h : ker)
        if (!std::binary_search(D.begin(), D.end(), h)) {
          full = false;
          break;
        }
      if (!full) break;
    }
    if (full) return b;
  }
  throw DomainError("image_claim_b0: no b0 found below the search limit");
}

enum class ImageClaim { holds, fails, hypothesis_not_met };

inline const char* to_string(ImageClaim c) {
  switch (c) {
    case ImageClaim::holds:
      return "holds";
    case ImageClaim::fails:
      return "fails";
    default:
      return "hypothesis not met";
  }
}

inline ImageClaim image_is_p_times_I(std::int64_t m, std::int64_t p, int b) {
  const int b0 = image_claim_b0(m, p);
  if (b < b0) return ImageClaim::hypothesis_not_met;
  const std::int64_t lo = m * ipow(p, b), hi = lo * p;
  IdealLattice img = project_annihilator(hi, lo, annihilator_In_formula(hi));
  IdealLattice target = scale_lattice(annihilator_In_formula(lo), p);
  return img == target ? ImageClaim::holds : ImageClaim::fails;
}

}  // namespace circdist

#endif  // CIRCDIST_GROUPRING_HPP
