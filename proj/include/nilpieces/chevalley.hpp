#pragma once

#include <algorithm>
#include <cassert>
#include <memory>
#include <vector>

#include "nilpieces/gf.hpp"
#include "nilpieces/rootsys.hpp"

namespace nilp {

// Chevalley-basis Lie algebra. Structure constants are computed once over the
// integers (extraspecial pairs get positive sign, everything else is forced
// by the Jacobi identity) and reduced modulo the working characteristic on
// access. Basis layout: index r < 2m is e_{root r}, index 2m+i is h_{i+1}.
class ChevalleyAlgebra {
 public:
  std::shared_ptr<const RootSystem> rs;
  int p = 0;  // 0, 2 or 3; 0 = characteristic-0 reference algebra

  int dim() const { return rs->n_roots() + rs->rank; }
  int cartan_base() const { return rs->n_roots(); }
  bool is_root_basis(int b) const { return b < rs->n_roots(); }

  // N_{a,b} over the integers; 0 iff root a + root b is not a root
  int n_int(int a, int b) const { return n_[(size_t)a * rs->n_roots() + b]; }

  // coroot of root a as integer coordinates over the simple coroots
  const std::array<int, kMaxRank>& coroot(int a) const { return coroot_[a]; }

  long reduce(long n) const {
    if (p == 0) return n;
    long r = n % p;
    return r < 0 ? r + p : r;
  }

  static std::shared_ptr<const ChevalleyAlgebra> build(
      std::shared_ptr<const RootSystem> rs, int p);

 private:
  std::vector<int> n_;
  std::vector<std::array<int, kMaxRank>> coroot_;

  void compute_constants();
};

// [OP] build_algebra
inline std::shared_ptr<const ChevalleyAlgebra> build_algebra(
    std::shared_ptr<const RootSystem> rs, int p) {
  if (p != 0 && p != 2 && p != 3)
    throw std::invalid_argument("characteristic must be 0, 2 or 3");
  return ChevalleyAlgebra::build(std::move(rs), p);
}

inline std::shared_ptr<const ChevalleyAlgebra> ChevalleyAlgebra::build(
    std::shared_ptr<const RootSystem> rs_in, int p_in) {
  auto A = std::make_shared<ChevalleyAlgebra>();
  A->rs = std::move(rs_in);
  A->p = p_in;
  A->compute_constants();
  return A;
}

inline void ChevalleyAlgebra::compute_constants() {
  const RootSystem& R = *rs;
  int n = R.n_roots(), m = R.n_pos;
  n_.assign((size_t)n * n, 0);
  auto N = [&](int a, int b) -> int& { return n_[(size_t)a * n + b]; };

  auto diff_index = [&](int x, int y) {
    RootCoords c;
    for (int k = 0; k < kMaxRank; ++k) c[k] = (int8_t)(R.roots[x][k] - R.roots[y][k]);
    return R.root_index(c);
  };

  // Positive special pairs grouped by their sum, in positive (height-major)
  // order. The extraspecial pair of each sum gets the positive sign; every
  // other special pair follows from a Jacobi instance through the
  // extraspecial pair that only references strictly lower sums:
  //
  //   N(a1,b1) N(a,b) d(b)/d(g) + T2 + T3 = 0, where
  //   T2 = N(a1, a-a1) N(b, a-a1) d(a-a1) d(b) / (d(a) d(b1))   if a-a1 in Phi
  //   T3 = -N(b1-a, a) N(b1-a, a1) d(b1-a) / d(b1)              if b1-a in Phi
  for (int g = 0; g < m; ++g) {
    std::vector<std::pair<int, int>> special;
    for (int a = 0; a < m; ++a) {
      int b = diff_index(g, a);
      if (b < 0 || b >= m || b <= a) continue;
      special.emplace_back(a, b);
    }
    if (special.empty()) continue;
    auto [a1, b1] = special.front();
    N(a1, b1) = R.chain_down(b1, a1) + 1;
    N(b1, a1) = -N(a1, b1);
    for (size_t s = 1; s < special.size(); ++s) {
      auto [a, b] = special[s];
      // exact fraction arithmetic over long: (num, den)
      long n2 = 0, d2 = 1, n3 = 0, d3 = 1;
      int ama1 = diff_index(a, a1);
      if (ama1 >= 0) {
        assert(ama1 < m);
        n2 = (long)N(a1, ama1) * N(b, ama1) * R.root_d(ama1) * R.root_d(b);
        d2 = (long)R.root_d(a) * R.root_d(b1);
      }
      int b1ma = diff_index(b1, a);
      if (b1ma >= 0) {
        assert(b1ma < m);
        n3 = -(long)N(b1ma, a) * N(b1ma, a1) * R.root_d(b1ma);
        d3 = R.root_d(b1);
      }
      // N(a,b) = -(T2 + T3) * d(g) / (d(b) * N(a1,b1))
      long num = -(n2 * d3 + n3 * d2) * R.root_d(g);
      long den = d2 * d3 * R.root_d(b) * N(a1, b1);
      assert(den != 0 && num % den == 0);
      long val = num / den;
      if (val == 0) throw std::logic_error("structure constant resolution failed");
      N(a, b) = (int)val;
      N(b, a) = (int)-val;
    }
  }

  // negative-negative pairs
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (N(a, b) != 0) N(a + m, b + m) = -N(a, b);

  // mixed pairs from the coroot identity:
  //   N(beta, -gamma) = N(alpha,beta) d(alpha)/d(gamma),
  //   N(-gamma, alpha) = N(alpha,beta) d(beta)/d(gamma)  for alpha+beta=gamma
  for (int x = 0; x < m; ++x)
    for (int yneg = 0; yneg < m; ++yneg) {
      int y = yneg + m;
      int s = R.sum_index(x, y);
      if (s < 0) continue;
      long num, den;
      if (R.is_positive(s)) {
        int a = s, b = yneg;  // a + b = x
        num = (long)N(a, b) * R.root_d(a);
        den = R.root_d(x);
        assert(num % den == 0);
        N(x, y) = (int)(num / den);
      } else {
        int a = x, b = R.negate(s);  // a + b = -y
        num = (long)N(a, b) * R.root_d(b);
        den = R.root_d(yneg);
        assert(num % den == 0);
        N(x, y) = (int)(-num / den);
      }
      N(y, x) = -N(x, y);
    }

  // coroots over the simple coroots: for a = sum m_i alpha_i,
  // a^vee = sum m_i d_i / d_a * alpha_i^vee
  coroot_.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < R.rank; ++i) {
      long num = (long)R.roots[a][i] * R.dlen[i];
      assert(num % R.root_d(a) == 0);
      coroot_[a][i] = (int)(num / R.root_d(a));
    }
}

// --- Lie algebra elements ---------------------------------------------------

// Sparse element over a coefficient type C. C must provide is_zero(), the
// ring operations, and times_int(). Canonical form: sorted by basis index,
// no zero coefficients stored.
template <class C>
struct LieElement {
  std::vector<std::pair<int, C>> t;

  bool is_zero() const { return t.empty(); }

  void add_term(int idx, const C& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(t.begin(), t.end(), idx,
                               [](const auto& a, int i) { return a.first < i; });
    if (it != t.end() && it->first == idx) {
      it->second = it->second + c;
      if (it->second.is_zero()) t.erase(it);
    } else {
      t.insert(it, {idx, c});
    }
  }

  const C* coeff(int idx) const {
    auto it = std::lower_bound(t.begin(), t.end(), idx,
                               [](const auto& a, int i) { return a.first < i; });
    if (it != t.end() && it->first == idx) return &it->second;
    return nullptr;
  }

  LieElement operator+(const LieElement& o) const {
    LieElement r = *this;
    for (auto& [i, c] : o.t) r.add_term(i, c);
    return r;
  }

  LieElement scaled(const C& s) const {
    LieElement r;
    if (s.is_zero()) return r;
    for (auto& [i, c] : t) {
      C x = c * s;
      if (!x.is_zero()) r.t.emplace_back(i, x);
    }
    return r;
  }

  LieElement times_int(long k) const {
    LieElement r;
    for (auto& [i, c] : t) {
      C x = c.times_int(k);
      if (!x.is_zero()) r.t.emplace_back(i, x);
    }
    return r;
  }

  bool operator==(const LieElement& o) const { return t == o.t; }
};

// [OP] bracket
template <class C>
LieElement<C> bracket(const ChevalleyAlgebra& A, const LieElement<C>& x,
                      const LieElement<C>& y) {
  const RootSystem& R = *A.rs;
  int m = R.n_roots();
  LieElement<C> out;
  for (auto& [bx, cx] : x.t)
    for (auto& [by, cy] : y.t) {
      if (bx >= m && by >= m) continue;  // [t, t] = 0
      C prod = cx * cy;
      if (prod.is_zero()) continue;
      if (bx >= m) {  // [h_i, e_b]
        int i = bx - m;
        long k = A.reduce(R.pairing_simple(by, i));
        out.add_term(by, prod.times_int(k));
      } else if (by >= m) {  // [e_a, h_i] = -[h_i, e_a]
        int i = by - m;
        long k = A.reduce(-(long)R.pairing_simple(bx, i));
        out.add_term(bx, prod.times_int(k));
      } else if (by == R.negate(bx)) {  // [e_a, e_{-a}] = coroot
        const auto& co = A.coroot(bx);
        for (int i = 0; i < R.rank; ++i)
          if (co[i]) out.add_term(m + i, prod.times_int(A.reduce(co[i])));
      } else {
        int s = R.sum_index(bx, by);
        if (s >= 0) out.add_term(s, prod.times_int(A.reduce(A.n_int(bx, by))));
      }
    }
  return out;
}

// weight of a basis vector under delta (Cartan part has weight 0)
inline int basis_weight(const ChevalleyAlgebra& A, const WeightedDynkinDiagram& d, int b) {
  return b < A.rs->n_roots() ? d.eval(*A.rs, b) : 0;
}

// [OP] grade_part: the g_i^delta-part of x (for i = 0 this includes t)
template <class C>
LieElement<C> grade_part(const ChevalleyAlgebra& A, const LieElement<C>& x,
                         const WeightedDynkinDiagram& d, int i) {
  LieElement<C> r;
  for (auto& [b, c] : x.t)
    if (basis_weight(A, d, b) == i) r.t.emplace_back(b, c);
  return r;
}

// [OP] in_g_geq, concrete form
template <class C>
bool in_g_geq(const ChevalleyAlgebra& A, const LieElement<C>& x,
              const WeightedDynkinDiagram& d, int i) {
  for (auto& [b, c] : x.t)
    if (basis_weight(A, d, b) < i) return false;
  return true;
}

// [OP] in_g_geq, symbolic form: the coefficients that must vanish
template <class C>
std::vector<C> g_geq_conditions(const ChevalleyAlgebra& A, const LieElement<C>& x,
                                const WeightedDynkinDiagram& d, int i) {
  std::vector<C> out;
  for (auto& [b, c] : x.t)
    if (basis_weight(A, d, b) < i) out.push_back(c);
  return out;
}

}  // namespace nilp
