#pragma once

#include <mutex>
#include <set>
#include <optional>
#include <variant>

#include "nilpieces/chevalley.hpp"
#include "nilpieces/poly.hpp"

namespace nilp {

// (ad e_a)^k / k! for k >= 1 as integer matrices, computed in characteristic
// zero. Entries are exact; the adjoint module is a Kostant Z-form so the
// divided powers are integral.
struct DividedPowers {
  // mats[k-1][source] = list of (dest, integer coeff)
  std::vector<std::vector<std::vector<std::pair<int, long>>>> mats;
};

// Ad(n_w) as a signed permutation on the root part plus an integer matrix on
// the Cartan part.
struct WeylMap {
  std::vector<int> root_dest;     // per root index
  std::vector<int> root_sign;     // +-1
  std::array<std::array<long, kMaxRank>, kMaxRank> cartan{};  // [i][j]: h_j -> sum_i c h_i
};

class AdjointTables {
 public:
  std::shared_ptr<const ChevalleyAlgebra> A;
  std::shared_ptr<const WeylGroup> W;

  AdjointTables(std::shared_ptr<const ChevalleyAlgebra> alg,
                std::shared_ptr<const WeylGroup> weyl)
      : A(std::move(alg)), W(std::move(weyl)) {
    divided_.resize(A->rs->n_roots());
    weyl_maps_.resize(W->size());
    simple_maps_.resize(A->rs->rank);
  }

  const DividedPowers& divided(int root) const {
    std::lock_guard<std::mutex> lock(mu_);
    return divided_unlocked(root);
  }

  // Ad of the fixed representative n_w = n_{j1}(1)...n_{jl}(1)
  const WeylMap& weyl_map(int windex) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = weyl_maps_[windex];
    if (!slot) slot = compute_weyl_map(windex);
    return *slot;
  }

  const WeylMap& simple_weyl_map(int node) const {
    std::lock_guard<std::mutex> lock(mu_);
    return simple_map_unlocked(node);
  }


  // upward support moves of the unipotent factor maps: b -> dest whenever a
  // divided power of some positive root carries e_b into direction dest with
  // a coefficient that survives mod p
  const std::vector<std::vector<int>>& up_adjacency() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (adj_.empty()) {
      int dim = A->dim();
      adj_.assign(dim, {});
      for (int b = 0; b < dim; ++b) {
        std::set<int> dests;
        for (int a = 0; a < A->rs->n_pos; ++a) {
          const DividedPowers& dp = divided_unlocked(a);
          for (size_t k = 1; k <= dp.mats.size(); ++k)
            for (auto& [dest, coeff] : dp.mats[k - 1][b])
              if (A->reduce(coeff) != 0) dests.insert(dest);
        }
        adj_[b].assign(dests.begin(), dests.end());
      }
    }
    return adj_;
  }
 private:
  mutable std::mutex mu_;
  mutable std::vector<std::vector<int>> adj_;

  const DividedPowers& divided_unlocked(int root) const {
    auto& slot = divided_[root];
    if (!slot) slot = compute_divided(root);
    return *slot;
  }

  const WeylMap& simple_map_unlocked(int node) const {
    auto& slot = simple_maps_[node];
    if (!slot) slot = compute_simple_map(node);
    return *slot;
  }
  mutable std::vector<std::optional<DividedPowers>> divided_;
  mutable std::vector<std::optional<WeylMap>> weyl_maps_;
  mutable std::vector<std::optional<WeylMap>> simple_maps_;

  // dense integer matrix helpers over the full basis
  using Dense = std::vector<std::vector<long>>;

  Dense ad_matrix(int root) const {
    int d = A->dim();
    const RootSystem& R = *A->rs;
    Dense M(d, std::vector<long>(d, 0));
    for (int b = 0; b < d; ++b) {
      // column b: [e_root, basis_b]
      if (b < R.n_roots()) {
        if (b == R.negate(root)) {
          const auto& co = A->coroot(root);
          for (int i = 0; i < R.rank; ++i) M[R.n_roots() + i][b] = co[i];
        } else {
          int s = R.sum_index(root, b);
          if (s >= 0) M[s][b] = A->n_int(root, b);
        }
      } else {
        int i = b - R.n_roots();
        M[root][b] = -(long)R.pairing_simple(root, i);  // [h_i, e_a] = <a,i>e_a
      }
    }
    return M;
  }

  std::optional<DividedPowers> compute_divided(int root) const {
    int d = A->dim();
    Dense M1 = ad_matrix(root);
    DividedPowers out;
    Dense Mk = M1;
    for (int k = 1; k <= 16; ++k) {
      bool zero = true;
      std::vector<std::vector<std::pair<int, long>>> cols(d);
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r)
          if (Mk[r][c]) {
            cols[c].emplace_back(r, Mk[r][c]);
            zero = false;
          }
      if (zero) break;
      out.mats.push_back(std::move(cols));
      // M_{k+1} = M1 * M_k / (k+1), exact
      Dense nx(d, std::vector<long>(d, 0));
      for (int c = 0; c < d; ++c)
        for (int m = 0; m < d; ++m)
          if (Mk[m][c])
            for (int r = 0; r < d; ++r)
              if (M1[r][m]) nx[r][c] += M1[r][m] * Mk[m][c];
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) {
          if (nx[r][c] % (k + 1) != 0)
            throw std::logic_error("divided power is not integral");
          nx[r][c] /= (k + 1);
        }
      Mk = std::move(nx);
      if (k == 16) throw std::logic_error("ad(e_a) is not nilpotent enough");
    }
    return out;
  }

  // exp(ad e_a) at coefficient t (+-1), dense, over Z
  Dense unipotent_dense(int root, long t) const {
    int d = A->dim();
    const DividedPowers& dp = divided_unlocked(root);
    Dense M(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i) M[i][i] = 1;
    long pw = 1;
    for (size_t k = 1; k <= dp.mats.size(); ++k) {
      pw *= t;
      for (int c = 0; c < d; ++c)
        for (auto& [r, v] : dp.mats[k - 1][c]) M[r][c] += pw * v;
    }
    return M;
  }

  std::optional<WeylMap> compute_simple_map(int node) const {
    const RootSystem& R = *A->rs;
    int a = R.simple(node);
    // n_alpha(1) = exp(e_a) exp(-e_{-a}) exp(e_a), computed over Z
    Dense E1 = unipotent_dense(a, 1);
    Dense E2 = unipotent_dense(R.negate(a), -1);
    int d = A->dim();
    auto mul = [&](const Dense& X, const Dense& Y) {
      Dense Z(d, std::vector<long>(d, 0));
      for (int c = 0; c < d; ++c)
        for (int m = 0; m < d; ++m)
          if (Y[m][c])
            for (int r = 0; r < d; ++r)
              if (X[r][m]) Z[r][c] += X[r][m] * Y[m][c];
      return Z;
    };
    Dense M = mul(E1, mul(E2, E1));
    return dense_to_weyl(M, node);
  }

  WeylMap dense_to_weyl(const Dense& M, int check_node) const {
    const RootSystem& R = *A->rs;
    int d = A->dim(), n = R.n_roots();
    WeylMap wm;
    wm.root_dest.assign(n, -1);
    wm.root_sign.assign(n, 0);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < d; ++r)
        if (M[r][c]) {
          if (r >= n || wm.root_dest[c] != -1 || (M[r][c] != 1 && M[r][c] != -1))
            throw std::logic_error("Weyl representative is not a signed permutation");
          wm.root_dest[c] = r;
          wm.root_sign[c] = (int)M[r][c];
        }
      if (check_node >= 0 && wm.root_dest[c] != R.reflect(c, R.simple(check_node)))
        throw std::logic_error("n_alpha permutation mismatch");
    }
    for (int j = 0; j < R.rank; ++j) {
      for (int r = 0; r < n; ++r)
        if (M[r][n + j]) throw std::logic_error("Cartan image leaks into root spaces");
      for (int i = 0; i < R.rank; ++i) wm.cartan[i][j] = M[n + i][n + j];
    }
    return wm;
  }

  std::optional<WeylMap> compute_weyl_map(int windex) const {
    const RootSystem& R = *A->rs;
    const WeylElement& w = W->elems[windex];
    int n = R.n_roots();
    WeylMap acc;
    acc.root_dest.resize(n);
    acc.root_sign.assign(n, 1);
    for (int r = 0; r < n; ++r) acc.root_dest[r] = r;
    for (int i = 0; i < R.rank; ++i)
      for (int j = 0; j < R.rank; ++j) acc.cartan[i][j] = i == j ? 1 : 0;
    // apply factors right to left: acc := map(word[k]) o acc
    for (int k = (int)w.word.size() - 1; k >= 0; --k) {
      const WeylMap* s = &simple_map_unlocked(w.word[k]);
      // acc holds the right tail of the word; the new factor wraps outside:
      // nx = s o acc, acc applied first
      WeylMap nx;
      nx.root_dest.resize(n);
      nx.root_sign.resize(n);
      for (int r = 0; r < n; ++r) {
        nx.root_dest[r] = s->root_dest[acc.root_dest[r]];
        nx.root_sign[r] = acc.root_sign[r] * s->root_sign[acc.root_dest[r]];
      }
      for (int i = 0; i < R.rank; ++i)
        for (int j = 0; j < R.rank; ++j) {
          long v = 0;
          for (int m = 0; m < R.rank; ++m) v += s->cartan[i][m] * acc.cartan[m][j];
          nx.cartan[i][j] = v;
        }
      acc = std::move(nx);
    }
    // cross-check against the abstract Weyl action
    for (int r = 0; r < n; ++r)
      if (acc.root_dest[r] != w.perm[r])
        throw std::logic_error("composed Weyl map disagrees with the permutation");
    return acc;
  }
};

// --- map applications -------------------------------------------------------

// [OP] ad_unipotent: exp(c ad e_a) applied to x; divided powers from the
// characteristic-0 cache, reduced mod p on use
template <class C>
LieElement<C> ad_unipotent(const AdjointTables& T, int root, const C& c,
                           const LieElement<C>& x) {
  const DividedPowers& dp = T.divided(root);
  LieElement<C> out = x;
  if (c.is_zero()) return out;
  C pw = c;
  for (size_t k = 1; k <= dp.mats.size(); ++k) {
    for (auto& [b, coeff] : x.t) {
      for (auto& [dest, n] : dp.mats[k - 1][b]) {
        long r = T.A->reduce(n);
        if (r) out.add_term(dest, (coeff * pw).times_int(r));
      }
    }
    if (k < dp.mats.size()) pw = pw * c;
  }
  return out;
}

template <class C>
LieElement<C> apply_weyl_map(const AdjointTables& T, const WeylMap& wm,
                             const LieElement<C>& x) {
  const RootSystem& R = *T.A->rs;
  int n = R.n_roots();
  LieElement<C> out;
  for (auto& [b, coeff] : x.t) {
    if (b < n) {
      out.add_term(wm.root_dest[b], coeff.times_int(T.A->reduce(wm.root_sign[b])));
    } else {
      int j = b - n;
      for (int i = 0; i < R.rank; ++i) {
        long v = T.A->reduce(wm.cartan[i][j]);
        if (v) out.add_term(n + i, coeff.times_int(v));
      }
    }
  }
  return out;
}

// Ad of the fixed representative n_w
template <class C>
LieElement<C> ad_weyl_rep(const AdjointTables& T, int windex, const LieElement<C>& x) {
  return apply_weyl_map(T, T.weyl_map(windex), x);
}

// [OP] ad_torus: Ad(h_{alpha_node}(d)) acts on e_b by d^{<b, alpha_node^vee>}
// and trivially on the Cartan part. Negative exponents go through dbar with
// d*dbar = 1.
template <class C>
LieElement<C> ad_torus(const AdjointTables& T, int node, const C& d, const C& dbar,
                       const LieElement<C>& x) {
  const RootSystem& R = *T.A->rs;
  int n = R.n_roots();
  LieElement<C> out;
  for (auto& [b, coeff] : x.t) {
    if (b >= n) {
      out.add_term(b, coeff);
      continue;
    }
    int k = R.pairing_simple(b, node);
    C factor = k >= 0 ? d : dbar;
    int e = std::abs(k);
    C val = coeff;
    for (int i = 0; i < e; ++i) val = val * factor;
    out.add_term(b, val);
  }
  return out;
}

// [OP] ad_weyl_simple: Ad(n_{alpha_node}(c)) = Ad(n_{alpha_node}(1)) after the
// inverse torus twist; c invertible, represented by the pair (c, cbar)
template <class C>
LieElement<C> ad_weyl_simple(const AdjointTables& T, int node, const C& c, const C& cbar,
                             const LieElement<C>& x) {
  LieElement<C> y = ad_torus(T, node, cbar, c, x);  // Ad(h_i(c))^{-1}
  return apply_weyl_map(T, T.simple_weyl_map(node), y);
}

// --- symbolic group words ----------------------------------------------------

// Bruhat-shaped word u'(c') t(d) n_w u(c); arbitrary words are allowed.
template <class C>
struct GroupWord {
  struct U {
    int root;
    C coeff;
  };
  struct N {
    int windex;
  };
  struct H {
    int node;
    C d, dbar;
  };
  using Atom = std::variant<U, N, H>;
  std::vector<Atom> atoms;  // product left to right

  void push_u(int root, C c) { atoms.push_back(U{root, std::move(c)}); }
  void push_n(int windex) { atoms.push_back(N{windex}); }
  void push_h(int node, C d, C dbar) { atoms.push_back(H{node, std::move(d), std::move(dbar)}); }
};

// [OP] ad_word: apply Ad of the word to x, rightmost factor first
template <class C>
LieElement<C> ad_word(const AdjointTables& T, const GroupWord<C>& g, const LieElement<C>& x) {
  LieElement<C> cur = x;
  for (auto it = g.atoms.rbegin(); it != g.atoms.rend(); ++it) {
    if (auto* u = std::get_if<typename GroupWord<C>::U>(&*it)) {
      cur = ad_unipotent(T, u->root, u->coeff, cur);
    } else if (auto* nw = std::get_if<typename GroupWord<C>::N>(&*it)) {
      cur = ad_weyl_rep(T, nw->windex, cur);
    } else {
      auto* h = std::get_if<typename GroupWord<C>::H>(&*it);
      cur = ad_torus(T, h->node, h->d, h->dbar, cur);
    }
  }
  return cur;
}

}  // namespace nilp
