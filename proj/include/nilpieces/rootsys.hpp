#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilpieces/common.hpp"

namespace nilp {

enum class GroupType : uint8_t { G2, F4, E6 };

inline const char* to_string(GroupType t) {
  switch (t) {
    case GroupType::G2: return "G2";
    case GroupType::F4: return "F4";
    case GroupType::E6: return "E6";
  }
  return "?";
}

inline GroupType group_type_from_string(const std::string& s) {
  if (s == "G2" || s == "g2") return GroupType::G2;
  if (s == "F4" || s == "f4") return GroupType::F4;
  if (s == "E6" || s == "e6") return GroupType::E6;
  throw DataError("unsupported group type '" + s + "' (expected G2, F4 or E6)");
}

constexpr int kMaxRank = 6;
using RootCoords = std::array<int8_t, kMaxRank>;

// Root system of type G2, F4 or E6. Roots are integer vectors in the basis
// of simple roots. Positive roots come first, ordered height-major then
// lexicographically; root m+i is the negative of root i.
class RootSystem {
 public:
  GroupType type;
  int rank = 0;
  int n_pos = 0;                        // |Phi+|
  std::vector<RootCoords> roots;        // size 2*n_pos
  std::array<std::array<int, kMaxRank>, kMaxRank> cartan{};  // <alpha_i, alpha_j^vee>
  std::array<int, kMaxRank> dlen{};     // half squared length of simple root i

  int n_roots() const { return 2 * n_pos; }
  bool is_positive(int r) const { return r < n_pos; }
  int negate(int r) const { return r < n_pos ? r + n_pos : r - n_pos; }

  int height(int r) const {
    int h = 0;
    for (int i = 0; i < rank; ++i) h += roots[r][i];
    return h;
  }

  // half squared length of an arbitrary root
  int root_d(int r) const { return root_d_[r]; }

  int root_index(const RootCoords& c) const {
    auto it = index_.find(key(c));
    return it == index_.end() ? -1 : it->second;
  }

  // simple root i as a root index (guaranteed to be among the first roots)
  int simple(int i) const { return simple_idx_[i]; }

  // bilinear form (beta, gamma) in the normalization with short roots of
  // squared length 2
  long form(const RootCoords& a, const RootCoords& b) const {
    long s = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        s += (long)a[i] * b[j] * cartan[i][j] * dlen[j];
    return s;
  }

  // <beta, gamma^vee> = 2(beta,gamma)/(gamma,gamma)
  int pairing(int beta, int gamma) const {
    long num = 2 * form(roots[beta], roots[gamma]);
    long den = 2 * root_d_[gamma];
    if (num % den != 0) throw std::logic_error("non-integral root pairing");
    return (int)(num / den);
  }

  // <beta, alpha_j^vee> for a simple root j (cheap path)
  int pairing_simple(int beta, int j) const {
    int s = 0;
    for (int i = 0; i < rank; ++i) s += roots[beta][i] * cartan[i][j];
    return s;
  }

  // s_gamma(beta) as a root index
  int reflect(int beta, int gamma) const {
    int k = pairing(beta, gamma);
    RootCoords c = roots[beta];
    for (int i = 0; i < rank; ++i) c[i] = (int8_t)(c[i] - k * roots[gamma][i]);
    int r = root_index(c);
    if (r < 0) throw std::logic_error("reflection left the root system");
    return r;
  }

  // chain extents: beta + p*gamma and beta - q*gamma are roots, one step
  // further is not
  int chain_up(int beta, int gamma) const { return chain_p_[beta * n_roots() + gamma]; }
  int chain_down(int beta, int gamma) const { return chain_q_[beta * n_roots() + gamma]; }

  int sum_index(int a, int b) const { return sum_[a * n_roots() + b]; }  // -1 if not a root

  static std::shared_ptr<const RootSystem> build(GroupType t);

 private:
  std::vector<int8_t> chain_p_, chain_q_;
  std::vector<int> sum_;
  std::vector<int> root_d_;
  std::array<int, kMaxRank> simple_idx_{};
  std::unordered_map<uint64_t, int> index_;

  static uint64_t key(const RootCoords& c) {
    uint64_t k = 0;
    for (int i = 0; i < kMaxRank; ++i) k = (k << 8) | (uint8_t)(c[i] + 64);
    return k;
  }

  void finalize();
};

// --- operations -----------------------------------------------------------

// [OP] build_root_system
inline std::shared_ptr<const RootSystem> build_root_system(GroupType t) {
  return RootSystem::build(t);
}

// [OP] root_chain: (p, q) with beta + p*gamma, beta - q*gamma in Phi
inline std::pair<int, int> root_chain(const RootSystem& rs, int beta, int gamma) {
  if (beta == gamma || beta == rs.negate(gamma))
    throw std::invalid_argument("root_chain: gamma = +-beta is not allowed");
  return {rs.chain_up(beta, gamma), rs.chain_down(beta, gamma)};
}

inline std::shared_ptr<const RootSystem> RootSystem::build(GroupType t) {
  auto rs = std::make_shared<RootSystem>();
  rs->type = t;
  switch (t) {
    case GroupType::G2:
      // alpha_1 short, alpha_2 long
      rs->rank = 2;
      rs->cartan = {{{2, -1}, {-3, 2}}};
      rs->dlen = {1, 3};
      break;
    case GroupType::F4:
      // Bourbaki: alpha_1, alpha_2 long; alpha_3, alpha_4 short
      rs->rank = 4;
      rs->cartan = {{{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}};
      rs->dlen = {2, 2, 1, 1};
      break;
    case GroupType::E6:
      // Bourbaki numbering, node 2 attached to node 4
      rs->rank = 6;
      rs->cartan = {{{2, 0, -1, 0, 0, 0},
                     {0, 2, 0, -1, 0, 0},
                     {-1, 0, 2, -1, 0, 0},
                     {0, -1, -1, 2, -1, 0},
                     {0, 0, 0, -1, 2, -1},
                     {0, 0, 0, 0, -1, 2}}};
      rs->dlen = {1, 1, 1, 1, 1, 1};
      break;
  }
  rs->finalize();
  return rs;
}

inline void RootSystem::finalize() {
  // closure of the simple roots under simple reflections
  std::map<RootCoords, int> seen;
  std::vector<RootCoords> all;
  auto push = [&](const RootCoords& c) {
    if (!seen.count(c)) {
      seen[c] = (int)all.size();
      all.push_back(c);
    }
  };
  for (int i = 0; i < rank; ++i) {
    RootCoords c{};
    c[i] = 1;
    push(c);
  }
  auto pair_simple = [&](const RootCoords& c, int j) {
    int s = 0;
    for (int i = 0; i < rank; ++i) s += c[i] * cartan[i][j];
    return s;
  };
  for (size_t k = 0; k < all.size(); ++k) {
    RootCoords c = all[k];
    for (int j = 0; j < rank; ++j) {
      int pr = pair_simple(c, j);
      RootCoords r = c;
      r[j] = (int8_t)(r[j] - pr);
      push(r);
    }
  }

  std::vector<RootCoords> pos;
  for (auto& c : all) {
    bool nonneg = true;
    for (int i = 0; i < rank; ++i) nonneg = nonneg && c[i] >= 0;
    if (nonneg) pos.push_back(c);
  }
  auto ht = [&](const RootCoords& c) {
    int h = 0;
    for (int i = 0; i < rank; ++i) h += c[i];
    return h;
  };
  std::sort(pos.begin(), pos.end(), [&](const RootCoords& a, const RootCoords& b) {
    int ha = ht(a), hb = ht(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });

  n_pos = (int)pos.size();
  if ((int)all.size() != 2 * n_pos) throw std::logic_error("root closure is not symmetric");
  roots = pos;
  roots.resize(2 * n_pos);
  for (int i = 0; i < n_pos; ++i) {
    RootCoords neg;
    for (int k = 0; k < kMaxRank; ++k) neg[k] = (int8_t)(-pos[i][k]);
    roots[n_pos + i] = neg;
  }
  index_.clear();
  for (int i = 0; i < n_roots(); ++i) index_[key(roots[i])] = i;
  for (int i = 0; i < rank; ++i) {
    RootCoords c{};
    c[i] = 1;
    simple_idx_[i] = root_index(c);
  }

  root_d_.resize(n_roots());
  for (int i = 0; i < n_roots(); ++i) {
    long f = form(roots[i], roots[i]);
    if (f % 2 != 0) throw std::logic_error("odd root length square");
    root_d_[i] = (int)(f / 2);
  }

  int n = n_roots();
  sum_.assign((size_t)n * n, -1);
  chain_p_.assign((size_t)n * n, 0);
  chain_q_.assign((size_t)n * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RootCoords c;
      for (int k = 0; k < kMaxRank; ++k) c[k] = (int8_t)(roots[a][k] + roots[b][k]);
      sum_[(size_t)a * n + b] = root_index(c);
      if (b == a || b == negate(a)) continue;
      int p = 0, q = 0;
      for (;; ++p) {
        RootCoords u;
        for (int k = 0; k < kMaxRank; ++k)
          u[k] = (int8_t)(roots[a][k] + (p + 1) * roots[b][k]);
        if (root_index(u) < 0) break;
      }
      for (;; ++q) {
        RootCoords u;
        for (int k = 0; k < kMaxRank; ++k)
          u[k] = (int8_t)(roots[a][k] - (q + 1) * roots[b][k]);
        if (root_index(u) < 0) break;
      }
      chain_p_[(size_t)a * n + b] = (int8_t)p;
      chain_q_[(size_t)a * n + b] = (int8_t)q;
    }
}

// --- Weyl group -----------------------------------------------------------

// An element of W stored as the permutation it induces on the roots. The
// word is a reduced expression from the BFS enumeration (not canonical).
struct WeylElement {
  std::vector<uint16_t> perm;   // size 2m, perm[r] = index of w(root r)
  std::vector<uint8_t> word;    // simple reflection indices, leftmost applied last

  int length() const { return (int)word.size(); }
  int apply(int root) const { return perm[root]; }

  std::vector<uint16_t> inverse_perm() const {
    std::vector<uint16_t> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = (uint16_t)i;
    return inv;
  }
};

// Complete Weyl group with index lookup by permutation.
class WeylGroup {
 public:
  std::vector<WeylElement> elems;  // BFS order from identity, deterministic

  explicit WeylGroup(const RootSystem& rs) : rs_(rs) {
    int n = rs.n_roots();
    std::vector<std::vector<uint16_t>> sperm(rs.rank);
    for (int j = 0; j < rs.rank; ++j) {
      sperm[j].resize(n);
      for (int r = 0; r < n; ++r) sperm[j][r] = (uint16_t)rs.reflect(r, rs.simple(j));
    }
    WeylElement id;
    id.perm.resize(n);
    for (int r = 0; r < n; ++r) id.perm[r] = (uint16_t)r;
    push(id);
    for (size_t head = 0; head < elems.size(); ++head) {
      WeylElement w = elems[head];  // copy; elems may reallocate
      for (int j = 0; j < rs.rank; ++j) {
        WeylElement nx;
        nx.perm.resize(n);
        // (w * s_j)(r) = w(s_j(r))
        for (int r = 0; r < n; ++r) nx.perm[r] = w.perm[sperm[j][r]];
        nx.word = w.word;
        nx.word.push_back((uint8_t)j);
        push(nx);
      }
    }
  }

  int size() const { return (int)elems.size(); }

  int index_of(const std::vector<uint16_t>& perm) const {
    auto it = index_.find(hash(perm));
    if (it == index_.end()) return -1;
    for (int cand : it->second)
      if (elems[cand].perm == perm) return cand;
    return -1;
  }

  // index of elems[a] * elems[b] (apply b first)
  int compose(int a, int b) const {
    const auto& pa = elems[a].perm;
    const auto& pb = elems[b].perm;
    std::vector<uint16_t> c(pa.size());
    for (size_t r = 0; r < pa.size(); ++r) c[r] = pa[pb[r]];
    return index_of(c);
  }

  int inverse(int a) const { return index_of(elems[a].inverse_perm()); }

 private:
  const RootSystem& rs_;
  std::unordered_map<uint64_t, std::vector<int>> index_;

  static uint64_t hash(const std::vector<uint16_t>& p) {
    uint64_t h = 1469598103934665603ull;
    for (uint16_t v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

  void push(const WeylElement& w) {
    uint64_t h = hash(w.perm);
    auto& bucket = index_[h];
    for (int cand : bucket)
      if (elems[cand].perm == w.perm) return;
    bucket.push_back((int)elems.size());
    elems.push_back(w);
  }
};

// [OP] enumerate_weyl
inline std::shared_ptr<const WeylGroup> enumerate_weyl(const RootSystem& rs) {
  return std::make_shared<const WeylGroup>(rs);
}

// --- weighted Dynkin diagrams ----------------------------------------------

struct WeightedDynkinDiagram {
  std::string label;
  std::vector<int> weights;  // per simple root, values in {0,1,2}

  int eval_coords(const RootCoords& c, int rank) const {
    int s = 0;
    for (int i = 0; i < rank; ++i) s += c[i] * weights[i];
    return s;
  }
  int eval(const RootSystem& rs, int root) const {
    return eval_coords(rs.roots[root], rs.rank);
  }
  bool is_zero() const {
    return std::all_of(weights.begin(), weights.end(), [](int w) { return w == 0; });
  }
  bool is_regular() const {
    return std::all_of(weights.begin(), weights.end(), [](int w) { return w == 2; });
  }
};

// [OP] weight_zero_subgroup: W_0^delta as indices into W, ascending
inline std::vector<int> weight_zero_subgroup(const RootSystem& rs, const WeylGroup& W,
                                             const WeightedDynkinDiagram& d) {
  std::vector<int> gens;
  for (int j = 0; j < rs.rank; ++j)
    if (d.weights[j] == 0) gens.push_back(j);
  std::vector<char> in(W.size(), 0);
  std::vector<int> out;
  std::queue<int> q;
  in[0] = 1;
  q.push(0);
  out.push_back(0);
  // right multiplication by generators stays inside the subgroup
  while (!q.empty()) {
    int w = q.front();
    q.pop();
    for (int j : gens) {
      const auto& pw = W.elems[w].perm;
      std::vector<uint16_t> nx(pw.size());
      for (int r = 0; r < rs.n_roots(); ++r) nx[r] = pw[rs.reflect(r, rs.simple(j))];
      int idx = W.index_of(nx);
      if (idx < 0) throw std::logic_error("subgroup closure left W");
      if (!in[idx]) {
        in[idx] = 1;
        out.push_back(idx);
        q.push(idx);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// [OP] right_transversal: minimal-length representatives of the right cosets
// W_0^delta * w, in W enumeration order
inline std::vector<int> right_transversal(const RootSystem& rs, const WeylGroup& W,
                                          const WeightedDynkinDiagram& d) {
  std::vector<int> zero_nodes;
  for (int j = 0; j < rs.rank; ++j)
    if (d.weights[j] == 0) zero_nodes.push_back(j);
  std::vector<int> reps;
  for (int w = 0; w < W.size(); ++w) {
    auto inv = W.elems[w].inverse_perm();
    bool minimal = true;
    for (int j : zero_nodes)
      if (!rs.is_positive(inv[rs.simple(j)])) {
        minimal = false;
        break;
      }
    if (minimal) reps.push_back(w);
  }
  return reps;
}

}  // namespace nilp
