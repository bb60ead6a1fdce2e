#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "nilpieces/chevalley.hpp"

namespace nilp {

// Exact characteristic-0 certificates for weighted Dynkin diagrams and orbit
// representatives. A diagram delta with semisimple element h_delta is genuine
// iff some e in g_2^delta extends to an sl2-triple (e, h_delta, f) with
// f in g_{-2}^delta; such an e lies in the dense G_0-orbit of g_2, so its
// orbit is exactly the one labelled by delta.
class CharZero {
 public:
  using Q = boost::multiprecision::cpp_rational;

  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const ChevalleyAlgebra> A0;  // characteristic 0

  explicit CharZero(std::shared_ptr<const RootSystem> r)
      : rs(r), A0(build_algebra(r, 0)) {}

  // h_delta in coroot coordinates: solve cartan * y = weights
  std::vector<Q> h_delta(const std::vector<int>& weights) const {
    int n = rs->rank;
    std::vector<std::vector<Q>> M(n, std::vector<Q>(n + 1));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) M[i][j] = rs->cartan[i][j];
      M[i][n] = weights[i];
    }
    auto sol = gauss_solve(M, n);
    if (!sol) throw std::logic_error("Cartan matrix is singular");
    return *sol;
  }

  std::vector<int> roots_of_weight(const std::vector<int>& weights, int w) const {
    std::vector<int> out;
    WeightedDynkinDiagram d{"", weights};
    for (int r = 0; r < rs->n_roots(); ++r)
      if (d.eval(*rs, r) == w) out.push_back(r);
    return out;
  }

  int orbit_dim(const std::vector<int>& weights) const {
    WeightedDynkinDiagram d{"", weights};
    int dim0 = rs->rank, dim1 = 0;
    for (int r = 0; r < rs->n_roots(); ++r) {
      int w = d.eval(*rs, r);
      if (w == 0) ++dim0;
      if (w == 1) ++dim1;
    }
    return A0->dim() - dim0 - dim1;
  }

  // does (e, h_delta, f) close for some f in g_{-2}? e = sum coeff_i e_{S_i}
  bool sl2_closes(const std::vector<int>& weights, const std::vector<int>& support,
                  const std::vector<long>& coeffs) const {
    auto h = h_delta(weights);
    auto gm2 = roots_of_weight(weights, -2);
    if (support.empty()) {
      for (auto& v : h)
        if (v != 0) return false;
      return true;
    }
    // unknowns: f-coefficients on gm2; equations indexed by the full basis
    int d = A0->dim(), nu = (int)gm2.size();
    std::vector<std::vector<Q>> M(d, std::vector<Q>(nu + 1, Q(0)));
    for (int u = 0; u < nu; ++u) {
      LieElement<Rat> f;
      f.add_term(gm2[u], Rat(1));
      LieElement<Rat> e;
      for (size_t i = 0; i < support.size(); ++i)
        e.add_term(support[i], Rat(coeffs[i]));
      auto br = bracket(*A0, e, f);
      for (auto& [idx, c] : br.t) M[idx][u] = c.v;
    }
    for (int i = 0; i < rs->rank; ++i) M[rs->n_roots() + i][nu] = h[i];
    return linear_system_consistent(M, nu);
  }

  // rank over GF(q) of ad(e): g_0 -> g_2; full rank certifies density of the
  // G_0-orbit of e in g_2 over Q (rank mod q never exceeds the rational rank)
  bool dense_in_g2(const std::vector<int>& weights, const std::vector<int>& support,
                   const std::vector<long>& coeffs) const {
    auto g2 = roots_of_weight(weights, 2);
    if (g2.empty()) return support.empty();
    auto g0roots = roots_of_weight(weights, 0);
    std::vector<int> g0basis = g0roots;
    for (int i = 0; i < rs->rank; ++i) g0basis.push_back(rs->n_roots() + i);
    for (long q : {251L, 65521L}) {
      std::vector<std::vector<long>> M(g2.size(), std::vector<long>(g0basis.size(), 0));
      std::unordered_map<int, int> row;
      for (size_t i = 0; i < g2.size(); ++i) row[g2[i]] = (int)i;
      for (size_t cidx = 0; cidx < g0basis.size(); ++cidx) {
        LieElement<Rat> z;
        z.add_term(g0basis[cidx], Rat(1));
        LieElement<Rat> e;
        for (size_t i = 0; i < support.size(); ++i)
          e.add_term(support[i], Rat(coeffs[i]));
        auto br = bracket(*A0, z, e);
        for (auto& [idx, c] : br.t) {
          auto it = row.find(idx);
          if (it == row.end()) continue;
          auto num = boost::multiprecision::numerator(c.v);
          auto den = boost::multiprecision::denominator(c.v);
          long nv = (long)(num % q), dv = (long)(den % q);
          M[it->second][cidx] = ((nv * inv_mod(dv, q)) % q + q) % q;
        }
      }
      if (rank_mod(M, q) == (long)g2.size()) return true;
    }
    return false;
  }

  // full certificate for a 0/1 representative of the orbit labelled by delta
  bool certifies(const std::vector<int>& weights, const std::vector<int>& support) const {
    WeightedDynkinDiagram d{"", weights};
    for (int r : support)
      if (d.eval(*rs, r) != 2) return false;
    std::vector<long> ones(support.size(), 1);
    return sl2_closes(weights, support, ones) && dense_in_g2(weights, support, ones);
  }

  // is `weights` a genuine weighted Dynkin diagram? probe with generic
  // integer coefficient vectors on g_2
  bool is_wdd(const std::vector<int>& weights) const {
    auto g2 = roots_of_weight(weights, 2);
    bool all_zero = true;
    for (int w : weights) all_zero = all_zero && w == 0;
    if (all_zero) return true;
    if (g2.empty()) return false;
    for (int probe = 0; probe < 3; ++probe) {
      std::vector<long> coeffs(g2.size());
      for (size_t i = 0; i < g2.size(); ++i) {
        long base = (long)i + 1 + probe;
        coeffs[i] = probe == 0 ? (long)i + 1 : (base * base + probe) % 97 + 1;
      }
      if (dense_in_g2(weights, g2, coeffs) && sl2_closes(weights, g2, coeffs)) return true;
    }
    return false;
  }

  // exact kernel dimension of ad(x) over Q; pins the orbit dimension of a
  // representative that is not in standard position
  int ad_kernel_dim(const std::vector<int>& support) const {
    LieElement<Rat> e;
    for (int r : support) e.add_term(r, Rat(1));
    int d = A0->dim();
    std::vector<std::vector<Q>> M(d, std::vector<Q>(d, Q(0)));
    for (int b = 0; b < d; ++b) {
      LieElement<Rat> z;
      z.add_term(b, Rat(1));
      auto br = bracket(*A0, e, z);
      for (auto& [idx, c] : br.t) M[idx][b] = c.v;
    }
    return d - rank_rational(M);
  }

  // conjugation invariants over GF(p) used to separate bad-characteristic
  // classes: kernel dimensions of ad(x)^k, the dimension of ker cap im, and
  // the derived series dimensions of the centralizer subalgebra
  std::vector<int> ad_kernel_profile_mod(const std::vector<int>& support, int p,
                                         int powers = 5) const {
    auto Ap = build_algebra(rs, p);
    int d = Ap->dim();
    std::vector<std::vector<long>> M(d, std::vector<long>(d, 0));
    for (int b = 0; b < d; ++b) {
      LieElement<GFVal> z;
      z.add_term(b, GFVal(1, p));
      LieElement<GFVal> e;
      for (int r : support) e.add_term(r, GFVal(1, p));
      auto br = bracket(*Ap, e, z);
      for (auto& [idx, c] : br.t) M[idx][b] = c.v;
    }
    std::vector<int> out;
    auto Mk = M;
    for (int k = 1; k <= powers; ++k) {
      out.push_back((int)(d - rank_mod(Mk, p)));
      if (k < powers) {
        std::vector<std::vector<long>> nx(d, std::vector<long>(d, 0));
        for (int c = 0; c < d; ++c)
          for (int m = 0; m < d; ++m)
            if (Mk[m][c])
              for (int r = 0; r < d; ++r)
                if (M[r][m]) nx[r][c] = (nx[r][c] + M[r][m] * Mk[m][c]) % p;
        Mk = std::move(nx);
      }
    }
    // basis of z = ker ad(x) via column reduction of [M | I]
    std::vector<std::vector<long>> ker = kernel_basis_mod(M, p);
    out.push_back((int)ker.size());  // consistency with out[0]
    // dim(ker cap im): rank [M | K] - rank M... use rank of the stacked system
    {
      std::vector<std::vector<long>> MK(d);
      for (int r = 0; r < d; ++r) {
        MK[r] = M[r];
        for (auto& kv : ker) MK[r].push_back(kv[r]);
      }
      long rM = rank_mod(M, p), rMK = rank_mod(MK, p);
      // dim(im + ker) = rMK, so dim(ker cap im) = rM + |ker| - rMK
      out.push_back((int)(rM + (long)ker.size() - rMK));
    }
    // derived series of the centralizer subalgebra
    {
      auto Aq = Ap;
      std::vector<std::vector<long>> span = ker;
      for (int step = 0; step < 2; ++step) {
        std::vector<std::vector<long>> prods;
        for (size_t i = 0; i < span.size(); ++i)
          for (size_t j = i + 1; j < span.size(); ++j) {
            LieElement<GFVal> xi, xj;
            for (int b = 0; b < d; ++b) {
              if (span[i][b]) xi.add_term(b, GFVal(span[i][b], p));
              if (span[j][b]) xj.add_term(b, GFVal(span[j][b], p));
            }
            auto br = bracket(*Aq, xi, xj);
            if (br.is_zero()) continue;
            std::vector<long> v(d, 0);
            for (auto& [idx, c] : br.t) v[idx] = c.v;
            prods.push_back(std::move(v));
          }
        if (prods.empty()) {
          out.push_back(0);
          if (step == 0) out.push_back(0);
          break;
        }
        // reduce to a basis
        std::vector<std::vector<long>> matrix = prods;
        long rank = rank_mod(matrix, p);
        out.push_back((int)rank);
        span = basis_from_rows(prods, p);
      }
    }
    return out;
  }

  static std::vector<std::vector<long>> kernel_basis_mod(std::vector<std::vector<long>> M,
                                                         long q) {
    size_t rows = M.size(), cols = rows;
    for (auto& row : M)
      for (auto& v : row) v = ((v % q) + q) % q;
    std::vector<int> pivot_of_col(cols, -1);
    size_t rpos = 0;
    for (size_t c = 0; c < cols && rpos < rows; ++c) {
      size_t piv = rpos;
      while (piv < rows && M[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(M[piv], M[rpos]);
      long inv = inv_mod(M[rpos][c], q);
      for (size_t cc = 0; cc < cols; ++cc) M[rpos][cc] = (M[rpos][cc] * inv) % q;
      for (size_t r = 0; r < rows; ++r) {
        if (r == rpos || M[r][c] == 0) continue;
        long f = M[r][c];
        for (size_t cc = 0; cc < cols; ++cc)
          M[r][cc] = ((M[r][cc] - f * M[rpos][cc]) % q + q) % q;
      }
      pivot_of_col[c] = (int)rpos;
      ++rpos;
    }
    std::vector<std::vector<long>> basis;
    for (size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0) continue;
      std::vector<long> v(cols, 0);
      v[c] = 1;
      for (size_t cc = 0; cc < cols; ++cc)
        if (pivot_of_col[cc] >= 0) v[cc] = (q - M[pivot_of_col[cc]][c]) % q;
      basis.push_back(std::move(v));
    }
    return basis;
  }

  static std::vector<std::vector<long>> basis_from_rows(std::vector<std::vector<long>> rowsv,
                                                        long q) {
    if (rowsv.empty()) return rowsv;
    size_t cols = rowsv[0].size();
    std::vector<std::vector<long>> out;
    std::vector<int> pivots;
    for (auto row : rowsv) {
      for (auto& v : row) v = ((v % q) + q) % q;
      for (size_t i = 0; i < out.size(); ++i) {
        long f = row[pivots[i]];
        if (f)
          for (size_t c = 0; c < cols; ++c)
            row[c] = ((row[c] - f * out[i][c]) % q + q) % q;
      }
      int pc = -1;
      for (size_t c = 0; c < cols; ++c)
        if (row[c]) {
          pc = (int)c;
          break;
        }
      if (pc < 0) continue;
      long inv = inv_mod(row[pc], q);
      for (size_t c = 0; c < cols; ++c) row[c] = (row[c] * inv) % q;
      out.push_back(row);
      pivots.push_back(pc);
    }
    return out;
  }

  // --- exact linear algebra helpers ----------------------------------------

  static long inv_mod(long a, long q) {
    a = ((a % q) + q) % q;
    long t = 0, nt = 1, r = q, nr = a;
    while (nr) {
      long qt = r / nr;
      std::swap(t -= qt * nt, nt);
      std::swap(r -= qt * nr, nr);
    }
    return ((t % q) + q) % q;
  }

  static long rank_mod(std::vector<std::vector<long>> M, long q) {
    if (M.empty()) return 0;
    size_t rows = M.size(), cols = M[0].size();
    for (auto& row : M)
      for (auto& v : row) v = ((v % q) + q) % q;
    long rank = 0;
    size_t rpos = 0;
    for (size_t c = 0; c < cols && rpos < rows; ++c) {
      size_t piv = rpos;
      while (piv < rows && M[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(M[piv], M[rpos]);
      long inv = inv_mod(M[rpos][c], q);
      for (size_t cc = c; cc < cols; ++cc) M[rpos][cc] = (M[rpos][cc] * inv) % q;
      for (size_t r = 0; r < rows; ++r) {
        if (r == rpos || M[r][c] == 0) continue;
        long f = M[r][c];
        for (size_t cc = c; cc < cols; ++cc)
          M[r][cc] = ((M[r][cc] - f * M[rpos][cc]) % q + q) % q;
      }
      ++rpos;
      ++rank;
    }
    return rank;
  }

  static long rank_rational(std::vector<std::vector<Q>> M) {
    if (M.empty()) return 0;
    size_t rows = M.size(), cols = M[0].size();
    long rank = 0;
    size_t rpos = 0;
    for (size_t c = 0; c < cols && rpos < rows; ++c) {
      size_t piv = rpos;
      while (piv < rows && M[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(M[piv], M[rpos]);
      Q p = M[rpos][c];
      for (size_t cc = c; cc < cols; ++cc) M[rpos][cc] /= p;
      for (size_t r = rpos + 1; r < rows; ++r) {
        if (M[r][c] == 0) continue;
        Q f = M[r][c];
        for (size_t cc = c; cc < cols; ++cc) M[r][cc] -= f * M[rpos][cc];
      }
      ++rpos;
      ++rank;
    }
    return rank;
  }

  // augmented [A | b] with `nu` unknowns: solve, returning the unknowns
  static std::optional<std::vector<Q>> gauss_solve(std::vector<std::vector<Q>> M, int nu) {
    size_t rows = M.size();
    std::vector<int> pivot_col(rows, -1);
    size_t rpos = 0;
    for (int c = 0; c < nu && rpos < rows; ++c) {
      size_t piv = rpos;
      while (piv < rows && M[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(M[piv], M[rpos]);
      Q p = M[rpos][c];
      for (int cc = c; cc <= nu; ++cc) M[rpos][cc] /= p;
      for (size_t r = 0; r < rows; ++r) {
        if (r == rpos || M[r][c] == 0) continue;
        Q f = M[r][c];
        for (int cc = c; cc <= nu; ++cc) M[r][cc] -= f * M[rpos][cc];
      }
      pivot_col[rpos] = c;
      ++rpos;
    }
    for (size_t r = rpos; r < rows; ++r)
      if (M[r][nu] != 0) return std::nullopt;
    std::vector<Q> sol(nu, Q(0));
    for (size_t r = 0; r < rpos; ++r) sol[pivot_col[r]] = M[r][nu];
    return sol;
  }

  static bool linear_system_consistent(const std::vector<std::vector<Q>>& M, int nu) {
    return gauss_solve(M, nu).has_value();
  }
};

}  // namespace nilp
