#pragma once

#include <optional>
#include <queue>
#include <set>

#include "nilpieces/poly.hpp"

namespace nilp {

enum class Solvability { Solvable, Unsolvable, Undecided };

inline const char* to_string(Solvability s) {
  switch (s) {
    case Solvability::Solvable: return "solvable";
    case Solvability::Unsolvable: return "unsolvable";
    case Solvability::Undecided: return "undecided";
  }
  return "?";
}

// full normal form of h modulo basis (basis need not be a GB)
inline Poly reduce_full(const Poly& h, const std::vector<Poly>& basis) {
  Poly rem(h.ring);
  Poly cur = h;
  while (!cur.is_zero()) {
    bool hit = false;
    for (const Poly& g : basis) {
      if (g.is_zero()) continue;
      if (g.lt().deg <= cur.lt().deg && mono_divides(g.lt().m, cur.lt().m)) {
        Expo q = cur.lt().m;
        for (size_t i = 0; i < q.size(); ++i) q[i] = (uint16_t)(q[i] - g.lt().m[i]);
        // cur -= (lc(cur)/lc(g)) * q * g, with g monic in practice
        int inv = 1;
        for (int x = 1; x < h.ring->p; ++x)
          if ((x * g.lt().c) % h.ring->p == 1) inv = x;
        int c = (cur.lt().c * inv) % h.ring->p;
        cur = cur - g.times_term(q, cur.lt().deg - g.lt().deg, c);
        hit = true;
        break;
      }
    }
    if (!hit) {
      Poly head(h.ring);
      head.t.push_back(cur.lt());
      rem = rem + head;
      cur.t.erase(cur.t.begin());
    }
  }
  return rem;
}

namespace detail {

inline Expo mono_lcm(const Expo& a, const Expo& b) {
  Expo r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

struct Pair {
  int i, j;
  Expo lcm;
  int deg;
};

inline long basis_monomials(const std::vector<Poly>& G) {
  long n = 0;
  for (auto& g : G) n += (long)g.n_terms();
  return n;
}

}  // namespace detail

// [OP] groebner: reduced Groebner basis under degrevlex, Buchberger with the
// product and chain criteria. Deterministic; throws BudgetExceeded when the
// configured caps are hit.
inline std::vector<Poly> groebner(const std::vector<Poly>& gens, const Budget& budget) {
  using detail::Pair;
  Budget::Timer timer;
  if (gens.empty()) return {};
  const PolyRing* ring = gens.front().ring;

  std::vector<Poly> G;
  for (auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());
  if (G.empty()) return {};

  // dedupe to keep the pair queue small
  std::sort(G.begin(), G.end(), [](const Poly& a, const Poly& b) {
    if (a.t.size() != b.t.size()) return a.t.size() < b.t.size();
    return mono_cmp(a.lt().m, a.lt().deg, b.lt().m, b.lt().deg) < 0;
  });
  G.erase(std::unique(G.begin(), G.end()), G.end());

  auto cmp = [](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg > b.deg;  // min-heap by degree
    if (a.i != b.i) return a.i > b.i;
    return a.j > b.j;
  };
  std::priority_queue<Pair, std::vector<Pair>, decltype(cmp)> queue(cmp);
  std::set<std::pair<int, int>> handled;

  auto push_pairs = [&](int j) {
    for (int i = 0; i < j; ++i) {
      Expo l = detail::mono_lcm(G[i].lt().m, G[j].lt().m);
      int deg = 0;
      for (auto v : l) deg += v;
      queue.push({i, j, std::move(l), deg});
    }
  };
  for (int j = 1; j < (int)G.size(); ++j) push_pairs(j);

  long pairs_done = 0;
  while (!queue.empty()) {
    if (budget.max_pairs > 0 && pairs_done > budget.max_pairs)
      throw BudgetExceeded("groebner: pair budget exceeded");
    if ((pairs_done & 31) == 0) check_deadline(budget, timer, "groebner");
    Pair pr = queue.top();
    queue.pop();
    ++pairs_done;
    handled.insert({pr.i, pr.j});

    const Poly &f = G[pr.i], &g = G[pr.j];
    // product criterion
    {
      bool coprime = true;
      for (size_t k = 0; k < pr.lcm.size() && coprime; ++k)
        coprime = !(f.lt().m[k] && g.lt().m[k]);
      if (coprime) continue;
    }
    // chain criterion
    {
      bool skip = false;
      for (int k = 0; k < (int)G.size() && !skip; ++k) {
        if (k == pr.i || k == pr.j) continue;
        if (!mono_divides(G[k].lt().m, pr.lcm)) continue;
        auto key1 = std::minmax(pr.i, k), key2 = std::minmax(pr.j, k);
        if (handled.count({key1.first, key1.second}) && handled.count({key2.first, key2.second}))
          skip = true;
      }
      if (skip) continue;
    }

    Expo qf = pr.lcm, qg = pr.lcm;
    for (size_t k = 0; k < pr.lcm.size(); ++k) {
      qf[k] = (uint16_t)(qf[k] - f.lt().m[k]);
      qg[k] = (uint16_t)(qg[k] - g.lt().m[k]);
    }
    Poly s = f.times_term(qf, pr.deg - f.lt().deg, 1) - g.times_term(qg, pr.deg - g.lt().deg, 1);
    Poly r = reduce_full(s, G);
    if (r.is_zero()) continue;
    r = r.monic();
    if (r.is_constant()) return {Poly::constant(ring, 1)};
    G.push_back(r);
    if (budget.max_monomials > 0 && detail::basis_monomials(G) > budget.max_monomials)
      throw BudgetExceeded("groebner: monomial budget exceeded");
    push_pairs((int)G.size() - 1);
  }

  // minimalize
  std::vector<Poly> min;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!mono_divides(G[j].lt().m, G[i].lt().m)) continue;
      if (G[j].lt().m == G[i].lt().m) redundant = j < i;  // keep the first
      else redundant = true;
    }
    if (!redundant) min.push_back(G[i]);
  }
  // tail-reduce for the unique reduced basis
  std::vector<Poly> red;
  for (size_t i = 0; i < min.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    Poly r = reduce_full(min[i], others);
    if (!r.is_zero()) red.push_back(r.monic());
  }
  std::sort(red.begin(), red.end(), [](const Poly& a, const Poly& b) {
    return mono_cmp(a.lt().m, a.lt().deg, b.lt().m, b.lt().deg) < 0;
  });
  for (auto& g : red)
    if (g.is_constant()) return {Poly::constant(ring, 1)};
  return red;
}

// [OP] solvable_over_closure: weak Nullstellensatz over the algebraic closure
inline Solvability solvable_over_closure(const std::vector<Poly>& gens, const Budget& budget) {
  bool nonzero = false;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    nonzero = true;
    if (g.is_constant()) return Solvability::Unsolvable;
  }
  if (!nonzero) return Solvability::Solvable;
  try {
    auto gb = groebner(gens, budget);
    if (gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero())
      return Solvability::Unsolvable;
    return Solvability::Solvable;
  } catch (const BudgetExceeded&) {
    return Solvability::Undecided;
  }
}

// Substitution record from linear elimination. Records are ordered; to
// reconstruct a solution of the original system from a solution of the
// reduced system, apply them from the last to the first.
struct LinearElim {
  std::vector<std::pair<int, Poly>> subs;  // var -> replacement
  std::vector<Poly> reduced;
};

// [OP] eliminate_linear: repeatedly solve generators of the shape a*v + g
// (v absent from g) for v and substitute. `allowed` restricts which
// variables may be eliminated (empty = all).
inline LinearElim eliminate_linear(std::vector<Poly> gens,
                                   const std::vector<int>& allowed = {}) {
  LinearElim out;
  if (gens.empty()) return out;
  const PolyRing* ring = gens.front().ring;
  std::vector<char> ok(ring->nvars(), allowed.empty() ? 1 : 0);
  for (int v : allowed) ok[v] = 1;

  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t gi = 0; gi < gens.size() && !progress; ++gi) {
      const Poly& g = gens[gi];
      if (g.is_zero() || g.is_constant()) continue;
      for (int v = 0; v < ring->nvars() && !progress; ++v) {
        if (!ok[v] || !g.uses_var(v)) continue;
        // v must occur exactly once, as the standalone monomial a*v
        int count = 0;
        int coeff = 0;
        bool clean = true;
        for (auto& tm : g.t)
          if (tm.m[v]) {
            ++count;
            if (tm.m[v] != 1 || tm.deg != 1) clean = false;
            coeff = tm.c;
          }
        if (count != 1 || !clean) continue;
        // v = -a^{-1} * (g - a*v)
        Poly rest = g - Poly::variable(ring, v, 1, coeff);
        int inv = 1;
        for (int x = 1; x < ring->p; ++x)
          if ((x * coeff) % ring->p == 1) inv = x;
        Poly repl = (-rest).times_int(inv);
        out.subs.emplace_back(v, repl);
        for (auto& h : gens) h = h.substituted(v, repl);
        progress = true;
      }
    }
  }
  for (auto& g : gens)
    if (!g.is_zero()) out.reduced.push_back(g);
  return out;
}

// extend an assignment of the reduced system's variables to the eliminated
// ones (records applied back to front)
inline std::vector<std::pair<int, int>> back_substitute(
    const LinearElim& elim, std::vector<std::pair<int, int>> assign, const PolyRing* ring) {
  for (auto it = elim.subs.rbegin(); it != elim.subs.rend(); ++it) {
    Poly val = it->second.evaluated(assign);
    if (!val.is_constant())
      throw std::logic_error("back_substitute: assignment does not close the record");
    int c = val.is_zero() ? 0 : val.lt().c;
    assign.emplace_back(it->first, c);
  }
  (void)ring;
  return assign;
}

struct Specialization {
  std::vector<std::pair<int, int>> values;  // var -> prime field value
  std::vector<int> symbolic;                // variables left free
  bool undecided = false;                   // a consistency check hit a budget
};

// [OP] specialize_solution: greedily pin free variables to prime-field
// values (0 first, then 1, ...) while the system stays consistent.
inline Specialization specialize_solution(std::vector<Poly> gens,
                                          const std::vector<int>& free_vars,
                                          const Budget& budget) {
  Specialization out;
  if (gens.empty() && free_vars.empty()) return out;
  const PolyRing* ring = nullptr;
  for (auto& g : gens)
    if (g.ring) ring = g.ring;
  for (int v : free_vars) {
    bool pinned = false;
    for (int val = 0; val < (ring ? ring->p : 2) && !pinned; ++val) {
      std::vector<Poly> trial;
      trial.reserve(gens.size());
      bool contradiction = false;
      for (auto& g : gens) {
        Poly h = ring ? g.substituted(v, Poly::constant(ring, val)) : g;
        if (h.is_constant() && !h.is_zero()) {
          contradiction = true;
          break;
        }
        if (!h.is_zero()) trial.push_back(h);
      }
      if (contradiction) continue;
      Solvability s = trial.empty() ? Solvability::Solvable : solvable_over_closure(trial, budget);
      if (s == Solvability::Solvable) {
        out.values.emplace_back(v, val);
        gens = std::move(trial);
        pinned = true;
      } else if (s == Solvability::Undecided) {
        out.undecided = true;
      }
    }
    if (!pinned) out.symbolic.push_back(v);
  }
  return out;
}

}  // namespace nilp
