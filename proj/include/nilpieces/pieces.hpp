#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <set>
#include <mutex>

#include "nilpieces/adjoint.hpp"
#include "nilpieces/data.hpp"
#include "nilpieces/groebner.hpp"

namespace nilp {

enum class Verdict { InPiece, NotInPiece, Undecided };
enum class BangVerdict { InBang, NotInBang, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::InPiece: return "in-piece";
    case Verdict::NotInPiece: return "not-in-piece";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

// A certified solution of a centralizer system: the linear-elimination record
// plus the reduced basis it leaves behind. Free variables of the record may
// be specialized into small extension fields to produce a concrete
// centralizing element outside the parabolic.
struct KillWitness {
  int cell = -1;  // Weyl index of the Bruhat cell containing the centralizer
  std::shared_ptr<const PolyRing> ring;
  std::vector<Poly> system;                // original generators
  std::vector<std::pair<int, Poly>> subs;  // elimination record, apply in order
  std::vector<Poly> reduced;               // remaining generators (consistent)
  std::vector<int> vars;                   // variables of the system
};

struct BranchOutcome {
  enum class Kind { Unreachable, Killed, Certified, Undecided };
  int windex = -1;
  Kind kind = Kind::Undecided;
  std::string detail;
  std::optional<KillWitness> kill;
  std::vector<std::pair<std::string, int>> reach_point;  // specialization used
};

struct MembershipVerdict {
  Verdict value = Verdict::Undecided;
  std::vector<BranchOutcome> branches;
  std::string summary;
};

struct CellResult {
  std::string orbit, diagram;
  Verdict verdict = Verdict::Undecided;
  std::string detail;
  double millis = 0;
};

struct PieceTable {
  GroupType type;
  int p = 0;
  std::vector<std::string> diagram_labels, orbit_labels;
  std::vector<CellResult> cells;  // diagram-major order

  std::map<std::string, std::set<std::string>> pieces() const {
    std::map<std::string, std::set<std::string>> out;
    for (auto& d : diagram_labels) out[d];
    for (auto& c : cells)
      if (c.verdict == Verdict::InPiece) out[c.diagram].insert(c.orbit);
    return out;
  }
  int undecided_count() const {
    int n = 0;
    for (auto& c : cells) n += c.verdict == Verdict::Undecided;
    return n;
  }
};

// does u_a(c) fix x for every c? exact symbolic check in one variable
inline bool unipotent_fixes(const AdjointTables& T, int a, const LieElement<GFVal>& x) {
  auto ring = PolyRing::make(T.A->p, {"t"});
  LieElement<Poly> xp;
  for (auto& [b, c] : x.t) xp.add_term(b, Poly::constant(ring.get(), c.v));
  auto img = ad_unipotent(T, a, Poly::variable(ring.get(), 0), xp);
  return img == xp;
}

// [OP] stabilizing_unipotent_indices: positive roots whose root subgroup
// fixes x identically in the coefficient
inline std::vector<int> stabilizing_unipotent_indices(const AdjointTables& T,
                                                      const LieElement<GFVal>& x) {
  std::vector<int> out;
  for (int a = 0; a < T.A->rs->n_pos; ++a)
    if (unipotent_fixes(T, a, x)) out.push_back(a);
  return out;
}

enum class ReachStatus { Reachable, Unreachable, Undecided };

struct ReachResult {
  ReachStatus status = ReachStatus::Undecided;
  std::shared_ptr<const PolyRing> ring;  // reach ring: c-variables + split slack
  std::vector<int> u_roots;              // roots of the u-factors, positive order
  LieElement<Poly> image;                // Ad(n_w u)(x) with the record applied
  std::vector<std::pair<int, Poly>> subs;
  std::vector<Poly> context;             // reduced Groebner basis of the constraints
};

struct ClassifierOptions {
  Budget budget;
  bool diagonal_shortcut = true;
  bool pruning = true;
};

class Classifier {
 public:
  using Options = ClassifierOptions;

  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const WeylGroup> W;
  std::shared_ptr<const ChevalleyAlgebra> A;
  std::shared_ptr<AdjointTables> T;
  Options opts;

  Classifier(std::shared_ptr<const RootSystem> rs_, std::shared_ptr<const WeylGroup> W_,
             std::shared_ptr<const ChevalleyAlgebra> A_, std::shared_ptr<AdjointTables> T_,
             Options o = Options())
      : rs(std::move(rs_)), W(std::move(W_)), A(std::move(A_)), T(std::move(T_)), opts(o) {}

  int p() const { return A->p; }

  struct DiagCtx {
    WeightedDynkinDiagram d;
    std::vector<int> weight;     // per root index
    std::vector<char> in_w0;     // per W index
    std::vector<int> transversal;
    std::vector<int> outside;    // W \ W_0 in enumeration order
  };

  DiagCtx make_ctx(const WeightedDynkinDiagram& d) const {
    DiagCtx c;
    c.d = d;
    c.weight.resize(rs->n_roots());
    for (int r = 0; r < rs->n_roots(); ++r) c.weight[r] = d.eval(*rs, r);
    auto w0 = weight_zero_subgroup(*rs, *W, d);
    c.in_w0.assign(W->size(), 0);
    for (int w : w0) c.in_w0[w] = 1;
    c.transversal = right_transversal(*rs, *W, d);
    for (int w = 0; w < W->size(); ++w)
      if (!c.in_w0[w]) c.outside.push_back(w);
    return c;
  }

  LieElement<GFVal> orbit_element(const OrbitRep& o) const {
    LieElement<GFVal> x;
    for (int r : o.support) x.add_term(r, GFVal(1, p()));
    return x;
  }

  // [OP] regular_piece_test: closed form for the all-2 diagram
  bool regular_piece_test(const LieElement<GFVal>& x) const {
    std::vector<char> seen(rs->rank, 0);
    for (auto& [b, c] : x.t) {
      bool simple = false;
      for (int i = 0; i < rs->rank; ++i)
        if (b == rs->simple(i)) {
          seen[i] = 1;
          simple = true;
        }
      if (!simple) return false;
      (void)c;
    }
    for (int i = 0; i < rs->rank; ++i)
      if (!seen[i]) return false;
    return true;
  }

  // [OP] diagonal_shortcut: Lemma-3.6 style no-computation verdict
  std::optional<Verdict> diagonal_shortcut(const OrbitRep& o,
                                           const WeightedDynkinDiagram& d) const {
    if (!o.has_hint() || o.hint != d.label) return std::nullopt;
    return Verdict::InPiece;
  }

  // [OP] reach_g2: can Ad(n_w u)(x) land in g_{>=2}^delta?
  ReachResult reach_g2(const LieElement<GFVal>& x, const DiagCtx& dc, int windex,
                       const std::vector<int>& lu) const {
    ReachResult rr;
    auto& w = W->elems[windex];
    std::vector<int> uroots;
    for (int a = 0; a < rs->n_pos; ++a) {
      if (!rs->is_positive(w.apply(a))) {
        if (opts.pruning && std::binary_search(lu.begin(), lu.end(), a)) continue;
        uroots.push_back(a);
      }
    }
    std::vector<std::string> names;
    for (int a : uroots) names.push_back("c" + std::to_string(a));
    for (int z = 0; z < opts.budget.max_splits; ++z) names.push_back("z" + std::to_string(z));
    rr.ring = PolyRing::make(p(), names);
    rr.u_roots = uroots;

    GroupWord<Poly> g;
    g.push_n(windex);
    for (size_t i = 0; i < uroots.size(); ++i)
      g.push_u(uroots[i], Poly::variable(rr.ring.get(), (int)i));
    LieElement<Poly> xp;
    for (auto& [b, c] : x.t) xp.add_term(b, Poly::constant(rr.ring.get(), c.v));

    LieElement<Poly> img = ad_word(*T, g, xp);
    check_element_budget(img, "reach_g2");
    std::vector<Poly> gens;
    for (auto& [b, c] : img.t)
      if (basis_weight(*A, dc.d, b) < 2) gens.push_back(c);

    auto elim = eliminate_linear(gens);
    std::vector<Poly> gb;
    try {
      gb = groebner(elim.reduced, opts.budget);
    } catch (const BudgetExceeded&) {
      rr.status = ReachStatus::Undecided;
      return rr;
    }
    if (gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero()) {
      rr.status = ReachStatus::Unreachable;
      return rr;
    }
    rr.status = ReachStatus::Reachable;
    rr.subs = elim.subs;
    rr.context = gb;
    // push the record through the image, then normal-form mod the context
    for (auto& [b, c] : img.t) {
      Poly q = c;
      for (auto& [v, repl] : elim.subs) q = q.substituted(v, repl);
      c = reduce_full(q, gb);
    }
    img.t.erase(std::remove_if(img.t.begin(), img.t.end(),
                               [](auto& t) { return t.second.is_zero(); }),
                img.t.end());
    rr.image = img;
    return rr;
  }

  // --- centralizer / conjugation systems ------------------------------------

  struct CellSystem {
    std::shared_ptr<const PolyRing> ring;
    std::vector<Poly> gens;       // includes the torus unit relations
    std::vector<int> cell_vars;   // indices of the cell's own unknowns
    bool trivially_unsolvable = false;
  };

  // does u_a(c) fix the element identically? (exact symbolic evaluation)
  bool root_fixes(int a, const LieElement<GFVal>& x) const {
    return unipotent_fixes(*T, a, x);
  }

  bool root_fixes(int a, const LieElement<Poly>& x) const {
    // extend the element's ring by one fresh variable
    const PolyRing* base = x.t.empty() ? nullptr : x.t.front().second.ring;
    if (!base) return true;
    std::vector<std::string> names = base->vars;
    names.push_back("@t");
    auto ring = PolyRing::make(base->p, names);
    LieElement<Poly> xp;
    for (auto& [b, c] : x.t) xp.add_term(b, c.mapped(ring.get()));
    auto img = ad_unipotent(*T, a, Poly::variable(ring.get(), ring->nvars() - 1), xp);
    return img == xp;
  }

  void check_element_budget(const LieElement<Poly>& x, const char* where) const {
    if (opts.budget.max_monomials <= 0) return;
    long total = 0;
    for (auto& [b, c] : x.t) {
      (void)b;
      total += (long)c.n_terms();
    }
    if (total > opts.budget.max_monomials)
      throw BudgetExceeded(std::string(where) + ": symbolic image exceeds the monomial budget");
  }

  // Support reachability: the set of basis directions a product
  // u'(cp) t(d) n_{cell} u(cu) can move coefficients of src into. Unipotent
  // factors only move support upwards along positive-root additions (through
  // the Cartan for opposite pairs), n permutes, t scales. If some target
  // direction stays unreachable, a concrete system is unsolvable.
  bool cell_support_reachable(const LieElement<GFVal>& src, int cell) const {
    int dim = A->dim(), n = rs->n_roots();
    const auto& adj = T->up_adjacency();
    std::vector<char> reach(dim, 0);
    std::vector<int> stack;
    auto push = [&](int b) {
      if (!reach[b]) {
        reach[b] = 1;
        stack.push_back(b);
      }
    };
    auto up_closure = [&] {
      while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int dest : adj[b]) push(dest);
      }
    };
    for (auto& [b, c] : src.t) {
      (void)c;
      push(b);
    }
    up_closure();
    // apply Ad(n_{cell})
    const WeylMap& wm = T->weyl_map(cell);
    std::vector<char> mid(dim, 0);
    for (int b = 0; b < n; ++b)
      if (reach[b]) mid[wm.root_dest[b]] = 1;
    for (int j = 0; j < rs->rank; ++j)
      if (reach[n + j])
        for (int i = 0; i < rs->rank; ++i)
          if (A->reduce(wm.cartan[i][j]) != 0) mid[n + i] = 1;
    reach = mid;
    for (int b = 0; b < dim; ++b)
      if (reach[b]) stack.push_back(b);
    up_closure();
    for (auto& [b, c] : src.t) {
      (void)c;
      if (!reach[b]) return false;
    }
    return true;
  }

  // System expressing Ad(u'(cp) t(d) n_{cell} u(cu))(src) = dst over the given
  // parameter polynomials. src and dst share the parameter ring (or are
  // concrete). Sound variable reductions: u-factors fixing src and u'-factors
  // fixing dst are omitted.
  CellSystem build_cell_system(const LieElement<GFVal>& src_const,
                               const LieElement<Poly>* src_fam,
                               const LieElement<Poly>* dst_fam,
                               const std::vector<Poly>& context, int cell,
                               const PolyRing* param_ring) const {
    CellSystem cs;
    auto winv = W->elems[cell].inverse_perm();
    std::vector<int> up_roots, u_roots;
    for (int a = 0; a < rs->n_pos; ++a) {
      bool drop_u = src_fam ? root_fixes(a, *src_fam) : root_fixes(a, src_const);
      if (!drop_u) u_roots.push_back(a);
      if (!rs->is_positive(winv[a])) {
        bool drop_up = dst_fam ? root_fixes(a, *dst_fam)
                               : (src_fam ? false : root_fixes(a, src_const));
        if (!drop_up) up_roots.push_back(a);
      }
    }
    std::vector<std::string> names;
    for (int a : up_roots) names.push_back("cp" + std::to_string(a));
    for (int i = 0; i < rs->rank; ++i) names.push_back("d" + std::to_string(i));
    for (int i = 0; i < rs->rank; ++i) names.push_back("db" + std::to_string(i));
    for (int a : u_roots) names.push_back("cu" + std::to_string(a));
    size_t n_cell_vars = names.size();
    if (param_ring)
      for (auto& v : param_ring->vars) names.push_back(v);
    cs.ring = PolyRing::make(p(), names);
    for (size_t i = 0; i < n_cell_vars; ++i) cs.cell_vars.push_back((int)i);
    const PolyRing* R = cs.ring.get();

    LieElement<Poly> src;
    if (src_fam) {
      for (auto& [b, c] : src_fam->t) src.add_term(b, c.mapped(R));
    } else {
      for (auto& [b, c] : src_const.t) src.add_term(b, Poly::constant(R, c.v));
    }
    LieElement<Poly> dst;
    if (dst_fam) {
      for (auto& [b, c] : dst_fam->t) dst.add_term(b, c.mapped(R));
    } else if (src_fam) {
      dst = src;
    } else {
      for (auto& [b, c] : src_const.t) dst.add_term(b, Poly::constant(R, c.v));
    }

    // Ad(u' t n u)(src) = dst  <=>  Ad(t n u)(src) = Ad(u')^{-1}(dst).
    // Keeping the u'-variables on their own side of the equation stops the
    // cross products between the two unipotent coordinate families from
    // blowing up the system.
    GroupWord<Poly> right;
    right.push_n(cell);
    for (size_t i = 0; i < u_roots.size(); ++i)
      right.push_u(u_roots[i],
                   Poly::variable(R, (int)(up_roots.size() + 2 * rs->rank + i)));
    LieElement<Poly> lhs = ad_word(*T, right, src);
    for (int i = rs->rank - 1; i >= 0; --i)
      lhs = ad_torus(*T, i, Poly::variable(R, (int)up_roots.size() + i),
                     Poly::variable(R, (int)up_roots.size() + rs->rank + i), lhs);
    check_element_budget(lhs, "cell system");

    GroupWord<Poly> left_inv;  // (u')^{-1} = product of inverses, reversed
    for (size_t i = up_roots.size(); i-- > 0;)
      left_inv.push_u(up_roots[i], -Poly::variable(R, (int)i));
    LieElement<Poly> rhs = ad_word(*T, left_inv, dst);
    check_element_budget(rhs, "cell system");

    // difference must vanish coordinatewise
    LieElement<Poly> diff = lhs + rhs.times_int(-1);
    for (auto& [b, c] : diff.t) {
      (void)b;
      if (!c.is_zero()) cs.gens.push_back(c);
    }
    for (int i = 0; i < rs->rank; ++i) {
      Poly rel = Poly::variable(R, (int)up_roots.size() + i) *
                     Poly::variable(R, (int)up_roots.size() + rs->rank + i) -
                 Poly::constant(R, 1);
      cs.gens.push_back(rel);
    }
    for (auto& cg : context) cs.gens.push_back(cg.mapped(R));

    // fast structural kill: a single-term generator supported purely on unit
    // variables can never vanish
    for (auto& gen : cs.gens) {
      if (gen.is_constant() && !gen.is_zero()) {
        cs.trivially_unsolvable = true;
        return cs;
      }
      if (gen.n_terms() == 1) {
        bool units_only = true;
        for (int v = 0; v < R->nvars() && units_only; ++v) {
          if (!gen.lt().m[v]) continue;
          const std::string& nm = R->vars[v];
          units_only = nm.rfind("d", 0) == 0;  // d<i> or db<i>
        }
        if (units_only) {
          cs.trivially_unsolvable = true;
          return cs;
        }
      }
    }
    return cs;
  }

  // decisive solvability of a concrete centralizer system
  Solvability cell_solvable(const CellSystem& cs, KillWitness* witness) const {
    if (cs.trivially_unsolvable) return Solvability::Unsolvable;
    auto elim = eliminate_linear(cs.gens);
    Solvability s = solvable_over_closure(elim.reduced, opts.budget);
    if (s == Solvability::Solvable && witness) {
      witness->ring = cs.ring;
      witness->system = cs.gens;
      witness->subs = elim.subs;
      try {
        witness->reduced = groebner(elim.reduced, opts.budget);
      } catch (const BudgetExceeded&) {
        witness->reduced = elim.reduced;
      }
      std::set<int> vars;
      for (auto& g : cs.gens)
        for (int v = 0; v < cs.ring->nvars(); ++v)
          if (g.uses_var(v)) vars.insert(v);
      witness->vars.assign(vars.begin(), vars.end());
    }
    return s;
  }

  // uniform solvability: a solution family in the cell unknowns, identically
  // in the parameters over V(context). One-sided: nullopt means "not found".
  std::optional<KillWitness> uniform_solve(const CellSystem& cs,
                                           const std::vector<Poly>& context_in_ring) const {
    if (cs.trivially_unsolvable) return std::nullopt;
    auto nf = [&](const Poly& q) { return reduce_full(q, context_in_ring); };
    std::vector<Poly> gens;
    for (auto& g : cs.gens) {
      Poly q = nf(g);
      if (q.is_constant() && !q.is_zero()) return std::nullopt;
      if (!q.is_zero()) gens.push_back(q);
    }
    std::vector<std::pair<int, Poly>> record;
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t gi = 0; gi < gens.size() && !progress; ++gi) {
        const Poly& g = gens[gi];
        if (g.is_zero()) continue;
        for (int v : cs.cell_vars) {
          if (!g.uses_var(v)) continue;
          int count = 0, coeff = 0;
          bool clean = true;
          for (auto& tm : g.t)
            if (tm.m[v]) {
              ++count;
              if (tm.m[v] != 1 || tm.deg != 1) clean = false;
              coeff = tm.c;
            }
          if (count != 1 || !clean) continue;
          Poly rest = g - Poly::variable(cs.ring.get(), v, 1, coeff);
          int inv = 1;
          for (int x = 1; x < p(); ++x)
            if ((x * coeff) % p() == 1) inv = x;
          Poly repl = (-rest).times_int(inv);
          record.emplace_back(v, repl);
          for (auto& h : gens) {
            h = nf(h.substituted(v, repl));
            if (h.is_constant() && !h.is_zero()) return std::nullopt;
          }
          progress = true;
          break;
        }
      }
    }
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Poly& g) { return g.is_zero(); }),
               gens.end());
    // remaining cell unknowns: try prime-field values, backtracking
    std::vector<int> rest_vars;
    for (int v : cs.cell_vars) {
      bool used = false;
      for (auto& g : gens) used = used || g.uses_var(v);
      bool substituted = false;
      for (auto& [rv, rp] : record) substituted = substituted || rv == v;
      if (used && !substituted) rest_vars.push_back(v);
    }
    if (rest_vars.size() > 14) return std::nullopt;
    std::vector<std::pair<int, Poly>> assigned;
    std::function<bool(size_t, std::vector<Poly>)> search =
        [&](size_t i, std::vector<Poly> cur) -> bool {
      if (i == rest_vars.size()) {
        for (auto& g : cur)
          if (!g.is_zero()) return false;
        return true;
      }
      for (int val = 0; val < p(); ++val) {
        std::vector<Poly> nxt;
        bool bad = false;
        for (auto& g : cur) {
          Poly q = nf(g.substituted(rest_vars[i], Poly::constant(cs.ring.get(), val)));
          if (q.is_constant() && !q.is_zero()) {
            bad = true;
            break;
          }
          if (!q.is_zero()) nxt.push_back(q);
        }
        if (bad) continue;
        assigned.emplace_back(rest_vars[i], Poly::constant(cs.ring.get(), val));
        if (search(i + 1, std::move(nxt))) return true;
        assigned.pop_back();
      }
      return false;
    };
    if (!search(0, gens)) return std::nullopt;
    for (auto& av : assigned) record.push_back(av);

    // verification: the record closes the original system modulo the context
    {
      std::vector<Poly> check = cs.gens;
      for (auto& [v, repl] : record)
        for (auto& g : check) g = g.substituted(v, repl);
      for (auto& g : check)
        if (!nf(g).is_zero()) return std::nullopt;
    }
    KillWitness kw;
    kw.ring = cs.ring;
    kw.system = cs.gens;
    kw.subs = record;
    return kw;
  }

  // --- the bang test ---------------------------------------------------------

  struct BangOutcome {
    BangVerdict verdict = BangVerdict::Undecided;
    std::optional<KillWitness> kill;
    long cells_scanned = 0;
  };

  // concrete x2 in g_2^delta: exhaustive scan of the cells outside the
  // parabolic; InBang only when every cell is decisively unsolvable. The scan
  // fans out to `scan_workers` threads and short-circuits on the first kill.
  int scan_workers = 1;

  BangOutcome bang_point(const LieElement<GFVal>& x2, const DiagCtx& dc) const {
    BangOutcome out;
    std::atomic<bool> undecided{false}, killed{false};
    std::atomic<size_t> next{0};
    std::atomic<long> scanned{0};
    std::mutex kill_mu;
    auto work = [&] {
      for (;;) {
        if (killed.load()) return;
        size_t i = next.fetch_add(1);
        if (i >= dc.outside.size()) return;
        int cell = dc.outside[i];
        scanned.fetch_add(1);
        try {
          if (!cell_support_reachable(x2, cell)) continue;  // decisively unsolvable
          CellSystem cs = build_cell_system(x2, nullptr, nullptr, {}, cell, nullptr);
          KillWitness kw;
          Solvability s = cell_solvable(cs, &kw);
          if (s == Solvability::Solvable) {
            std::lock_guard<std::mutex> lk(kill_mu);
            // keep the earliest kill for determinism
            if (!out.kill || cell < out.kill->cell) {
              kw.cell = cell;
              out.kill = std::move(kw);
            }
            killed.store(true);
          } else if (s == Solvability::Undecided) {
            undecided.store(true);
          }
        } catch (const BudgetExceeded&) {
          undecided.store(true);
        }
      }
    };
    int n = std::max(1, scan_workers);
    if (n == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int i = 1; i < n; ++i) pool.emplace_back(work);
      work();
      for (auto& th : pool) th.join();
    }
    out.cells_scanned = scanned.load();
    if (killed.load()) {
      out.verdict = BangVerdict::NotInBang;
      return out;
    }
    out.verdict = undecided.load() ? BangVerdict::Undecided : BangVerdict::InBang;
    return out;
  }

  // [OP] bang_membership, symbolic form: parameters of x2 are ring variables
  // constrained by the context ideal. NotInBang demands a solution family
  // valid identically in the parameters; InBang demands decisive
  // unsolvability in every cell.
  BangOutcome bang_membership(const LieElement<Poly>& x2, const DiagCtx& dc,
                              const std::vector<Poly>& context,
                              const PolyRing* param_ring) const {
    BangOutcome out;
    bool undecided = false;
    for (int cell : dc.outside) {
      ++out.cells_scanned;
      try {
        CellSystem cs = build_cell_system({}, &x2, nullptr, context, cell, param_ring);
        // uniform family first: it certifies NotInBang outright
        std::vector<Poly> ctx_here;
        for (auto& c : context) ctx_here.push_back(c.mapped(cs.ring.get()));
        if (auto kw = uniform_solve(cs, ctx_here)) {
          kw->cell = cell;
          out.verdict = BangVerdict::NotInBang;
          out.kill = std::move(*kw);
          return out;
        }
        // otherwise try to rule the cell out entirely (params as unknowns)
        Solvability s = cell_solvable(cs, nullptr);
        if (s != Solvability::Unsolvable) undecided = true;
      } catch (const BudgetExceeded&) {
        undecided = true;
      }
    }
    out.verdict = undecided ? BangVerdict::Undecided : BangVerdict::InBang;
    return out;
  }

  // conjugation reduction (Step 4): a uniform family in G_{>=0}^delta taking
  // the dead specialization onto the whole family
  bool uniform_conjugate(const LieElement<GFVal>& y2, const LieElement<Poly>& fam,
                         const DiagCtx& dc, const std::vector<Poly>& context,
                         const PolyRing* param_ring) const {
    for (int w = 0; w < W->size(); ++w) {
      if (!dc.in_w0[w]) continue;
      CellSystem cs = build_cell_system(y2, nullptr, &fam, context, w, param_ring);
      std::vector<Poly> ctx_here;
      for (auto& c : context) ctx_here.push_back(c.mapped(cs.ring.get()));
      if (uniform_solve(cs, ctx_here)) return true;
    }
    return false;
  }

  // --- per-branch family decision ---------------------------------------------

  enum class FamilyVerdict { Certified, AllOut, Undecided };

  struct FamilyOutcome {
    FamilyVerdict v;
    std::optional<KillWitness> kill;
    std::vector<std::pair<std::string, int>> point;
  };

  FamilyOutcome decide_family(const LieElement<Poly>& fam, std::vector<Poly> context,
                              const DiagCtx& dc, const PolyRing* ring, int depth,
                              int next_slack) const {
    FamilyOutcome out{FamilyVerdict::Undecided, std::nullopt, {}};
    // empty variety: nothing to rule out
    Solvability ctx_solv =
        context.empty() ? Solvability::Solvable : solvable_over_closure(context, opts.budget);
    if (ctx_solv == Solvability::Unsolvable) {
      out.v = FamilyVerdict::AllOut;
      return out;
    }

    std::vector<int> param_vars;
    for (int v = 0; v < ring->nvars(); ++v) {
      bool used = false;
      for (auto& [b, c] : fam.t) used = used || c.uses_var(v);
      if (used) param_vars.push_back(v);
    }

    if (param_vars.empty()) {
      // the family is a single point (context may still constrain slack)
      LieElement<GFVal> y2;
      for (auto& [b, c] : fam.t) {
        if (!c.is_constant()) continue;
        if (!c.is_zero()) y2.add_term(b, GFVal(c.lt().c, p()));
      }
      if (ctx_solv == Solvability::Undecided) return out;
      BangOutcome bo = bang_point(y2, dc);
      if (bo.verdict == BangVerdict::InBang) out.v = FamilyVerdict::Certified;
      if (bo.verdict == BangVerdict::NotInBang) {
        out.v = FamilyVerdict::AllOut;
        out.kill = bo.kill;
      }
      return out;
    }

    // Step 2: try a prime-field specialization point
    std::vector<int> all_vars;
    for (int v = 0; v < ring->nvars(); ++v) {
      bool used = false;
      for (auto& g : context) used = used || g.uses_var(v);
      for (auto& [b, c] : fam.t) used = used || c.uses_var(v);
      if (used) all_vars.push_back(v);
    }
    Specialization sp = specialize_solution(context, all_vars, opts.budget);
    bool have_point = sp.symbolic.empty() && !sp.undecided;
    LieElement<GFVal> y2;
    if (have_point) {
      for (auto& [b, c] : fam.t) {
        Poly q = c.evaluated(sp.values);
        if (!q.is_constant()) {
          have_point = false;
          break;
        }
        if (!q.is_zero()) y2.add_term(b, GFVal(q.lt().c, p()));
      }
    }
    if (have_point) {
      BangOutcome bo = bang_point(y2, dc);
      if (bo.verdict == BangVerdict::InBang) {
        out.v = FamilyVerdict::Certified;
        for (auto& [v, val] : sp.values) out.point.emplace_back(ring->vars[v], val);
        return out;
      }
      if (bo.verdict == BangVerdict::NotInBang) {
        // Case 1: transport the dead point across the family
        if (uniform_conjugate(y2, fam, dc, context, ring)) {
          out.v = FamilyVerdict::AllOut;
          out.kill = bo.kill;
          return out;
        }
      }
    }
    // family-level bang: certifies either direction when decisive
    BangOutcome fb = bang_membership(fam, dc, context, ring);
    if (fb.verdict == BangVerdict::NotInBang) {
      out.v = FamilyVerdict::AllOut;
      out.kill = fb.kill;
      return out;
    }
    if (fb.verdict == BangVerdict::InBang) {
      // every point of the (nonempty) family lies in the bang set
      out.v = FamilyVerdict::Certified;
      return out;
    }

    // value split on the first parameter (Step 4, Case 2)
    if (depth >= opts.budget.max_splits || next_slack >= opts.budget.max_splits) return out;
    int v = param_vars.front();
    std::vector<FamilyOutcome> subs;
    bool all_out = true, any_certified = false, any_undecided = false;
    for (int val = 0; val < p(); ++val) {
      LieElement<Poly> f2;
      for (auto& [b, c] : fam.t) {
        Poly q = c.substituted(v, Poly::constant(ring, val));
        if (!q.is_zero()) f2.add_term(b, q);
      }
      std::vector<Poly> ctx2;
      for (auto& g : context) {
        Poly q = g.substituted(v, Poly::constant(ring, val));
        if (q.is_constant() && !q.is_zero()) {
          ctx2 = {Poly::constant(ring, 1)};
          break;
        }
        if (!q.is_zero()) ctx2.push_back(q);
      }
      auto r = decide_family(f2, ctx2, dc, ring, depth + 1, next_slack);
      if (r.v == FamilyVerdict::Certified) any_certified = true;
      if (r.v == FamilyVerdict::Undecided) any_undecided = true;
      if (r.v != FamilyVerdict::AllOut) all_out = false;
      if (any_certified) {
        out = r;
        return out;
      }
      subs.push_back(std::move(r));
    }
    {
      // residual branch: v outside the prime field, via the unit trick
      int zvar = ring->var("z" + std::to_string(next_slack));
      std::vector<Poly> ctx2 = context;
      Poly prod = Poly::constant(ring, 1);
      for (int val = 0; val < p(); ++val)
        prod = prod * (Poly::variable(ring, v) - Poly::constant(ring, val));
      ctx2.push_back(prod * Poly::variable(ring, zvar) - Poly::constant(ring, 1));
      auto r = decide_family(fam, ctx2, dc, ring, depth + 1, next_slack + 1);
      if (r.v == FamilyVerdict::Certified) {
        out = r;
        return out;
      }
      if (r.v == FamilyVerdict::Undecided) any_undecided = true;
      if (r.v != FamilyVerdict::AllOut) all_out = false;
      subs.push_back(std::move(r));
    }
    if (all_out) {
      out.v = FamilyVerdict::AllOut;
      for (auto& s : subs)
        if (s.kill) {
          out.kill = s.kill;
          break;
        }
      return out;
    }
    (void)any_undecided;
    return out;
  }

  // --- classify_membership -----------------------------------------------------

  // [OP] classify_membership
  MembershipVerdict classify_membership(const OrbitRep& o,
                                        const WeightedDynkinDiagram& d) const {
    DiagCtx dc = make_ctx(d);
    LieElement<GFVal> x = orbit_element(o);
    std::vector<int> lu = stabilizing_unipotent_indices(*T, x);
    std::vector<int> reps;
    if (opts.pruning) {
      reps = dc.transversal;
    } else {
      for (int w = 0; w < W->size(); ++w) reps.push_back(w);
    }

    MembershipVerdict mv;
    bool any_undecided = false;
    for (int w : reps) {
      BranchOutcome bo;
      bo.windex = w;
      try {
        ReachResult rr = reach_g2(x, dc, w, lu);
        if (rr.status == ReachStatus::Undecided) {
          bo.kind = BranchOutcome::Kind::Undecided;
          bo.detail = "reach system hit the resource budget";
          any_undecided = true;
          mv.branches.push_back(std::move(bo));
          continue;
        }
        if (rr.status == ReachStatus::Unreachable) {
          bo.kind = BranchOutcome::Kind::Unreachable;
          bo.detail = "image cannot meet g_{>=2}";
          mv.branches.push_back(std::move(bo));
          continue;
        }
        LieElement<Poly> fam = grade_part(*A, rr.image, d, 2);
        FamilyOutcome fo =
            decide_family(fam, rr.context, dc, rr.ring.get(), 0, 0);
        if (fo.v == FamilyVerdict::Certified) {
          bo.kind = BranchOutcome::Kind::Certified;
          bo.detail = "centralizer-free projection reached";
          bo.reach_point = fo.point;
          mv.branches.push_back(std::move(bo));
          mv.value = Verdict::InPiece;
          mv.summary = "certified at transversal class " + std::to_string(w);
          return mv;
        }
        if (fo.v == FamilyVerdict::AllOut) {
          bo.kind = BranchOutcome::Kind::Killed;
          bo.detail = "every solution family is centralized outside the parabolic";
          bo.kill = fo.kill;
          mv.branches.push_back(std::move(bo));
          continue;
        }
        bo.kind = BranchOutcome::Kind::Undecided;
        bo.detail = "family decision exhausted its budget";
        any_undecided = true;
        mv.branches.push_back(std::move(bo));
      } catch (const BudgetExceeded& e) {
        bo.kind = BranchOutcome::Kind::Undecided;
        bo.detail = e.what();
        any_undecided = true;
        mv.branches.push_back(std::move(bo));
      }
    }
    mv.value = any_undecided ? Verdict::Undecided : Verdict::NotInPiece;
    mv.summary = any_undecided ? "at least one transversal class is undecided"
                               : "all transversal classes excluded";
    return mv;
  }

  // one table cell with the configured shortcuts
  MembershipVerdict classify_cell(const OrbitRep& o, const WeightedDynkinDiagram& d) const {
    if (opts.diagonal_shortcut) {
      if (auto v = diagonal_shortcut(o, d)) {
        MembershipVerdict mv;
        mv.value = *v;
        mv.summary = "diagonal case settled without computation";
        return mv;
      }
    }
    return classify_membership(o, d);
  }

  // [OP] classify_all: the full verdict matrix; independent cells fan out to
  // the worker pool
  PieceTable classify_all(const std::vector<OrbitRep>& orbits,
                          const std::vector<WeightedDynkinDiagram>& diagrams,
                          int workers = 1,
                          const std::function<bool(const std::string&, const std::string&)>&
                              skip = nullptr,
                          const std::function<void(const CellResult&)>& on_cell = nullptr) const {
    PieceTable table;
    table.type = rs->type;
    table.p = p();
    for (auto& d : diagrams) table.diagram_labels.push_back(d.label);
    for (auto& o : orbits) table.orbit_labels.push_back(o.label);
    struct Task {
      const OrbitRep* o;
      const WeightedDynkinDiagram* d;
      size_t slot;
    };
    std::vector<Task> tasks;
    table.cells.resize(diagrams.size() * orbits.size());
    for (size_t di = 0; di < diagrams.size(); ++di)
      for (size_t oi = 0; oi < orbits.size(); ++oi) {
        size_t slot = di * orbits.size() + oi;
        table.cells[slot].orbit = orbits[oi].label;
        table.cells[slot].diagram = diagrams[di].label;
        if (skip && skip(orbits[oi].label, diagrams[di].label)) {
          table.cells[slot].verdict = Verdict::Undecided;
          table.cells[slot].detail = "skipped";
          continue;
        }
        tasks.push_back({&orbits[oi], &diagrams[di], slot});
      }
    std::atomic<size_t> next{0};
    std::mutex cb_mu;
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        auto& t = tasks[i];
        auto start = std::chrono::steady_clock::now();
        MembershipVerdict mv = classify_cell(*t.o, *t.d);
        auto& cell = table.cells[t.slot];
        cell.verdict = mv.value;
        cell.detail = mv.summary;
        cell.millis =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (on_cell) {
          std::lock_guard<std::mutex> lk(cb_mu);
          on_cell(cell);
        }
      }
    };
    int n = std::max(1, workers);
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return table;
  }
};

}  // namespace nilp
