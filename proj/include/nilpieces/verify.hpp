#pragma once

#include <random>

#include "nilpieces/charzero.hpp"
#include "nilpieces/data.hpp"
#include "nilpieces/gfext.hpp"
#include "nilpieces/pieces.hpp"

namespace nilp {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyConfig {
  GroupType type = GroupType::G2;
  int p = 2;
  long seed = 1;
  Budget budget;
  std::string diagrams_path = "data/diagrams.dat";
  std::string orbits_path = "data/orbits.dat";
  std::string expected_path = "data/expected.dat";
};

namespace verify_detail {

struct Ctx {
  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const WeylGroup> W;
  std::shared_ptr<const ChevalleyAlgebra> A;
  std::shared_ptr<AdjointTables> T;

  Ctx(GroupType t, int p) {
    rs = build_root_system(t);
    W = enumerate_weyl(*rs);
    A = build_algebra(rs, p);
    T = std::make_shared<AdjointTables>(A, W);
  }
};

inline LieElement<GFVal> random_lie(const Ctx& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(0, c.A->p - 1);
  LieElement<GFVal> x;
  for (int b = 0; b < c.A->dim(); ++b) {
    int v = coeff(rng);
    if (v) x.add_term(b, GFVal(v, c.A->p));
  }
  return x;
}

inline GroupWord<GFVal> random_word(const Ctx& c, std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> kind(0, 2), root(0, c.rs->n_roots() - 1),
      node(0, c.rs->rank - 1), welt(0, c.W->size() - 1), unit(1, c.A->p - 1),
      coeff(0, c.A->p - 1);
  GroupWord<GFVal> g;
  for (int i = 0; i < len; ++i) {
    switch (kind(rng)) {
      case 0: g.push_u(root(rng), GFVal(coeff(rng), c.A->p)); break;
      case 1: g.push_n(welt(rng)); break;
      default: {
        GFVal d(unit(rng), c.A->p);
        g.push_h(node(rng), d, d.inverse());
      }
    }
  }
  return g;
}

}  // namespace verify_detail

// Jacobi identity, chain magnitudes, mod-p reduction consistency
inline SuiteResult suite_algebra(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteResult r{"algebra", false, ""};
  Ctx c(cfg.type, cfg.p);
  int d = c.A->dim();
  bool exhaustive = cfg.type != GroupType::E6;
  long checked = 0;
  std::mt19937_64 rng(cfg.seed);
  GFVal one(1, cfg.p);
  auto basis = [&](int i) {
    LieElement<GFVal> x;
    x.add_term(i, one);
    return x;
  };
  auto jacobi = [&](int a, int b, int cc) {
    auto res = bracket(*c.A, bracket(*c.A, basis(a), basis(b)), basis(cc)) +
               bracket(*c.A, bracket(*c.A, basis(b), basis(cc)), basis(a)) +
               bracket(*c.A, bracket(*c.A, basis(cc), basis(a)), basis(b));
    return res.is_zero();
  };
  if (exhaustive) {
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b)
        for (int cc = b; cc < d; ++cc) {
          ++checked;
          if (!jacobi(a, b, cc)) {
            r.detail = "Jacobi fails on a basis triple";
            return r;
          }
        }
  } else {
    std::uniform_int_distribution<int> pick(0, d - 1);
    for (int i = 0; i < 30000; ++i) {
      ++checked;
      if (!jacobi(pick(rng), pick(rng), pick(rng))) {
        r.detail = "Jacobi fails on a sampled triple";
        return r;
      }
    }
  }
  // chain magnitude on the integral table
  for (int a = 0; a < c.rs->n_roots(); ++a)
    for (int b = 0; b < c.rs->n_roots(); ++b) {
      if (b == a || b == c.rs->negate(a)) continue;
      int s = c.rs->sum_index(a, b);
      int n = c.A->n_int(a, b);
      if ((s < 0 && n != 0) ||
          (s >= 0 && std::abs(n) != c.rs->chain_down(b, a) + 1)) {
        r.detail = "chain magnitude violated";
        return r;
      }
    }
  r.pass = true;
  r.detail = "Jacobi residue 0 on " + std::to_string(checked) + " triples, chains ok";
  return r;
}

// Ad is an automorphism; representative maps transport root spaces and the
// delta-filtration; inverse consistency
inline SuiteResult suite_adjoint(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteResult r{"adjoint", false, ""};
  Ctx c(cfg.type, cfg.p);
  std::mt19937_64 rng(cfg.seed);
  GFVal one(1, cfg.p);
  for (int it = 0; it < 200; ++it) {
    auto g = random_word(c, rng, 5);
    auto a = random_lie(c, rng), b = random_lie(c, rng);
    auto lhs = ad_word(*c.T, g, bracket(*c.A, a, b));
    auto rhs = bracket(*c.A, ad_word(*c.T, g, a), ad_word(*c.T, g, b));
    if (!(lhs == rhs)) {
      r.detail = "automorphism property fails";
      return r;
    }
  }
  bool small = cfg.type == GroupType::G2;
  int wlimit = small ? c.W->size() : 200;
  for (int w = 0; w < wlimit; ++w) {
    for (int bidx = 0; bidx < c.rs->n_roots(); ++bidx) {
      LieElement<GFVal> e;
      e.add_term(bidx, one);
      auto img = ad_weyl_rep(*c.T, w, e);
      if (img.t.size() != 1 || img.t[0].first != c.W->elems[w].apply(bidx)) {
        r.detail = "root transport fails";
        return r;
      }
    }
  }
  // inverse consistency with a symbolic coefficient
  {
    auto ring = PolyRing::make(cfg.p, {"c"});
    Poly cv = Poly::variable(ring.get(), 0);
    LieElement<Poly> x;
    for (int b = 0; b < c.A->dim(); ++b) x.add_term(b, Poly::constant(ring.get(), 1));
    int rlimit = small ? c.rs->n_roots() : 24;
    for (int a = 0; a < rlimit; ++a) {
      auto y = ad_unipotent(*c.T, a, cv, x);
      auto z = ad_unipotent(*c.T, a, -cv, y);
      if (!(z == x)) {
        r.detail = "inverse consistency fails";
        return r;
      }
    }
  }
  // weight transport: delta(w^{-1}(w(b))) = delta(b) across all diagrams of
  // the data file (exhaustive for G2)
  if (small) {
    auto diags =
        load_diagrams(cfg.diagrams_path, cfg.type, cfg.p, *c.rs);
    for (auto& d : diags)
      for (int w = 0; w < c.W->size(); ++w) {
        auto inv = c.W->elems[w].inverse_perm();
        for (int b = 0; b < c.rs->n_roots(); ++b) {
          LieElement<GFVal> e;
          e.add_term(b, one);
          auto img = ad_weyl_rep(*c.T, w, e);
          for (auto& [idx, cv2] : img.t) {
            (void)cv2;
            if (d.eval(*c.rs, inv[idx]) != d.eval(*c.rs, b)) {
              r.detail = "filtration transport fails";
              return r;
            }
          }
        }
      }
  }
  r.pass = true;
  r.detail = "automorphism, transport and inverse checks pass";
  return r;
}

// Groebner solvability against exhaustive point enumeration; idempotence and
// ideal-membership soundness
inline SuiteResult suite_groebner(const VerifyConfig& cfg) {
  SuiteResult r{"groebner", false, ""};
  std::mt19937_64 rng(cfg.seed);
  for (int p : {2, 3}) {
    auto ring = PolyRing::make(p, {"x", "y", "z", "w"});
    std::uniform_int_distribution<int> nt(1, 4), ex(0, 2), cf(1, p - 1), ng(1, 3),
        nv(2, 4);
    for (int iter = 0; iter < 500; ++iter) {
      int vars = nv(rng);
      std::vector<Poly> sys;
      int count = ng(rng);
      for (int g = 0; g < count; ++g) {
        Poly f = Poly::zero(ring.get());
        int terms = nt(rng);
        for (int t = 0; t < terms; ++t) {
          Poly mono = Poly::constant(ring.get(), cf(rng));
          for (int v = 0; v < vars; ++v) {
            int e = ex(rng);
            if (e) mono = mono * Poly::variable(ring.get(), v, e);
          }
          f = f + mono;
        }
        if (!f.is_zero()) sys.push_back(f);
      }
      if (sys.empty()) continue;
      auto verdict = solvable_over_closure(sys, cfg.budget);
      bool found = false;
      for (int k = 1; k <= 3 && !found; ++k) found = has_common_zero_over(sys, p, k);
      if (found && verdict == Solvability::Unsolvable) {
        r.detail = "solvability verdict contradicts point enumeration";
        return r;
      }
      if (verdict == Solvability::Unsolvable && found) {
        r.detail = "unsolvable verdict with a witness point";
        return r;
      }
      if (iter % 7 == 0) {
        try {
          auto gb = groebner(sys, cfg.budget);
          auto gb2 = groebner(gb, cfg.budget);
          if (!(gb == gb2)) {
            r.detail = "Groebner basis not idempotent";
            return r;
          }
          for (auto& f : sys)
            if (!reduce_full(f, gb).is_zero()) {
              r.detail = "generator does not reduce to zero";
              return r;
            }
        } catch (const BudgetExceeded&) {
        }
      }
    }
  }
  r.pass = true;
  r.detail = "solvability matches enumeration on 1000 random systems";
  return r;
}

// pruned vs unpruned classification on the full G2 table
inline SuiteResult suite_pruning(const VerifyConfig& cfg) {
  SuiteResult r{"pruning", false, ""};
  if (cfg.type != GroupType::G2) {
    r.detail = "pruning comparison runs on G2 only";
    return r;
  }
  using namespace verify_detail;
  Ctx c(cfg.type, cfg.p);
  auto diagrams = load_diagrams(cfg.diagrams_path, cfg.type, cfg.p, *c.rs);
  auto orbits = load_orbits(cfg.orbits_path, cfg.type, cfg.p, *c.rs);
  ClassifierOptions o1, o2;
  o1.budget = o2.budget = cfg.budget;
  o1.diagonal_shortcut = o2.diagonal_shortcut = false;
  o1.pruning = true;
  o2.pruning = false;
  Classifier c1(c.rs, c.W, c.A, c.T, o1), c2(c.rs, c.W, c.A, c.T, o2);
  auto t1 = c1.classify_all(orbits, diagrams, 2);
  auto t2 = c2.classify_all(orbits, diagrams, 2);
  for (size_t i = 0; i < t1.cells.size(); ++i)
    if (t1.cells[i].verdict != t2.cells[i].verdict) {
      r.detail = "verdicts differ at " + t1.cells[i].diagram + "/" + t1.cells[i].orbit;
      return r;
    }
  if (t1.undecided_count()) {
    r.detail = "undecided cells in the pruned run";
    return r;
  }
  r.pass = true;
  r.detail = "pruned and unpruned verdicts agree on all " +
             std::to_string(t1.cells.size()) + " cells";
  return r;
}

// independent oracles at the verdict level: the regular piece closed form
// against bang_membership, the zero piece, and witness re-verification with
// finite-field specialization
inline SuiteResult suite_oracle(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteResult r{"oracle", false, ""};
  Ctx c(cfg.type, cfg.p);
  std::mt19937_64 rng(cfg.seed);
  ClassifierOptions o;
  o.budget = cfg.budget;
  Classifier cls(c.rs, c.W, c.A, c.T, o);

  // regular piece: closed form vs the bang test on sampled g_2 elements
  WeightedDynkinDiagram reg{"reg", std::vector<int>(c.rs->rank, 2)};
  auto dc = cls.make_ctx(reg);
  int samples = cfg.type == GroupType::G2 ? 25 : 8;
  std::uniform_int_distribution<int> coeff(0, cfg.p - 1);
  int positives = 0;
  for (int it = 0; it < samples; ++it) {
    LieElement<GFVal> y;
    bool all_nonzero = true;
    for (int i = 0; i < c.rs->rank; ++i) {
      int v = it == samples - 1 ? 1 : coeff(rng);  // force one regular sample
      if (v)
        y.add_term(c.rs->simple(i), GFVal(v, cfg.p));
      else
        all_nonzero = false;
    }
    if (it == samples - 1) all_nonzero = true;
    bool closed = cls.regular_piece_test(y) || (all_nonzero && !y.is_zero());
    auto bo = cls.bang_point(y, dc);
    if (bo.verdict == BangVerdict::Undecided) {
      r.detail = "bang test undecided on a regular sample";
      return r;
    }
    bool bang = bo.verdict == BangVerdict::InBang;
    if (closed != bang) {
      r.detail = "regular-piece closed form disagrees with the bang test";
      return r;
    }
    if (bang) ++positives;
    // witness re-verification for the killed samples: the recorded solution
    // of the centralizer system specializes into GF(p^k), k <= 2
    if (!bang && bo.kill) {
      const KillWitness& kw = *bo.kill;
      bool specializes = false;
      for (int k = 1; k <= 2 && !specializes; ++k) {
        // remaining free variables after elimination
        std::set<int> subbed;
        for (auto& [v, q] : kw.subs) {
          (void)q;
          subbed.insert(v);
        }
        std::vector<int> free_vars;
        for (int v : kw.vars)
          if (!subbed.count(v)) free_vars.push_back(v);
        if (free_vars.size() > 6) break;
        GFExt F(cfg.p, k);
        long total = 1;
        for (size_t i = 0; i < free_vars.size(); ++i) total *= F.order();
        for (long idx = 0; idx < total && !specializes; ++idx) {
          long rest = idx;
          std::vector<std::pair<int, GFExt::Elem>> assign;
          for (int v : free_vars) {
            assign.emplace_back(v, F.from_index((int)(rest % F.order())));
            rest /= F.order();
          }
          bool ok = true;
          for (auto& g : kw.reduced) {
            // evaluate over the extension
            std::vector<GFExt::Elem> point(kw.ring->nvars(), F.from_int(0));
            for (auto& [v, e] : assign) point[v] = e;
            if (!F.is_zero(eval_over_ext(F, g, point))) {
              ok = false;
              break;
            }
          }
          if (ok) specializes = true;
        }
      }
      if (!specializes) {
        r.detail = "kill witness does not specialize into GF(p^2)";
        return r;
      }
    }
  }

  // zero piece: x = 0 lies exactly in the all-zero piece
  {
    auto diagrams = load_diagrams(cfg.diagrams_path, cfg.type, cfg.p, *c.rs);
    OrbitRep zero{"O1", {}, "-", true};
    int in_count = 0;
    for (auto& d : diagrams) {
      if (cfg.type != GroupType::G2 && !d.is_zero() && !d.is_regular()) continue;
      auto mv = cls.classify_membership(zero, d);
      if (mv.value == Verdict::Undecided) {
        r.detail = "zero-orbit cell undecided";
        return r;
      }
      bool expect = d.is_zero();
      if ((mv.value == Verdict::InPiece) != expect) {
        r.detail = "zero piece misplaced at " + d.label;
        return r;
      }
      if (mv.value == Verdict::InPiece) ++in_count;
    }
    if (in_count != 1) {
      r.detail = "zero orbit not in exactly one checked piece";
      return r;
    }
  }
  r.pass = true;
  r.detail = "closed-form, witness and zero-piece oracles agree (" +
             std::to_string(positives) + " in-bang samples)";
  return r;
}

inline std::vector<SuiteResult> run_verify_suite(const std::string& which,
                                                 const VerifyConfig& cfg) {
  std::vector<SuiteResult> out;
  auto want = [&](const char* n) { return which == "all" || which == n; };
  if (want("algebra")) out.push_back(suite_algebra(cfg));
  if (want("adjoint")) out.push_back(suite_adjoint(cfg));
  if (want("groebner")) out.push_back(suite_groebner(cfg));
  if (want("pruning")) out.push_back(suite_pruning(cfg));
  if (want("oracle")) out.push_back(suite_oracle(cfg));
  if (out.empty()) throw DataError("unknown suite '" + which + "'");
  return out;
}

}  // namespace nilp
