#include "doctest.h"
#include "nilpieces/pieces.hpp"

#include <set>

using namespace nilp;

namespace {

struct G2Fix {
  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const WeylGroup> W;
  std::shared_ptr<const ChevalleyAlgebra> A;
  std::shared_ptr<AdjointTables> T;
  std::vector<WeightedDynkinDiagram> diagrams;
  std::vector<OrbitRep> orbits;
  std::map<std::string, std::set<std::string>> expected;

  explicit G2Fix(int p) {
    rs = build_root_system(GroupType::G2);
    W = enumerate_weyl(*rs);
    A = build_algebra(rs, p);
    T = std::make_shared<AdjointTables>(A, W);
    diagrams = {{"D1", {0, 0}}, {"D2", {0, 1}}, {"D3", {1, 0}}, {"D4", {0, 2}},
                {"D5", {2, 2}}};
    auto idx = [&](int a, int b) {
      RootCoords c{(int8_t)a, (int8_t)b};
      return rs->root_index(c);
    };
    if (p == 2) {
      orbits = {{"O1", {}, "D1", false},
                {"O2", {idx(1, 0), idx(0, 1)}, "D5", false},
                {"O3", {idx(1, 0), idx(2, 1)}, "D4", false},
                {"O4", {idx(1, 0)}, "D3", false},
                {"O5", {idx(0, 1)}, "D2", false}};
      expected = {{"D1", {"O1"}}, {"D2", {"O5"}}, {"D3", {"O4"}}, {"D4", {"O3"}},
                  {"D5", {"O2"}}};
    } else {
      orbits = {{"O1", {}, "D1", false},
                {"O2", {idx(1, 0), idx(0, 1)}, "D5", false},
                {"O3", {idx(0, 1), idx(1, 1)}, "-", true},
                {"O4", {idx(0, 1), idx(2, 1)}, "D4", false},
                {"O5", {idx(1, 0)}, "D3", false},
                {"O6", {idx(0, 1)}, "D2", false}};
      expected = {{"D1", {"O1"}}, {"D2", {"O6"}}, {"D3", {"O3", "O5"}},
                  {"D4", {"O4"}}, {"D5", {"O2"}}};
    }
  }

  Classifier classifier(bool shortcut, bool pruning) const {
    ClassifierOptions o;
    o.budget.timeout_secs = 30;
    o.diagonal_shortcut = shortcut;
    o.pruning = pruning;
    Classifier c(rs, W, A, T, o);
    return c;
  }
};

}  // namespace

TEST_CASE("stabilizing unipotent indices") {
  G2Fix f(3);
  // x = 0: every positive root subgroup stabilizes
  LieElement<GFVal> zero;
  CHECK(stabilizing_unipotent_indices(*f.T, zero).size() == (size_t)f.rs->n_pos);
  // highest root: nothing above it, all of U fixes it
  LieElement<GFVal> top;
  top.add_term(f.rs->root_index({3, 2}), GFVal(1, 3));
  CHECK(stabilizing_unipotent_indices(*f.T, top).size() == (size_t)f.rs->n_pos);
  // regular element: exactly the roots whose bracket with every simple root
  // vanishes mod p (chain constants divisible by p count as zero)
  LieElement<GFVal> reg;
  reg.add_term(f.rs->simple(0), GFVal(1, 3));
  reg.add_term(f.rs->simple(1), GFVal(1, 3));
  auto lu = stabilizing_unipotent_indices(*f.T, reg);
  std::set<int> lu_set(lu.begin(), lu.end());
  for (int a = 0; a < f.rs->n_pos; ++a) {
    LieElement<GFVal> ea;
    ea.add_term(a, GFVal(1, 3));
    bool fixes_first_order = bracket(*f.A, ea, reg).is_zero();
    // first-order vanishing implies all higher divided powers vanish on reg
    CHECK(lu_set.count(a) == (size_t)(fixes_first_order ? 1 : 0));
  }
}

TEST_CASE("reach examples") {
  G2Fix f(3);
  auto cls = f.classifier(false, true);
  auto dc = cls.make_ctx(f.diagrams[1]);  // D2 = (0,1)

  // x = 0 reaches everything trivially
  LieElement<GFVal> zero;
  auto rr = cls.reach_g2(zero, dc, 0, {});
  CHECK(rr.status == ReachStatus::Reachable);
  CHECK(rr.context.empty());

  // e_beta lands in g_2 under some transversal class (delta(highest) = 2)
  LieElement<GFVal> eb;
  eb.add_term(f.rs->simple(1), GFVal(1, 3));
  auto lu = stabilizing_unipotent_indices(*f.T, eb);
  bool reachable_somewhere = false;
  for (int w : dc.transversal)
    if (cls.reach_g2(eb, dc, w, lu).status == ReachStatus::Reachable)
      reachable_somewhere = true;
  CHECK(reachable_somewhere);
}

TEST_CASE("bang examples") {
  G2Fix f(3);
  auto cls = f.classifier(false, true);

  // x2 = 0 and delta nonzero: any outside cell centralizes 0
  auto dc2 = cls.make_ctx(f.diagrams[1]);
  LieElement<GFVal> zero;
  auto bo = cls.bang_point(zero, dc2);
  CHECK(bo.verdict == BangVerdict::NotInBang);

  // regular diagram: full simple-root support is in the bang set
  auto dreg = cls.make_ctx(f.diagrams[4]);
  LieElement<GFVal> reg;
  reg.add_term(f.rs->simple(0), GFVal(1, 3));
  reg.add_term(f.rs->simple(1), GFVal(1, 3));
  CHECK(cls.bang_point(reg, dreg).verdict == BangVerdict::InBang);
  CHECK(cls.regular_piece_test(reg));

  // one simple coefficient missing: killed
  LieElement<GFVal> partial;
  partial.add_term(f.rs->simple(1), GFVal(1, 3));
  auto killed = cls.bang_point(partial, dreg);
  CHECK(killed.verdict == BangVerdict::NotInBang);
  CHECK(!cls.regular_piece_test(partial));
  // thicken with a non-simple root: still not regular
  LieElement<GFVal> off;
  off.add_term(f.rs->root_index({1, 1}), GFVal(1, 3));
  CHECK(!cls.regular_piece_test(off));
}

TEST_CASE("classify_membership spec examples") {
  // G2 p=2: e_alpha + e_{2a+b} lies in the subregular piece
  {
    G2Fix f(2);
    auto cls = f.classifier(false, true);
    auto mv = cls.classify_membership(f.orbits[2], f.diagrams[3]);  // O3 vs D4
    CHECK(mv.value == Verdict::InPiece);
  }
  {
    G2Fix f(3);
    auto cls = f.classifier(false, true);
    // O5 = e_alpha belongs to piece D3...
    CHECK(cls.classify_membership(f.orbits[4], f.diagrams[2]).value == Verdict::InPiece);
    // ...but not to piece D4
    CHECK(cls.classify_membership(f.orbits[4], f.diagrams[3]).value == Verdict::NotInPiece);
  }
}

TEST_CASE("full G2 tables match the classification") {
  for (int p : {2, 3}) {
    CAPTURE(p);
    G2Fix f(p);
    for (bool shortcut : {true, false}) {
      CAPTURE(shortcut);
      auto cls = f.classifier(shortcut, true);
      auto table = cls.classify_all(f.orbits, f.diagrams, 4);
      CHECK(table.undecided_count() == 0);
      CHECK(table.pieces() == f.expected);
      // partition: every orbit lies in exactly one piece
      std::map<std::string, int> count;
      for (auto& [d, os] : table.pieces())
        for (auto& o : os) count[o]++;
      for (auto& o : f.orbits) CHECK(count[o.label] == 1);
    }
  }
}

TEST_CASE("diagonal shortcut declined for exceptional classes") {
  G2Fix f(3);
  auto cls = f.classifier(true, true);
  CHECK(!cls.diagonal_shortcut(f.orbits[2], f.diagrams[2]).has_value());  // O3 exceptional
  CHECK(cls.diagonal_shortcut(f.orbits[1], f.diagrams[4]).has_value());   // O2 -> D5
  CHECK(!cls.diagonal_shortcut(f.orbits[1], f.diagrams[3]).has_value());  // off-diagonal
}
