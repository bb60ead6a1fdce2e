#include "doctest.h"
#include "nilpieces/rootsys.hpp"

#include <set>

using namespace nilp;

namespace {

// |W| from the heights of positive roots: the conjugate of the height
// partition gives the exponents, |W| = prod (e_i + 1). Independent of the
// reflection enumeration.
long weyl_order_from_heights(const RootSystem& rs) {
  std::map<int, int> by_height;
  for (int r = 0; r < rs.n_pos; ++r) by_height[rs.height(r)]++;
  long order = 1;
  for (int j = 1; j <= by_height[1]; ++j) {
    int e = 0;
    for (auto& [h, cnt] : by_height)
      if (cnt >= j) e = std::max(e, h);
    order *= (e + 1);
  }
  return order;
}

WeightedDynkinDiagram diag(std::vector<int> w) { return {"", std::move(w)}; }

}  // namespace

TEST_CASE("root counts and closure") {
  struct Row {
    GroupType t;
    int n_roots;
  } rows[] = {{GroupType::G2, 12}, {GroupType::F4, 48}, {GroupType::E6, 72}};
  for (auto& row : rows) {
    auto rs = build_root_system(row.t);
    CHECK(rs->n_roots() == row.n_roots);
    CHECK(rs->n_pos == row.n_roots / 2);
    // closed under every root reflection, and sign-symmetric
    for (int b = 0; b < rs->n_roots(); ++b) {
      for (int g = 0; g < rs->n_roots(); ++g) CHECK(rs->reflect(b, g) >= 0);
      CHECK(rs->roots[rs->negate(b)][0] == -rs->roots[b][0]);
    }
    // positives are all-nonnegative, deterministic height-major order
    for (int r = 1; r < rs->n_pos; ++r) CHECK(rs->height(r - 1) <= rs->height(r));
  }
}

TEST_CASE("G2 root list matches the classical one") {
  auto rs = build_root_system(GroupType::G2);
  // alpha = (1,0) short, beta = (0,1) long
  std::set<std::array<int, 2>> expect = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
  std::set<std::array<int, 2>> got;
  for (int r = 0; r < rs->n_pos; ++r) got.insert({rs->roots[r][0], rs->roots[r][1]});
  CHECK(got == expect);
  CHECK(rs->root_d(rs->simple(0)) == 1);
  CHECK(rs->root_d(rs->simple(1)) == 3);
}

TEST_CASE("root chains") {
  auto rs = build_root_system(GroupType::G2);
  int alpha = rs->simple(0), beta = rs->simple(1);
  // long simple through the short simple: beta + 3 alpha in Phi
  auto [p, q] = root_chain(*rs, beta, alpha);
  CHECK(p == 3);
  CHECK(q == 0);
  // distinct simple roots always have q = 0
  auto [p2, q2] = root_chain(*rs, alpha, beta);
  CHECK(q2 == 0);
  CHECK(p2 == 1);
  CHECK_THROWS_AS(root_chain(*rs, alpha, alpha), std::invalid_argument);
  CHECK_THROWS_AS(root_chain(*rs, alpha, rs->negate(alpha)), std::invalid_argument);

  // orthogonal roots with beta +- gamma not a root: empty chain
  auto f4 = build_root_system(GroupType::F4);
  bool found = false;
  for (int a = 0; a < f4->n_pos && !found; ++a)
    for (int b = 0; b < f4->n_pos && !found; ++b) {
      if (a == b) continue;
      if (f4->pairing(a, b) == 0 && f4->sum_index(a, b) < 0 &&
          f4->sum_index(a, f4->negate(b)) < 0) {
        auto [pp, qq] = root_chain(*f4, a, b);
        CHECK(pp == 0);
        CHECK(qq == 0);
        found = true;
      }
    }
  CHECK(found);
}

TEST_CASE("Weyl group orders and closure") {
  struct Row {
    GroupType t;
    int order;
  } rows[] = {{GroupType::G2, 12}, {GroupType::F4, 1152}, {GroupType::E6, 51840}};
  for (auto& row : rows) {
    auto rs = build_root_system(row.t);
    auto W = enumerate_weyl(*rs);
    CHECK(W->size() == row.order);
    CHECK(weyl_order_from_heights(*rs) == row.order);
    // identity is first
    CHECK(W->elems[0].length() == 0);
    for (int r = 0; r < rs->n_roots(); ++r) CHECK(W->elems[0].apply(r) == r);
  }
}

TEST_CASE("only the identity keeps all positive roots positive") {
  auto rs = build_root_system(GroupType::F4);
  auto W = enumerate_weyl(*rs);
  int count = 0;
  for (auto& w : W->elems) {
    bool pos = true;
    for (int r = 0; r < rs->n_pos && pos; ++r) pos = rs->is_positive(w.apply(r));
    if (pos) ++count;
  }
  CHECK(count == 1);
}

TEST_CASE("weight zero subgroup") {
  auto rs = build_root_system(GroupType::G2);
  auto W = enumerate_weyl(*rs);

  auto all2 = weight_zero_subgroup(*rs, *W, diag({2, 2}));
  CHECK(all2 == std::vector<int>{0});

  auto all0 = weight_zero_subgroup(*rs, *W, diag({0, 0}));
  CHECK((int)all0.size() == W->size());

  auto d01 = diag({0, 1});
  auto w0 = weight_zero_subgroup(*rs, *W, d01);
  CHECK(w0.size() == 2);

  // delta(w(beta)) = delta(beta) for w in W_0
  for (int wi : w0)
    for (int r = 0; r < rs->n_roots(); ++r)
      CHECK(d01.eval(*rs, W->elems[wi].apply(r)) == d01.eval(*rs, r));
}

TEST_CASE("right transversal partitions W") {
  for (auto t : {GroupType::G2, GroupType::F4}) {
    auto rs = build_root_system(t);
    auto W = enumerate_weyl(*rs);
    std::vector<WeightedDynkinDiagram> diags;
    if (t == GroupType::G2)
      diags = {diag({0, 1}), diag({2, 2}), diag({0, 0}), diag({1, 0})};
    else
      diags = {diag({0, 0, 0, 1}), diag({2, 2, 2, 2}), diag({1, 0, 1, 0})};
    for (auto& d : diags) {
      auto w0 = weight_zero_subgroup(*rs, *W, d);
      auto reps = right_transversal(*rs, *W, d);
      CHECK(reps.size() * w0.size() == (size_t)W->size());
      std::set<int> covered;
      for (int rep : reps)
        for (int u : w0) {
          int prod = W->compose(u, rep);  // W_0 * w
          CHECK(prod >= 0);
          CHECK(!covered.count(prod));
          covered.insert(prod);
        }
      CHECK((int)covered.size() == W->size());
    }
  }
}

TEST_CASE("transversal extreme cases") {
  auto rs = build_root_system(GroupType::G2);
  auto W = enumerate_weyl(*rs);
  CHECK(right_transversal(*rs, *W, diag({2, 2})).size() == 12);
  CHECK(right_transversal(*rs, *W, diag({0, 0})) == std::vector<int>{0});
  CHECK(right_transversal(*rs, *W, diag({0, 1})).size() == 6);
}
