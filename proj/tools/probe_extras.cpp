// Exploration helper: tabulate the 0/1 elements of g_2^delta for one F4
// diagram in characteristic 2, with their invariant profiles and bang-test
// outcomes. Used to locate representatives of the classes that only exist in
// characteristic 2.
//
// usage: probe_extras <diagram-index> [max-mask]

#include <iostream>

#include "nilpieces/charzero.hpp"
#include "nilpieces/pieces.hpp"

using namespace nilp;

int main(int argc, char** argv) {
  int diagram_index = argc > 1 ? atoi(argv[1]) : 8;
  auto rs = build_root_system(GroupType::F4);
  CharZero cz(rs);
  auto W = enumerate_weyl(*rs);
  auto A2 = build_algebra(rs, 2);
  auto T = std::make_shared<AdjointTables>(A2, W);
  ClassifierOptions o;
  o.budget.timeout_secs = 2;
  o.budget.max_pairs = 20000;
  o.budget.max_monomials = 120000;
  Classifier cls(rs, W, A2, T, o);
  cls.scan_workers = 8;

  std::vector<std::pair<std::vector<int>, int>> diags;
  std::vector<int> w(rs->rank, 0);
  for (long code = 0; code < 81; ++code) {
    long rest = code;
    for (int i = 0; i < rs->rank; ++i) {
      w[i] = (int)(rest % 3);
      rest /= 3;
    }
    if (!cz.is_wdd(w)) continue;
    diags.push_back({w, cz.orbit_dim(w)});
  }
  std::sort(diags.begin(), diags.end(), [](auto& a, auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first > b.first;
  });
  auto weights = diags[diagram_index - 1].first;
  std::cout << "D" << diagram_index << " weights:";
  for (int v : weights) std::cout << " " << v;
  std::cout << "  dim " << diags[diagram_index - 1].second << "\n";
  auto g2 = cz.roots_of_weight(weights, 2);
  WeightedDynkinDiagram d{"D", weights};
  auto dc = cls.make_ctx(d);
  std::cout << "|g2| = " << g2.size() << " outside cells " << dc.outside.size() << "\n";

  std::vector<int> base;
  for (int size = 1; size <= (int)g2.size() && base.empty(); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<int> s;
      for (int i : idx) s.push_back(g2[i]);
      if (cz.certifies(weights, s)) {
        base = s;
        break;
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == (int)g2.size() - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  auto prof = cz.ad_kernel_profile_mod(base, 2);
  std::cout << "base roots:";
  for (int r : base) std::cout << " " << r;
  std::cout << "  kerQ=" << cz.ad_kernel_dim(base) << " prof2:";
  for (int v : prof) std::cout << " " << v;
  std::cout << "\n" << std::flush;

  if (argc > 3) {
    // single-mask mode with a custom budget: probe_extras <idx> <mask> <secs>
    long mask = atol(argv[2]);
    cls.opts.budget.timeout_secs = atof(argv[3]);
    cls.opts.budget.max_pairs = 1000000;
    cls.opts.budget.max_monomials = 2000000;
    std::vector<int> s;
    for (int i = 0; i < (int)g2.size(); ++i)
      if (mask & (1L << i)) s.push_back(g2[i]);
    LieElement<GFVal> y;
    for (int r : s) y.add_term(r, GFVal(1, 2));
    auto bo = cls.bang_point(y, dc);
    std::cout << "mask " << mask << " -> "
              << (bo.verdict == BangVerdict::InBang
                      ? "INBANG"
                      : bo.verdict == BangVerdict::NotInBang ? "killed" : "UNDEC")
              << "\n";
    return 0;
  }

  int n = (int)g2.size();
  long maxmask = argc > 2 ? atol(argv[2]) : (1L << n);
  for (long mask = 1; mask < (1L << n) && mask < maxmask; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1L << i)) s.push_back(g2[i]);
    auto p2 = cz.ad_kernel_profile_mod(s, 2);
    int kq = cz.ad_kernel_dim(s);
    LieElement<GFVal> y;
    for (int r : s) y.add_term(r, GFVal(1, 2));
    auto bo = cls.bang_point(y, dc);
    const char* v = bo.verdict == BangVerdict::InBang
                        ? "INBANG"
                        : bo.verdict == BangVerdict::NotInBang ? "killed" : "UNDEC";
    std::cout << "mask " << mask << " sz " << s.size() << " kerQ " << kq
              << (p2 == prof ? " prof=BASE " : " prof=DIFF ") << v << " ("
              << bo.cells_scanned << ")\n"
              << std::flush;
  }
  return 0;
}
