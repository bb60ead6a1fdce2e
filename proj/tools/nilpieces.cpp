// Command line front end: data ingestion and validation, classification runs,
// invariant suites, report emission.

#include <iostream>

#include "CLI11.hpp"
#include "nilpieces/report.hpp"
#include "nilpieces/verify.hpp"

using namespace nilp;

namespace {

struct CommonArgs {
  std::string type = "G2";
  int p = 2;
  std::string diagrams = "data/diagrams.dat";
  std::string orbits = "data/orbits.dat";
  int workers = (int)std::max(1u, std::thread::hardware_concurrency());
  long gb_max_pairs = 100000;
  long gb_max_monomials = 2000000;
  double gb_timeout = 60.0;
  bool no_diagonal_shortcut = false;
  bool no_pruning = false;
  std::string cell;
  std::string format = "tsv";
  long seed = 1;
  bool fresh = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool positional_type) {
  if (positional_type) cmd->add_option("type_pos", a.type, "group type (G2|F4|E6)");
  cmd->add_option("--type", a.type, "group type (G2|F4|E6)")->envname("NILP_TYPE");
  cmd->add_option("--p", a.p, "characteristic (2|3)")->envname("NILP_P");
  cmd->add_option("--diagrams", a.diagrams, "diagrams data file")->envname("NILP_DIAGRAMS");
  cmd->add_option("--orbits", a.orbits, "orbits data file")->envname("NILP_ORBITS");
  cmd->add_option("--workers", a.workers, "worker threads")->envname("NILP_WORKERS");
  cmd->add_option("--gb-max-pairs", a.gb_max_pairs, "Groebner pair budget")
      ->envname("NILP_GB_MAX_PAIRS");
  cmd->add_option("--gb-max-monomials", a.gb_max_monomials, "Groebner monomial budget")
      ->envname("NILP_GB_MAX_MONOMIALS");
  cmd->add_option("--gb-timeout-secs", a.gb_timeout, "Groebner wall clock budget per call")
      ->envname("NILP_GB_TIMEOUT_SECS");
  cmd->add_flag("--no-diagonal-shortcut", a.no_diagonal_shortcut,
                "run the full algorithm on diagonal cells")
      ->envname("NILP_NO_DIAGONAL_SHORTCUT");
  cmd->add_flag("--no-pruning", a.no_pruning,
                "iterate all of W and keep stabilizing unipotent factors")
      ->envname("NILP_NO_PRUNING");
  cmd->add_option("--cell", a.cell, "single cell ORBIT:DIAGRAM (e.g. O5:D3)")
      ->envname("NILP_CELL");
  cmd->add_option("--format", a.format, "output format (tsv|structured)")
      ->envname("NILP_FORMAT");
  cmd->add_option("--seed", a.seed, "seed for the property suites")->envname("NILP_SEED");
  cmd->add_flag("--fresh", a.fresh, "ignore checkpointed cells")->envname("NILP_FRESH");
  cmd->add_option("--out", a.out, "write the report to a file instead of stdout");
}

struct LoadedData {
  std::shared_ptr<const RootSystem> rs;
  std::shared_ptr<const WeylGroup> W;
  std::shared_ptr<const ChevalleyAlgebra> A;
  std::shared_ptr<AdjointTables> T;
  std::vector<WeightedDynkinDiagram> diagrams;
  std::vector<OrbitRep> orbits;
  GroupType type;
};

LoadedData load(const CommonArgs& a) {
  LoadedData d;
  d.type = group_type_from_string(a.type);
  if (a.p != 2 && a.p != 3) throw DataError("--p must be 2 or 3");
  d.rs = build_root_system(d.type);
  d.W = enumerate_weyl(*d.rs);
  d.A = build_algebra(d.rs, a.p);
  d.T = std::make_shared<AdjointTables>(d.A, d.W);
  auto raw = load_diagrams(a.diagrams, d.type, a.p, *d.rs);
  d.diagrams = std::move(raw);
  d.orbits = load_orbits(a.orbits, d.type, a.p, *d.rs);
  validate_data(*d.rs, d.type, a.p, d.diagrams, d.orbits);
  return d;
}

Classifier make_classifier(const LoadedData& d, const CommonArgs& a) {
  ClassifierOptions o;
  o.budget.max_pairs = a.gb_max_pairs;
  o.budget.max_monomials = a.gb_max_monomials;
  o.budget.timeout_secs = a.gb_timeout;
  o.diagonal_shortcut = !a.no_diagonal_shortcut;
  o.pruning = !a.no_pruning;
  return Classifier(d.rs, d.W, d.A, d.T, o);
}

std::string normalize_label(std::string s, char kind) {
  // accept x5 / O5 / orbit5 and diagram3 / D3 / 3
  for (auto& c : s) c = (char)toupper(c);
  if (kind == 'O') {
    if (s.rfind("X", 0) == 0) s = "O" + s.substr(1);
    if (s.rfind("ORBIT", 0) == 0) s = "O" + s.substr(5);
    if (!s.empty() && isdigit(s[0])) s = "O" + s;
  } else {
    if (s.rfind("DIAGRAM", 0) == 0) s = "D" + s.substr(7);
    if (!s.empty() && isdigit(s[0])) s = "D" + s;
  }
  return s;
}

int cmd_info(const CommonArgs& a) {
  LoadedData d = load(a);
  std::cout << to_string(d.type) << " p=" << a.p << "\n";
  std::cout << "roots: " << d.rs->n_roots() << " (" << d.rs->n_pos << " positive)\n";
  std::cout << "|W| = " << d.W->size() << "\n";
  std::cout << d.diagrams.size() << " weighted Dynkin diagrams:\n";
  for (auto& dd : d.diagrams) {
    std::cout << "  " << dd.label << ":";
    for (int w : dd.weights) std::cout << " " << w;
    std::cout << "\n";
  }
  std::cout << d.orbits.size() << " nilpotent orbit representatives:\n";
  for (auto& o : d.orbits) {
    std::cout << "  " << o.label << (o.exceptional ? " (exceptional)" : "")
              << (o.has_hint() ? " diagram " + o.hint : std::string()) << " support:";
    if (o.support.empty()) std::cout << " 0";
    for (int r : o.support) {
      std::cout << " ";
      for (int i = 0; i < d.rs->rank; ++i) {
        if (i) std::cout << ",";
        std::cout << (int)d.rs->roots[r][i];
      }
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_classify(const CommonArgs& a) {
  LoadedData d = load(a);
  Classifier cls = make_classifier(d, a);

  if (!a.cell.empty()) {
    auto colon = a.cell.find(':');
    if (colon == std::string::npos) throw DataError("--cell expects ORBIT:DIAGRAM");
    std::string ol = normalize_label(a.cell.substr(0, colon), 'O');
    std::string dl = normalize_label(a.cell.substr(colon + 1), 'D');
    const OrbitRep* orb = nullptr;
    const WeightedDynkinDiagram* dia = nullptr;
    for (auto& o : d.orbits)
      if (o.label == ol) orb = &o;
    for (auto& dd : d.diagrams)
      if (dd.label == dl) dia = &dd;
    if (!orb || !dia) throw DataError("unknown cell " + ol + ":" + dl);
    auto mv = cls.classify_cell(*orb, *dia);
    std::cout << ol << ":" << dl << "\t" << to_string(mv.value) << "\t" << mv.summary << "\n";
    return mv.value == Verdict::Undecided ? 2 : 0;
  }

  ReportConfig rc;
  rc.diagrams_path = a.diagrams;
  rc.orbits_path = a.orbits;
  rc.workers = a.workers;
  rc.seed = a.seed;
  rc.budget = cls.opts.budget;
  rc.diagonal_shortcut = cls.opts.diagonal_shortcut;
  rc.pruning = cls.opts.pruning;

  // checkpoint: config-addressed, per-cell
  std::string confkey;
  {
    nlohmann::json id = {{"type", to_string(d.type)},  {"p", a.p},
                         {"diagrams", Sha256::file_hex(a.diagrams)},
                         {"orbits", Sha256::file_hex(a.orbits)},
                         {"shortcut", !a.no_diagonal_shortcut},
                         {"pruning", !a.no_pruning},
                         {"pairs", a.gb_max_pairs},
                         {"monos", a.gb_max_monomials},
                         {"timeout", a.gb_timeout}};
    Sha256 h;
    std::string s = id.dump();
    h.update((const uint8_t*)s.data(), s.size());
    confkey = h.hex().substr(0, 16);
  }
  std::string ckpath = "nilpieces-" + std::string(to_string(d.type)) + "-p" +
                       std::to_string(a.p) + "-" + confkey + ".ckpt.json";
  nlohmann::json ck = a.fresh ? nlohmann::json::object() : load_checkpoint(ckpath);

  std::mutex ck_mu;
  auto skip = [&](const std::string& orbit, const std::string& diagram) {
    return ck.contains(diagram + "|" + orbit);
  };
  auto on_cell = [&](const CellResult& c) {
    std::lock_guard<std::mutex> lk(ck_mu);
    ck[c.diagram + "|" + c.orbit] = {{"verdict", to_string(c.verdict)}, {"detail", c.detail}};
    save_checkpoint(ckpath, ck);
  };

  PieceTable table = cls.classify_all(d.orbits, d.diagrams, a.workers, skip, on_cell);
  // merge checkpointed verdicts
  for (auto& c : table.cells) {
    std::string key = c.diagram + "|" + c.orbit;
    if (c.detail == "skipped" && ck.contains(key)) {
      std::string v = ck[key]["verdict"];
      c.verdict = v == "in-piece" ? Verdict::InPiece
                                  : v == "not-in-piece" ? Verdict::NotInPiece
                                                        : Verdict::Undecided;
      c.detail = std::string(ck[key]["detail"]) + " (checkpointed)";
    }
  }

  std::ostringstream body;
  if (a.format == "structured") {
    body << structured_report(table, rc).dump(1) << "\n";
  } else if (a.format == "tsv") {
    body << tsv_report(table);
  } else {
    throw DataError("--format must be tsv or structured");
  }
  if (a.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream f(a.out);
    f << body.str();
  }
  return table.undecided_count() ? 2 : 0;
}

int cmd_verify(const CommonArgs& a, const std::string& suite) {
  VerifyConfig vc;
  vc.seed = a.seed;
  vc.budget.max_pairs = a.gb_max_pairs;
  vc.budget.max_monomials = a.gb_max_monomials;
  vc.budget.timeout_secs = a.gb_timeout;
  vc.type = group_type_from_string(a.type);
  vc.p = a.p;
  auto results = run_verify_suite(suite, vc);
  bool ok = true;
  for (auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilpotent pieces for G2, F4 and E6 in bad characteristic"};
  app.require_subcommand(1);

  CommonArgs a_info, a_classify, a_verify;
  std::string suite = "all";

  auto* info = app.add_subcommand("info", "show root system, Weyl and data file summary");
  add_common(info, a_info, true);
  auto* classify = app.add_subcommand("classify", "compute a piece table");
  add_common(classify, a_classify, true);
  auto* verify = app.add_subcommand("verify", "run a property suite");
  add_common(verify, a_verify, true);
  verify->add_option("--suite", suite, "algebra|adjoint|groebner|pruning|oracle|all");

  try {
    app.parse(argc, argv);
    if (info->parsed()) return cmd_info(a_info);
    if (classify->parsed()) return cmd_classify(a_classify);
    if (verify->parsed()) return cmd_verify(a_verify, suite);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
