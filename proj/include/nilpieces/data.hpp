#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nilpieces/rootsys.hpp"

namespace nilp {

constexpr const char* kDataHeader = "# nilpieces-data 1";

// nilpotent orbit representative: x = sum of e_alpha over the support
struct OrbitRep {
  std::string label;
  std::vector<int> support;  // positive root indices
  std::string hint;          // diagram label, or "-" for exceptional classes
  bool exceptional = false;

  bool has_hint() const { return !exceptional && hint != "-"; }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline RootCoords parse_coords(const std::string& tok, int rank, const std::string& where) {
  RootCoords c{};
  std::istringstream is(tok);
  std::string part;
  int i = 0;
  while (std::getline(is, part, ',')) {
    if (i >= rank) throw DataError(where + ": too many coordinates in '" + tok + "'");
    try {
      c[i++] = (int8_t)std::stoi(part);
    } catch (...) {
      throw DataError(where + ": bad coordinate '" + part + "'");
    }
  }
  if (i != rank) throw DataError(where + ": expected " + std::to_string(rank) +
                                 " coordinates in '" + tok + "'");
  return c;
}

inline void check_header(std::istream& in, const std::string& path) {
  std::string first;
  if (!std::getline(in, first) || first.rfind(kDataHeader, 0) != 0)
    throw DataError(path + ":1: missing '" + std::string(kDataHeader) + "' header");
}

}  // namespace detail

// diagrams file: `type p label w1 w2 ... wr`
inline std::vector<WeightedDynkinDiagram> load_diagrams(const std::string& path,
                                                        GroupType type, int p,
                                                        const RootSystem& rs) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open diagrams file " + path);
  detail::check_header(in, path);
  std::vector<WeightedDynkinDiagram> out;
  std::set<std::string> labels;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    std::string where = path + ":" + std::to_string(lineno);
    if (tok.size() < 3) throw DataError(where + ": expected 'type p label w1..wr'");
    if (tok[0] != to_string(type) || std::stoi(tok[1]) != p) continue;
    if ((int)tok.size() != 3 + rs.rank)
      throw DataError(where + ": expected " + std::to_string(rs.rank) + " weights");
    WeightedDynkinDiagram d;
    d.label = tok[2];
    if (!labels.insert(d.label).second) throw DataError(where + ": duplicate diagram label");
    for (int i = 0; i < rs.rank; ++i) {
      int w = std::stoi(tok[3 + i]);
      if (w < 0 || w > 2) throw DataError(where + ": weight out of {0,1,2}");
      d.weights.push_back(w);
    }
    out.push_back(std::move(d));
  }
  return out;
}

// orbits file: `type p label exceptional(0|1) hint root1 root2 ...`
// (each root written as comma-joined coordinates over the simple roots)
inline std::vector<OrbitRep> load_orbits(const std::string& path, GroupType type, int p,
                                         const RootSystem& rs) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open orbits file " + path);
  detail::check_header(in, path);
  std::vector<OrbitRep> out;
  std::set<std::string> labels;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    std::string where = path + ":" + std::to_string(lineno);
    if (tok.size() < 5) throw DataError(where + ": expected 'type p label exc hint roots...'");
    if (tok[0] != to_string(type) || std::stoi(tok[1]) != p) continue;
    OrbitRep o;
    o.label = tok[2];
    if (!labels.insert(o.label).second) throw DataError(where + ": duplicate orbit label");
    if (tok[3] != "0" && tok[3] != "1") throw DataError(where + ": exceptional flag not 0/1");
    o.exceptional = tok[3] == "1";
    o.hint = tok[4];
    if (o.exceptional && o.hint != "-")
      throw DataError(where + ": exceptional classes carry no diagram hint");
    std::set<int> seen;
    for (size_t i = 5; i < tok.size(); ++i) {
      RootCoords c = detail::parse_coords(tok[i], rs.rank, where);
      int r = rs.root_index(c);
      if (r < 0) throw DataError(where + ": '" + tok[i] + "' is not a root");
      if (!rs.is_positive(r)) throw DataError(where + ": '" + tok[i] + "' is not positive");
      if (!seen.insert(r).second) throw DataError(where + ": repeated root in support");
      o.support.push_back(r);
    }
    std::sort(o.support.begin(), o.support.end());
    out.push_back(std::move(o));
  }
  return out;
}

// expected tables: `type p diagram orbit` membership pairs
inline std::map<std::string, std::set<std::string>> load_expected(const std::string& path,
                                                                  GroupType type, int p) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open expected-table file " + path);
  detail::check_header(in, path);
  std::map<std::string, std::set<std::string>> out;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tok = detail::split_ws(line);
    if (tok.size() != 4)
      throw DataError(path + ":" + std::to_string(lineno) + ": expected 'type p diagram orbit'");
    if (tok[0] != to_string(type) || std::stoi(tok[1]) != p) continue;
    out[tok[2]].insert(tok[3]);
  }
  return out;
}

// structural validation shared by the CLI and the loaders' callers
inline void validate_data(const RootSystem& rs, GroupType type, int p,
                          const std::vector<WeightedDynkinDiagram>& diagrams,
                          const std::vector<OrbitRep>& orbits) {
  (void)rs;
  std::set<std::string> dlabels;
  for (auto& d : diagrams) dlabels.insert(d.label);
  size_t expect = 0;
  switch (type) {
    case GroupType::G2: expect = 5; break;
    case GroupType::F4: expect = 16; break;
    case GroupType::E6: expect = 21; break;
  }
  if (diagrams.size() != expect)
    throw DataError(std::string(to_string(type)) + ": expected " + std::to_string(expect) +
                    " diagrams, found " + std::to_string(diagrams.size()));
  size_t base_orbits = expect;
  size_t extras = 0;
  for (auto& o : orbits)
    if (o.exceptional) ++extras;
  if (orbits.size() - extras != base_orbits)
    throw DataError(std::string(to_string(type)) + " p=" + std::to_string(p) +
                    ": expected " + std::to_string(base_orbits) +
                    " non-exceptional orbits, found " +
                    std::to_string(orbits.size() - extras));
  for (auto& o : orbits)
    if (o.has_hint() && !dlabels.count(o.hint))
      throw DataError("orbit " + o.label + " hints at unknown diagram " + o.hint);
}

}  // namespace nilp
