#pragma once

#include <fstream>
#include <iomanip>

#include "json.hpp"
#include "nilpieces/pieces.hpp"

namespace nilp {

// compact SHA-256, enough to fingerprint data files in reports
class Sha256 {
 public:
  void update(const uint8_t* data, size_t len) {
    for (size_t i = 0; i < len; ++i) {
      buf_[buflen_++] = data[i];
      if (buflen_ == 64) {
        block();
        buflen_ = 0;
      }
    }
    total_ += len;
  }

  std::string hex() {
    uint64_t bits = total_ * 8;
    uint8_t pad = 0x80;
    update(&pad, 1);
    uint8_t zero = 0;
    while (buflen_ != 56) update(&zero, 1);
    for (int i = 7; i >= 0; --i) {
      uint8_t b = (uint8_t)(bits >> (i * 8));
      buf_[buflen_++] = b;
    }
    block();
    std::ostringstream os;
    for (int i = 0; i < 8; ++i) os << std::hex << std::setw(8) << std::setfill('0') << h_[i];
    return os.str();
  }

  static std::string file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    Sha256 h;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount())
      h.update((const uint8_t*)chunk, (size_t)in.gcount());
    return h.hex();
  }

 private:
  uint32_t h_[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                    0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  uint8_t buf_[64];
  size_t buflen_ = 0;
  uint64_t total_ = 0;

  static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block() {
    static const uint32_t K[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};
    uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t)buf_[4 * i] << 24 | (uint32_t)buf_[4 * i + 1] << 16 |
             (uint32_t)buf_[4 * i + 2] << 8 | buf_[4 * i + 3];
    for (int i = 16; i < 64; ++i) {
      uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4], f = h_[5], g = h_[6],
             h = h_[7];
    for (int i = 0; i < 64; ++i) {
      uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      uint32_t ch = (e & f) ^ (~e & g);
      uint32_t t1 = h + S1 + ch + K[i] + w[i];
      uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      uint32_t mj = (a & b) ^ (a & c) ^ (b & c);
      uint32_t t2 = S0 + mj;
      h = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
    h_[5] += f;
    h_[6] += g;
    h_[7] += h;
  }
};

struct ReportConfig {
  std::string diagrams_path, orbits_path;
  int workers = 1;
  long seed = 0;
  Budget budget;
  bool diagonal_shortcut = true;
  bool pruning = true;
};

// structured single-document report; all timing data sits under "timing"
// subtrees so reports are comparable modulo timings
inline nlohmann::json structured_report(const PieceTable& table, const ReportConfig& cfg) {
  nlohmann::json j;
  j["format"] = "nilpieces-report 1";
  j["group"] = to_string(table.type);
  j["p"] = table.p;
  j["config"] = {{"workers", cfg.workers},
                 {"seed", cfg.seed},
                 {"gb_max_pairs", cfg.budget.max_pairs},
                 {"gb_max_monomials", cfg.budget.max_monomials},
                 {"gb_timeout_secs", cfg.budget.timeout_secs},
                 {"diagonal_shortcut", cfg.diagonal_shortcut},
                 {"pruning", cfg.pruning}};
  j["inputs"] = {{"diagrams", {{"path", cfg.diagrams_path},
                               {"sha256", Sha256::file_hex(cfg.diagrams_path)}}},
                 {"orbits", {{"path", cfg.orbits_path},
                             {"sha256", Sha256::file_hex(cfg.orbits_path)}}}};
  nlohmann::json cells = nlohmann::json::array();
  double total_ms = 0;
  for (auto& c : table.cells) {
    cells.push_back({{"diagram", c.diagram},
                     {"orbit", c.orbit},
                     {"verdict", to_string(c.verdict)},
                     {"witness", c.detail},
                     {"timing", {{"millis", c.millis}}}});
    total_ms += c.millis;
  }
  j["cells"] = cells;
  nlohmann::json pieces;
  for (auto& [d, orbits] : table.pieces()) pieces[d] = orbits;
  j["pieces"] = pieces;
  j["undecided"] = table.undecided_count();
  j["timing"] = {{"total_millis", total_ms}};
  return j;
}

// strip every "timing" subtree: the determinism comparison form
inline void strip_timing(nlohmann::json& j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) {
      (void)k;
      strip_timing(v);
    }
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

inline std::string tsv_report(const PieceTable& table) {
  std::ostringstream os;
  os << "diagram\\orbit";
  for (auto& o : table.orbit_labels) os << "\t" << o;
  os << "\n";
  size_t no = table.orbit_labels.size();
  for (size_t di = 0; di < table.diagram_labels.size(); ++di) {
    os << table.diagram_labels[di];
    for (size_t oi = 0; oi < no; ++oi) {
      auto& c = table.cells[di * no + oi];
      os << "\t"
         << (c.verdict == Verdict::InPiece ? "I"
                                           : c.verdict == Verdict::NotInPiece ? "-" : "U");
    }
    os << "\n";
  }
  return os.str();
}

// per-cell checkpointing: verdicts keyed by "diagram|orbit"
inline nlohmann::json load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) return nlohmann::json::object();
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (...) {
    return nlohmann::json::object();
  }
}

inline void save_checkpoint(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << j.dump(1) << "\n";
}

}  // namespace nilp
