#pragma once

#include <array>
#include <cstdint>

#include "nilpieces/poly.hpp"

namespace nilp {

// Small extension fields GF(p^k), p in {2,3}, k <= 3, used by the
// point-enumeration oracles. Elements are polynomials modulo a fixed
// irreducible.
class GFExt {
 public:
  GFExt(int p, int k) : p_(p), k_(k) {
    // fixed irreducibles: x^2+x+1, x^3+x+1 over GF(2); x^2+1, x^3+2x+1 over GF(3)
    if (p == 2 && k == 2) mod_ = {1, 1};
    else if (p == 2 && k == 3) mod_ = {1, 1, 0};
    else if (p == 3 && k == 2) mod_ = {1, 0};
    else if (p == 3 && k == 3) mod_ = {1, 2, 0};
    else mod_ = {};  // k == 1
  }

  using Elem = std::array<uint8_t, 3>;

  int order() const {
    int n = 1;
    for (int i = 0; i < k_; ++i) n *= p_;
    return n;
  }

  Elem from_index(int idx) const {
    Elem e{0, 0, 0};
    for (int i = 0; i < k_; ++i) {
      e[i] = (uint8_t)(idx % p_);
      idx /= p_;
    }
    return e;
  }

  Elem from_int(int c) const { return Elem{(uint8_t)(((c % p_) + p_) % p_), 0, 0}; }

  bool is_zero(const Elem& e) const { return e[0] == 0 && e[1] == 0 && e[2] == 0; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r{};
    for (int i = 0; i < 3; ++i) r[i] = (uint8_t)((a[i] + b[i]) % p_);
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::array<int, 5> conv{};
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) conv[i + j] += a[i] * b[j];
    // reduce modulo x^k - (-mod): x^k = -(mod_[0] + mod_[1] x + ...)
    for (int d = 2 * (k_ - 1); d >= k_; --d) {
      int c = conv[d] % p_;
      if (c == 0) continue;
      conv[d] = 0;
      for (int i = 0; i < k_; ++i) conv[d - k_ + i] += (p_ - 1) * c * mod_[i];
    }
    Elem r{};
    for (int i = 0; i < k_; ++i) r[i] = (uint8_t)(((conv[i] % p_) + p_) % p_);
    return r;
  }

  Elem pow(Elem a, int e) const {
    Elem r = from_int(1);
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  int p_, k_;
  std::array<uint8_t, 3> mod_{};
};

inline GFExt::Elem eval_over_ext(const GFExt& F, const Poly& f,
                                 const std::vector<GFExt::Elem>& point) {
  GFExt::Elem acc = F.from_int(0);
  for (auto& tm : f.t) {
    GFExt::Elem prod = F.from_int(tm.c);
    for (size_t v = 0; v < point.size(); ++v)
      if (tm.m[v]) prod = F.mul(prod, F.pow(point[v], tm.m[v]));
    acc = F.add(acc, prod);
  }
  return acc;
}

// exhaustive common-zero search over GF(p^k)
inline bool has_common_zero_over(const std::vector<Poly>& gens, int p, int k) {
  if (gens.empty()) return true;
  const PolyRing* ring = gens.front().ring;
  GFExt F(p, k);
  int nv = ring->nvars();
  long total = 1;
  for (int i = 0; i < nv; ++i) total *= F.order();
  std::vector<GFExt::Elem> point(nv);
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int v = 0; v < nv; ++v) {
      point[v] = F.from_index((int)(rest % F.order()));
      rest /= F.order();
    }
    bool zero = true;
    for (auto& g : gens)
      if (!F.is_zero(eval_over_ext(F, g, point))) {
        zero = false;
        break;
      }
    if (zero) return true;
  }
  return false;
}

}  // namespace nilp
