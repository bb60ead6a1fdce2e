#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilpieces/common.hpp"

namespace nilp {

// Variable universe for sparse polynomials over GF(p). The variable order is
// fixed at construction and induces the degrevlex monomial order used by the
// Groebner engine.
struct PolyRing {
  int p;
  std::vector<std::string> vars;
  std::unordered_map<std::string, int> index;

  int nvars() const { return (int)vars.size(); }

  int var(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
  }

  static std::shared_ptr<const PolyRing> make(int p, std::vector<std::string> names) {
    auto r = std::make_shared<PolyRing>();
    r->p = p;
    r->vars = std::move(names);
    for (int i = 0; i < (int)r->vars.size(); ++i) {
      if (r->index.count(r->vars[i])) throw std::invalid_argument("duplicate variable name");
      r->index[r->vars[i]] = i;
    }
    return r;
  }
};

using Expo = std::vector<uint16_t>;

struct ExpoHash {
  size_t operator()(const Expo& e) const {
    uint64_t h = 1469598103934665603ull;
    for (uint16_t v : e) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

struct Term {
  Expo m;
  int deg = 0;
  uint8_t c = 0;  // 1..p-1
};

// degrevlex: higher total degree wins; on ties the exponent vectors are
// compared from the last variable backwards, smaller entry meaning larger
// monomial. Returns +1 if a > b.
inline int mono_cmp(const Expo& a, int dega, const Expo& b, int degb) {
  if (dega != degb) return dega > degb ? 1 : -1;
  for (int i = (int)a.size() - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

inline bool mono_divides(const Expo& a, const Expo& b) {  // a | b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

class Poly {
 public:
  const PolyRing* ring = nullptr;
  std::vector<Term> t;  // sorted descending, canonical

  Poly() = default;
  explicit Poly(const PolyRing* r) : ring(r) {}

  static Poly zero(const PolyRing* r) { return Poly(r); }

  static Poly constant(const PolyRing* r, long v) {
    Poly q(r);
    int c = (int)(((v % r->p) + r->p) % r->p);
    if (c) q.t.push_back({Expo(r->nvars(), 0), 0, (uint8_t)c});
    return q;
  }

  static Poly variable(const PolyRing* r, int v, int exp = 1, long coeff = 1) {
    Poly q(r);
    int c = (int)(((coeff % r->p) + r->p) % r->p);
    if (c && exp >= 0) {
      Expo e(r->nvars(), 0);
      e[v] = (uint16_t)exp;
      q.t.push_back({std::move(e), exp, (uint8_t)c});
    }
    return q;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].deg == 0); }
  size_t n_terms() const { return t.size(); }
  const Term& lt() const { return t.front(); }
  int degree() const { return t.empty() ? -1 : t.front().deg; }

  int degree_in(int v) const {
    int d = 0;
    for (auto& tm : t) d = std::max(d, (int)tm.m[v]);
    return d;
  }
  bool uses_var(int v) const {
    for (auto& tm : t)
      if (tm.m[v]) return true;
    return false;
  }

  Poly operator+(const Poly& o) const {
    check(o);
    Poly r(ring);
    r.t.reserve(t.size() + o.t.size());
    size_t i = 0, j = 0;
    while (i < t.size() && j < o.t.size()) {
      int c = mono_cmp(t[i].m, t[i].deg, o.t[j].m, o.t[j].deg);
      if (c > 0) {
        r.t.push_back(t[i++]);
      } else if (c < 0) {
        r.t.push_back(o.t[j++]);
      } else {
        int s = (t[i].c + o.t[j].c) % ring->p;
        if (s) r.t.push_back({t[i].m, t[i].deg, (uint8_t)s});
        ++i;
        ++j;
      }
    }
    for (; i < t.size(); ++i) r.t.push_back(t[i]);
    for (; j < o.t.size(); ++j) r.t.push_back(o.t[j]);
    return r;
  }

  Poly operator-() const {
    Poly r(ring);
    r.t = t;
    for (auto& tm : r.t) tm.c = (uint8_t)(ring->p - tm.c);
    return r;
  }

  Poly operator-(const Poly& o) const { return *this + (-o); }

  Poly times_int(long k) const {
    long c = ((k % ring->p) + ring->p) % ring->p;
    if (c == 0) return Poly(ring);
    if (c == 1) return *this;
    Poly r(ring);
    r.t = t;
    for (auto& tm : r.t) tm.c = (uint8_t)((tm.c * c) % ring->p);
    return r;
  }

  // multiply by a single term
  Poly times_term(const Expo& m, int deg, int c) const {
    Poly r(ring);
    if (c % ring->p == 0) return r;
    r.t = t;
    for (auto& tm : r.t) {
      for (size_t i = 0; i < tm.m.size(); ++i) tm.m[i] = (uint16_t)(tm.m[i] + m[i]);
      tm.deg += deg;
      tm.c = (uint8_t)((tm.c * c) % ring->p);
    }
    return r;
  }

  Poly operator*(const Poly& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return Poly(ring);
    std::unordered_map<Expo, int, ExpoHash> acc;
    acc.reserve(t.size() * o.t.size());
    Expo m(ring->nvars());
    for (auto& a : t)
      for (auto& b : o.t) {
        for (size_t i = 0; i < m.size(); ++i) m[i] = (uint16_t)(a.m[i] + b.m[i]);
        int c = (a.c * b.c) % ring->p;
        auto [it, fresh] = acc.try_emplace(m, c);
        if (!fresh) it->second = (it->second + c) % ring->p;
      }
    Poly r(ring);
    r.t.reserve(acc.size());
    for (auto& [mm, c] : acc)
      if (c % ring->p) {
        int deg = 0;
        for (auto v : mm) deg += v;
        r.t.push_back({mm, deg, (uint8_t)(c % ring->p)});
      }
    r.sort_terms();
    return r;
  }

  bool operator==(const Poly& o) const {
    if (t.size() != o.t.size()) return false;
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i].c != o.t[i].c || t[i].m != o.t[i].m) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // substitute one variable by a polynomial (or constant)
  Poly substituted(int v, const Poly& val) const {
    if (!uses_var(v)) return *this;
    int dv = degree_in(v);
    std::vector<Poly> bucket((size_t)dv + 1, Poly(ring));
    for (auto& tm : t) {
      Term s = tm;
      int k = s.m[v];
      s.m[v] = 0;
      s.deg -= k;
      Poly& dst = bucket[k];
      Poly one(ring);
      one.t.push_back(std::move(s));
      dst = dst + one;
    }
    Poly result = bucket[0];
    Poly pw = Poly::constant(ring, 1);
    for (int k = 1; k <= dv; ++k) {
      pw = pw * val;
      if (!bucket[k].is_zero()) result = result + bucket[k] * pw;
    }
    return result;
  }

  // evaluate under a full or partial prime-field assignment (var -> value)
  Poly evaluated(const std::vector<std::pair<int, int>>& assign) const {
    Poly r = *this;
    for (auto& [v, val] : assign) r = r.substituted(v, Poly::constant(ring, val));
    return r;
  }

  // transport into a ring that contains all used variables by name
  Poly mapped(const PolyRing* target) const {
    if (target == ring) return *this;
    std::vector<int> remap(ring->nvars(), -1);
    for (int v = 0; v < ring->nvars(); ++v) {
      if (!uses_var(v)) continue;
      remap[v] = target->var(ring->vars[v]);
      if (remap[v] < 0)
        throw std::invalid_argument("variable " + ring->vars[v] + " missing in target ring");
    }
    Poly r(target);
    r.t.reserve(t.size());
    for (auto& tm : t) {
      Term s;
      s.m.assign(target->nvars(), 0);
      s.deg = tm.deg;
      s.c = tm.c;
      for (int v = 0; v < ring->nvars(); ++v)
        if (tm.m[v]) s.m[remap[v]] = tm.m[v];
      r.t.push_back(std::move(s));
    }
    r.sort_terms();
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    int inv = 1;
    for (int x = 1; x < ring->p; ++x)
      if ((x * lt().c) % ring->p == 1) inv = x;
    return times_int(inv);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& tm : t) {
      if (!first) os << " + ";
      first = false;
      bool printed = false;
      if (tm.c != 1 || tm.deg == 0) {
        os << (int)tm.c;
        printed = true;
      }
      for (int v = 0; v < ring->nvars(); ++v)
        if (tm.m[v]) {
          if (printed) os << "*";
          os << ring->vars[v];
          if (tm.m[v] > 1) os << "^" << tm.m[v];
          printed = true;
        }
    }
    return os.str();
  }

  void sort_terms() {
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) {
      return mono_cmp(a.m, a.deg, b.m, b.deg) > 0;
    });
  }

 private:
  void check(const Poly& o) const {
    if (ring != o.ring) throw std::invalid_argument("mixed polynomial rings");
  }
};

}  // namespace nilp
