#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>

namespace nilp {

// Scalar in GF(p) carrying its own modulus. p is small (2 or 3 in this
// project) so a byte of payload is plenty.
struct GFVal {
  int16_t p = 0;
  int16_t v = 0;

  GFVal() = default;
  GFVal(long n, int prime) : p((int16_t)prime) {
    long r = n % prime;
    if (r < 0) r += prime;
    v = (int16_t)r;
  }

  bool is_zero() const { return v == 0; }

  GFVal operator+(const GFVal& o) const {
    require(o);
    return GFVal(v + o.v, p);
  }
  GFVal operator-(const GFVal& o) const {
    require(o);
    return GFVal(v - o.v, p);
  }
  GFVal operator*(const GFVal& o) const {
    require(o);
    return GFVal((long)v * o.v, p);
  }
  GFVal operator-() const { return GFVal(-(long)v, p); }
  GFVal times_int(long n) const { return GFVal((long)v * ((n % p + p) % p), p); }

  GFVal inverse() const {
    if (v == 0) throw std::domain_error("GF(p): inverse of zero");
    // p is tiny, scan
    for (int x = 1; x < p; ++x)
      if ((x * v) % p == 1) return GFVal(x, p);
    throw std::domain_error("GF(p): no inverse (p not prime?)");
  }

  bool operator==(const GFVal& o) const { return p == o.p && v == o.v; }
  bool operator!=(const GFVal& o) const { return !(*this == o); }

 private:
  void require(const GFVal& o) const {
    if (p != o.p) throw std::invalid_argument("GF(p): mixed characteristics");
  }
};

// Exact rational scalar for the characteristic-0 reference algebra.
struct Rat {
  boost::multiprecision::cpp_rational v;

  Rat() : v(0) {}
  Rat(long n) : v(n) {}
  explicit Rat(const boost::multiprecision::cpp_rational& x) : v(x) {}

  bool is_zero() const { return v == 0; }

  Rat operator+(const Rat& o) const { return Rat(v + o.v); }
  Rat operator-(const Rat& o) const { return Rat(v - o.v); }
  Rat operator*(const Rat& o) const { return Rat(v * o.v); }
  Rat operator-() const { return Rat(-v); }
  Rat times_int(long n) const { return Rat(v * n); }
  Rat inverse() const {
    if (v == 0) throw std::domain_error("rational inverse of zero");
    return Rat(1 / v);
  }

  bool operator==(const Rat& o) const { return v == o.v; }
  bool operator!=(const Rat& o) const { return v != o.v; }
};

}  // namespace nilp
