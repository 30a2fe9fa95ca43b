#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lathom {

/// Exact rational scalar on 64-bit integers, always normalized
/// (denominator positive, gcd(num, den) == 1).
///
/// Pattern points live on M^{-1} Z^d, so every coordinate that occurs in the
/// lattice module is a rational with a denominator dividing |det M|; exact
/// arithmetic keeps half-open cell boundaries unambiguous.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator*(std::int64_t s, const Rat& a) { return Rat(s * a.num, a.den); }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  // exact comparison via cross-multiplication (denominators positive)
  friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
};

/// Reduce a rational mod 1 into the symmetric half-open cell [-1/2, 1/2).
inline Rat reduce_to_symmetric_cell(const Rat& r) {
  std::int64_t n = r.num % r.den;
  if (n < 0) n += r.den;  // now n/den in [0,1)
  if (2 * n >= r.den) n -= r.den;
  return Rat(n, r.den);
}

/// Small rational vector of runtime dimension d <= 3.
struct RatVec {
  int d = 0;
  std::array<Rat, 3> c{};

  RatVec() = default;
  explicit RatVec(int dim) : d(dim) {}

  Rat& operator[](int i) { return c[static_cast<size_t>(i)]; }
  const Rat& operator[](int i) const { return c[static_cast<size_t>(i)]; }

  friend RatVec operator+(const RatVec& a, const RatVec& b) {
    RatVec r(a.d);
    for (int i = 0; i < a.d; ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend RatVec operator*(std::int64_t s, const RatVec& a) {
    RatVec r(a.d);
    for (int i = 0; i < a.d; ++i) r[i] = s * a[i];
    return r;
  }
  friend bool operator==(const RatVec& a, const RatVec& b) {
    if (a.d != b.d) return false;
    for (int i = 0; i < a.d; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
};

/// Componentwise reduction into [-1/2, 1/2)^d.
inline RatVec reduce_to_symmetric_cell(const RatVec& v) {
  RatVec r(v.d);
  for (int i = 0; i < v.d; ++i) r[i] = reduce_to_symmetric_cell(v[i]);
  return r;
}

/// Reduction of a double into [-1/2, 1/2); used only for display and
/// transformed patterns, never for lattice membership decisions.
inline double reduce_to_symmetric_cell(double x) {
  double r = x - std::floor(x);
  if (r >= 0.5) r -= 1.0;
  return r;
}

struct RatVecHash {
  size_t operator()(const RatVec& v) const {
    size_t h = static_cast<size_t>(v.d);
    for (int i = 0; i < v.d; ++i) {
      h ^= std::hash<std::int64_t>{}(v[i].num) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= std::hash<std::int64_t>{}(v[i].den) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace lathom
