#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lathom/rational.hpp"

namespace lathom {

/// Dense integer matrix of runtime dimension d <= 3, row-major.
struct IMat {
  int d = 0;
  std::array<std::int64_t, 9> a{};

  IMat() = default;
  explicit IMat(int dim) : d(dim) {}
  IMat(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    d = static_cast<int>(rows.size());
    if (d < 1 || d > 3) throw std::invalid_argument("matrix dimension must be 1..3");
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != d) throw std::invalid_argument("ragged matrix literal");
      int j = 0;
      for (auto v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static IMat identity(int dim) {
    IMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  std::int64_t& operator()(int i, int j) { return a[static_cast<size_t>(i * d + j)]; }
  std::int64_t operator()(int i, int j) const { return a[static_cast<size_t>(i * d + j)]; }

  friend bool operator==(const IMat& x, const IMat& y) {
    if (x.d != y.d) return false;
    for (int i = 0; i < x.d * x.d; ++i)
      if (x.a[static_cast<size_t>(i)] != y.a[static_cast<size_t>(i)]) return false;
    return true;
  }

  IMat transposed() const {
    IMat t(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::int64_t det() const {
    switch (d) {
      case 1:
        return a[0];
      case 2:
        return a[0] * a[3] - a[1] * a[2];
      case 3: {
        __int128 r = static_cast<__int128>(a[0]) * (static_cast<__int128>(a[4]) * a[8] -
                                                    static_cast<__int128>(a[5]) * a[7]) -
                     static_cast<__int128>(a[1]) * (static_cast<__int128>(a[3]) * a[8] -
                                                    static_cast<__int128>(a[5]) * a[6]) +
                     static_cast<__int128>(a[2]) * (static_cast<__int128>(a[3]) * a[7] -
                                                    static_cast<__int128>(a[4]) * a[6]);
        if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("determinant overflow");
        return static_cast<std::int64_t>(r);
      }
      default:
        throw std::invalid_argument("unsupported dimension");
    }
  }

  /// Adjugate, so that (*this) * adjugate() == det * identity exactly.
  IMat adjugate() const {
    IMat r(d);
    if (d == 1) {
      r(0, 0) = 1;
    } else if (d == 2) {
      r(0, 0) = (*this)(1, 1);
      r(0, 1) = -(*this)(0, 1);
      r(1, 0) = -(*this)(1, 0);
      r(1, 1) = (*this)(0, 0);
    } else {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;  // adj(i,j) = cofactor(j,i)
          const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
          r(i, j) = (*this)(i1, j1) * (*this)(i2, j2) - (*this)(i1, j2) * (*this)(i2, j1);
        }
    }
    return r;
  }

  friend IMat operator*(const IMat& x, const IMat& y) {
    if (x.d != y.d) throw std::invalid_argument("dimension mismatch");
    IMat r(x.d);
    for (int i = 0; i < x.d; ++i)
      for (int j = 0; j < x.d; ++j) {
        __int128 s = 0;
        for (int k = 0; k < x.d; ++k) s += static_cast<__int128>(x(i, k)) * y(k, j);
        if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("matrix product overflow");
        r(i, j) = static_cast<std::int64_t>(s);
      }
    return r;
  }

  RatVec apply(const RatVec& v) const {
    if (v.d != d) throw std::invalid_argument("dimension mismatch");
    RatVec r(d);
    for (int i = 0; i < d; ++i) {
      Rat s(0);
      for (int j = 0; j < d; ++j) s = s + (*this)(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }
};

/// Exact inverse of a unimodular matrix (|det| = 1).
inline IMat unimodular_inverse(const IMat& m) {
  const std::int64_t dt = m.det();
  if (dt != 1 && dt != -1) throw std::invalid_argument("matrix is not unimodular");
  IMat adj = m.adjugate();
  if (dt == -1)
    for (auto& v : adj.a) v = -v;
  return adj;
}

/// Parse the bracketed row-list form used in config files, e.g. [[8,-1],[0,8]].
IMat parse_int_matrix(const std::string& text);
std::string format_int_matrix(const IMat& m);

}  // namespace lathom
