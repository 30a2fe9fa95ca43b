#include "lathom/lattice.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>

namespace lathom {

namespace {

using bigint = boost::multiprecision::cpp_int;

// Square matrix over arbitrary-precision integers; only what the Smith
// elimination needs.
struct BigMat {
  int d;
  std::vector<bigint> a;

  explicit BigMat(int dim) : d(dim), a(static_cast<size_t>(dim * dim)) {}
  explicit BigMat(const IMat& m) : d(m.d), a(static_cast<size_t>(m.d * m.d)) {
    for (int i = 0; i < d * d; ++i) a[static_cast<size_t>(i)] = m.a[static_cast<size_t>(i)];
  }

  static BigMat identity(int dim) {
    BigMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  bigint& operator()(int i, int j) { return a[static_cast<size_t>(i * d + j)]; }
  const bigint& operator()(int i, int j) const { return a[static_cast<size_t>(i * d + j)]; }

  void swap_rows(int i, int j) {
    for (int k = 0; k < d; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(int i, int j) {
    for (int k = 0; k < d; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  void add_row(int dst, int src, const bigint& f) {
    for (int k = 0; k < d; ++k) (*this)(dst, k) += f * (*this)(src, k);
  }
  void add_col(int dst, int src, const bigint& f) {
    for (int k = 0; k < d; ++k) (*this)(k, dst) += f * (*this)(k, src);
  }
  void negate_row(int i) {
    for (int k = 0; k < d; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(int j) {
    for (int k = 0; k < d; ++k) (*this)(k, j) = -(*this)(k, j);
  }

  IMat to_imat() const {
    IMat m(d);
    for (int i = 0; i < d * d; ++i) {
      const bigint& v = a[static_cast<size_t>(i)];
      if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Smith factor exceeds 64 bits");
      m.a[static_cast<size_t>(i)] = static_cast<std::int64_t>(v);
    }
    return m;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const PatternMatrix& pm) {
  const int d = pm.dim();
  BigMat a(pm.m);
  BigMat u = BigMat::identity(d);  // accumulates row operations, U M V = E
  BigMat v = BigMat::identity(d);

  for (int t = 0; t < d; ++t) {
    for (;;) {
      // Move the entry of smallest nonzero magnitude in the trailing block
      // to the pivot position.
      int pi = -1, pj = -1;
      bigint best = 0;
      for (int i = t; i < d; ++i)
        for (int j = t; j < d; ++j) {
          if (a(i, j) == 0) continue;
          bigint m = abs(a(i, j));
          if (pi < 0 || m < best) {
            best = m;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) throw std::invalid_argument("singular pattern matrix");
      if (pi != t) {
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }
      if (a(t, t) < 0) {
        a.negate_row(t);
        u.negate_row(t);
      }

      bool clean = true;
      for (int i = t + 1; i < d; ++i) {
        if (a(i, t) == 0) continue;
        const bigint q = a(i, t) / a(t, t);  // truncated division keeps remainders small
        if (q != 0) {
          a.add_row(i, t, -q);
          u.add_row(i, t, -q);
        }
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < d; ++j) {
        if (a(t, j) == 0) continue;
        const bigint q = a(t, j) / a(t, t);
        if (q != 0) {
          a.add_col(j, t, -q);
          v.add_col(j, t, -q);
        }
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // the pivot shrank; run the elimination again

      // Divisibility: the pivot must divide the whole trailing block.
      bool divisible = true;
      for (int i = t + 1; i < d && divisible; ++i)
        for (int j = t + 1; j < d && divisible; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divisible = false;
          }
      if (divisible) break;
    }
  }

  for (int t = 0; t < d; ++t) {
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }

  SmithDecomposition s;
  s.e = a.to_imat();
  // M = U^{-1} E V^{-1}
  s.q = unimodular_inverse(u.to_imat());
  s.r = unimodular_inverse(v.to_imat());
  return s;
}

Pattern Pattern::build(const PatternMatrix& m) { return build(m, smith_normal_form(m)); }

Pattern Pattern::build(const PatternMatrix& m, const SmithDecomposition& snf) {
  Pattern p;
  p.m_ = m;
  p.snf_ = snf;

  const int d = m.dim();
  for (int j = 0; j < d; ++j)
    if (snf.divisor(j) > 1) p.divisors_.push_back(snf.divisor(j));
  const int dm = static_cast<int>(p.divisors_.size());

  // Pattern basis vectors: columns d-d_M+j of R^{-1} E^{-1}.  The divisor
  // index of eq. (patternBasisV) is read as e_{d-d_M+j}; together with the
  // R^{-1} factor this is the unique choice consistent with
  // |P(M)| = |det M| and with the rank-1 example of Fig. 1.
  const IMat rinv = unimodular_inverse(snf.r);
  for (int j = 0; j < dm; ++j) {
    const int col = d - dm + j;
    RatVec y(d);
    for (int i = 0; i < d; ++i) y[i] = Rat(rinv(i, col), snf.divisor(col));
    p.basis_.push_back(reduce_to_symmetric_cell(y));
  }

  const std::int64_t count = m.point_count();
  p.points_.reserve(static_cast<size_t>(count));
  std::vector<std::int64_t> lambda(static_cast<size_t>(dm), 0);
  for (std::int64_t flat = 0; flat < count; ++flat) {
    RatVec y(d);
    for (int j = 0; j < dm; ++j) y = y + lambda[static_cast<size_t>(j)] * p.basis_[static_cast<size_t>(j)];
    p.points_.push_back(reduce_to_symmetric_cell(y));
    // row-major increment, last index fastest
    for (int j = dm - 1; j >= 0; --j) {
      if (++lambda[static_cast<size_t>(j)] < p.divisors_[static_cast<size_t>(j)]) break;
      lambda[static_cast<size_t>(j)] = 0;
    }
  }

  p.index_.reserve(p.points_.size());
  for (std::int64_t i = 0; i < count; ++i) {
    if (!p.index_.emplace(p.points_[static_cast<size_t>(i)], i).second)
      throw std::logic_error("duplicate pattern point; Smith factors inconsistent");
  }
  return p;
}

std::vector<std::int64_t> Pattern::lambda_of(std::int64_t i) const {
  std::vector<std::int64_t> lambda(divisors_.size(), 0);
  for (int j = static_cast<int>(divisors_.size()) - 1; j >= 0; --j) {
    lambda[static_cast<size_t>(j)] = i % divisors_[static_cast<size_t>(j)];
    i /= divisors_[static_cast<size_t>(j)];
  }
  return lambda;
}

std::optional<std::int64_t> Pattern::index_of(const RatVec& reduced_point) const {
  auto it = index_.find(reduced_point);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GeneratingSet GeneratingSet::build(const PatternMatrix& m) {
  return build(m, smith_normal_form(m));
}

GeneratingSet GeneratingSet::build(const PatternMatrix& m, const SmithDecomposition& snf_of_m) {
  GeneratingSet g;
  g.m_ = m;
  // P(M^T) built from the transposed factors M^T = R^T E Q^T of the same
  // decomposition; this is what makes the spectral ordering line up with the
  // multi-dimensional FFT without extra index mapping.
  g.dual_ = Pattern::build(m.transposed(), snf_of_m.transposed());

  const int d = m.dim();
  const IMat mt = m.m.transposed();
  g.freqs_.reserve(static_cast<size_t>(g.dual_.size()));
  for (const RatVec& p : g.dual_.points()) {
    std::array<std::int64_t, 3> h{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      Rat s(0);
      for (int j = 0; j < d; ++j) s = s + mt(i, j) * p[j];
      if (s.den != 1) throw std::logic_error("non-integer frequency from dual pattern point");
      h[static_cast<size_t>(i)] = s.num;
    }
    g.freqs_.push_back(h);
  }

  const int dm = g.dual_.pattern_dim();
  for (int j = 0; j < dm; ++j) {
    const int row = d - dm + j;
    std::array<std::int64_t, 3> hb{0, 0, 0};
    for (int i = 0; i < d; ++i) hb[static_cast<size_t>(i)] = snf_of_m.r(row, i);
    g.basis_.push_back(hb);
  }
  return g;
}

bool is_subpattern(const PatternMatrix& n, const PatternMatrix& m) {
  // M = J N with integer J  <=>  M adj(N) divisible by det N componentwise.
  if (n.dim() != m.dim()) return false;
  const std::int64_t dn = n.det();
  const IMat prod = m.m * n.m.adjugate();
  for (int i = 0; i < prod.d * prod.d; ++i)
    if (prod.a[static_cast<size_t>(i)] % dn != 0) return false;
  return true;
}

bool pattern_congruent(const PatternMatrix& m1, const PatternMatrix& m2) {
  if (m1.dim() != m2.dim()) return false;
  return is_subpattern(m2, m1) && m1.point_count() == m2.point_count();
}

PatternMatrix hermite_representative(const PatternMatrix& m) {
  const int d = m.dim();
  IMat h = m.m;

  // Row-style Hermite form: left-unimodular reduction to upper triangular.
  for (int col = 0; col < d; ++col) {
    for (;;) {
      int pivot = -1;
      for (int i = col; i < d; ++i)
        if (h(i, col) != 0 && (pivot < 0 || std::llabs(h(i, col)) < std::llabs(h(pivot, col))))
          pivot = i;
      if (pivot < 0) throw std::invalid_argument("singular pattern matrix");
      if (pivot != col)
        for (int k = 0; k < d; ++k) std::swap(h(col, k), h(pivot, k));
      bool clean = true;
      for (int i = col + 1; i < d; ++i) {
        if (h(i, col) == 0) continue;
        const std::int64_t q = h(i, col) / h(col, col);
        for (int k = 0; k < d; ++k) h(i, k) -= q * h(col, k);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  for (int i = 0; i < d; ++i)
    if (h(i, i) < 0)
      for (int k = 0; k < d; ++k) h(i, k) = -h(i, k);
  // normalize above-diagonal entries into [0, h(j,j)); ascending j so that
  // later row operations never touch an already-normalized column
  for (int j = 1; j < d; ++j)
    for (int i = 0; i < j; ++i) {
      std::int64_t q = h(i, j) / h(j, j);
      if (h(i, j) - q * h(j, j) < 0) q -= 1;
      if (q != 0)
        for (int k = 0; k < d; ++k) h(i, k) -= q * h(j, k);
    }
  return PatternMatrix(h);
}

std::vector<std::int64_t> reorder_map(const Pattern& p1, const Pattern& p2) {
  if (!pattern_congruent(p1.matrix(), p2.matrix()))
    throw std::invalid_argument("reorder_map requires pattern-congruent matrices");
  std::vector<std::int64_t> pi(static_cast<size_t>(p1.size()));
  for (std::int64_t i = 0; i < p1.size(); ++i) {
    const auto j = p2.index_of(p1.point(i));
    if (!j) throw std::logic_error("congruent patterns disagree as point sets");
    pi[static_cast<size_t>(i)] = *j;
  }
  return pi;
}

std::vector<std::array<double, 3>> transformed_pattern(const std::array<double, 9>& l, int d,
                                                       const Pattern& p) {
  // l is row-major with stride d
  double det = 0;
  if (d == 2)
    det = l[0] * l[3] - l[1] * l[2];
  else if (d == 3)
    det = l[0] * (l[4] * l[8] - l[5] * l[7]) - l[1] * (l[3] * l[8] - l[5] * l[6]) +
          l[2] * (l[3] * l[7] - l[4] * l[6]);
  else
    throw std::invalid_argument("unsupported dimension");
  if (det == 0.0) throw std::invalid_argument("singular transformation matrix");

  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<size_t>(p.size()));
  for (const RatVec& y : p.points()) {
    std::array<double, 3> x{0, 0, 0};
    for (int i = 0; i < d; ++i) {
      double s = 0;
      for (int j = 0; j < d; ++j) s += l[static_cast<size_t>(i * d + j)] * y[j].to_double();
      x[static_cast<size_t>(i)] = s;
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace lathom
