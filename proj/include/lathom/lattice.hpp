#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lathom/intmat.hpp"
#include "lathom/rational.hpp"

namespace lathom {

/// A regular integer matrix M defining the sampling lattice M^{-1} Z^d.
/// m = |det M| is the number of pattern points.
struct PatternMatrix {
  IMat m;

  PatternMatrix() = default;
  explicit PatternMatrix(const IMat& mat) : m(mat) {
    if (m.det() == 0) throw std::invalid_argument("singular pattern matrix");
  }
  PatternMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : PatternMatrix(IMat(rows)) {}

  int dim() const { return m.d; }
  std::int64_t det() const { return m.det(); }
  std::int64_t point_count() const {
    const std::int64_t dt = m.det();
    return dt < 0 ? -dt : dt;
  }
  PatternMatrix transposed() const { return PatternMatrix(m.transposed()); }

  friend bool operator==(const PatternMatrix& a, const PatternMatrix& b) { return a.m == b.m; }
};

/// Smith normal form M = Q E R with unimodular Q, R and E = diag(e_1..e_d),
/// e_j >= 1 and e_j | e_{j+1}.
struct SmithDecomposition {
  IMat q;
  IMat e;
  IMat r;

  std::int64_t divisor(int j) const { return e(j, j); }
  SmithDecomposition transposed() const { return SmithDecomposition{r.transposed(), e, q.transposed()}; }
};

SmithDecomposition smith_normal_form(const PatternMatrix& m);

/// The pattern P(M): the m congruence representatives of M^{-1} Z^d mod 1
/// inside [-1/2, 1/2)^d, addressed by coefficients lambda_j of the pattern
/// basis vectors and stored in lambda-lexicographic order with the last
/// index varying fastest.
class Pattern {
 public:
  static Pattern build(const PatternMatrix& m);
  /// Build using a caller-supplied decomposition of the same matrix; used to
  /// keep the generating-set ordering consistent with the transform.
  static Pattern build(const PatternMatrix& m, const SmithDecomposition& snf);

  const PatternMatrix& matrix() const { return m_; }
  const SmithDecomposition& snf() const { return snf_; }
  int dim() const { return m_.dim(); }
  /// Pattern dimension d_M: number of elementary divisors exceeding 1.
  int pattern_dim() const { return static_cast<int>(divisors_.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(points_.size()); }
  /// The d_M elementary divisors exceeding 1, in chain order.
  const std::vector<std::int64_t>& divisors() const { return divisors_; }
  /// Pattern basis vectors, reduced into the symmetric cell.
  const std::vector<RatVec>& basis() const { return basis_; }
  const std::vector<RatVec>& points() const { return points_; }
  const RatVec& point(std::int64_t i) const { return points_[static_cast<size_t>(i)]; }

  /// lambda multi-index of the flat position i (row-major, last fastest).
  std::vector<std::int64_t> lambda_of(std::int64_t i) const;

  /// Exact lookup of a reduced rational point; nullopt if not a pattern point.
  std::optional<std::int64_t> index_of(const RatVec& reduced_point) const;

 private:
  PatternMatrix m_;
  SmithDecomposition snf_;
  std::vector<std::int64_t> divisors_;
  std::vector<RatVec> basis_;
  std::vector<RatVec> points_;
  std::unordered_map<RatVec, std::int64_t, RatVecHash> index_;
};

/// The generating set G(M^T) = M^T P(M^T): the integer frequency set of the
/// Fourier transform on P(M), with symmetric representatives and the ordering
/// induced by the transposed Smith factors of M.
class GeneratingSet {
 public:
  static GeneratingSet build(const PatternMatrix& m);
  static GeneratingSet build(const PatternMatrix& m, const SmithDecomposition& snf_of_m);

  const PatternMatrix& matrix() const { return m_; }
  int dim() const { return m_.dim(); }
  std::int64_t size() const { return static_cast<std::int64_t>(freqs_.size()); }
  /// Frequencies as integer vectors, one per pattern point of P(M^T).
  const std::vector<std::array<std::int64_t, 3>>& frequencies() const { return freqs_; }
  const std::array<std::int64_t, 3>& frequency(std::int64_t i) const {
    return freqs_[static_cast<size_t>(i)];
  }
  /// Generating set basis vectors h_j (rows d-d_M+j of R).
  const std::vector<std::array<std::int64_t, 3>>& basis() const { return basis_; }
  /// The underlying pattern of M^T whose ordering the frequencies follow.
  const Pattern& dual_pattern() const { return dual_; }

 private:
  PatternMatrix m_;
  Pattern dual_;
  std::vector<std::array<std::int64_t, 3>> freqs_;
  std::vector<std::array<std::int64_t, 3>> basis_;
};

/// True iff P(N) is a subpattern of P(M), i.e. M = J N for an integer J.
bool is_subpattern(const PatternMatrix& n, const PatternMatrix& m);

/// True iff M1 and M2 generate the same pattern (M1 M2^{-1} unimodular).
bool pattern_congruent(const PatternMatrix& m1, const PatternMatrix& m2);

/// The upper-triangular congruence class representative with
/// 0 <= m(i,j) < m(j,j) for i < j.
PatternMatrix hermite_representative(const PatternMatrix& m);

/// Permutation pi with points2[pi[i]] == points1[i]; requires congruence.
std::vector<std::int64_t> reorder_map(const Pattern& p1, const Pattern& p2);

/// Transformed pattern P_L(M) = L P(M) as real points (display only).
std::vector<std::array<double, 3>> transformed_pattern(const std::array<double, 9>& l, int d,
                                                       const Pattern& p);

}  // namespace lathom
