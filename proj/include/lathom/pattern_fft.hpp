#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "lathom/fft_core.hpp"
#include "lathom/lattice.hpp"

namespace lathom {

using cplx = std::complex<double>;

/// Complex values attached to pattern points, in the pattern's
/// lambda-lexicographic order.  Tensor-valued fields store their components
/// contiguously: v[c*m + i] is component c at point i.
struct PatternField {
  const Pattern* pattern = nullptr;
  int ncomp = 1;
  std::vector<cplx> v;

  PatternField() = default;
  PatternField(const Pattern& p, int components)
      : pattern(&p), ncomp(components),
        v(static_cast<size_t>(components) * static_cast<size_t>(p.size())) {}

  std::int64_t size() const { return pattern ? pattern->size() : 0; }
  cplx& at(int c, std::int64_t i) { return v[static_cast<size_t>(c) * static_cast<size_t>(size()) + static_cast<size_t>(i)]; }
  const cplx& at(int c, std::int64_t i) const { return v[static_cast<size_t>(c) * static_cast<size_t>(size()) + static_cast<size_t>(i)]; }
};

/// Complex values attached to generating-set frequencies, ordered like the
/// dual pattern P(M^T).
struct SpectralField {
  const GeneratingSet* gset = nullptr;
  int ncomp = 1;
  std::vector<cplx> v;

  SpectralField() = default;
  SpectralField(const GeneratingSet& g, int components)
      : gset(&g), ncomp(components),
        v(static_cast<size_t>(components) * static_cast<size_t>(g.size())) {}

  std::int64_t size() const { return gset ? gset->size() : 0; }
  cplx& at(int c, std::int64_t i) { return v[static_cast<size_t>(c) * static_cast<size_t>(size()) + static_cast<size_t>(i)]; }
  const cplx& at(int c, std::int64_t i) const { return v[static_cast<size_t>(c) * static_cast<size_t>(size()) + static_cast<size_t>(i)]; }
};

/// Transform plan binding a pattern to its generating set.  The fast path
/// reshapes the field into the (e_{d-d_M+1}, ..., e_d) array and runs a
/// standard multi-dimensional FFT of those lengths; with the generating set
/// built from the transposed Smith factors no further index mapping is
/// needed.  Forward carries the 1/m factor, the inverse carries m.
class PatternTransform {
 public:
  explicit PatternTransform(const PatternMatrix& m);

  const Pattern& pattern() const { return pattern_; }
  const GeneratingSet& generating_set() const { return gset_; }
  /// FFT axis lengths (the elementary divisors exceeding 1).
  const std::vector<size_t>& shape() const { return shape_; }

  SpectralField forward(const PatternField& a) const;
  PatternField inverse(const SpectralField& ahat) const;

  /// In-place batched transforms over ncomp components laid out c*m + i.
  void forward_inplace(cplx* data, int ncomp) const;
  void inverse_inplace(cplx* data, int ncomp) const;

 private:
  Pattern pattern_;
  GeneratingSet gset_;
  std::vector<size_t> shape_;
  std::int64_t m_;
};

/// Dense O(m^2) evaluation of the Fourier matrix F(M); the independent
/// oracle for the fast path.
SpectralField dft_matrix_apply(const Pattern& p, const GeneratingSet& g, const PatternField& a);

/// Sample a function given on the unit cell [-1/2,1/2)^d at the pattern points.
PatternField sample_function(const Pattern& p, const std::function<cplx(const RatVec&)>& f);

/// Integer frequency with map-friendly ordering.
using FreqKey = std::array<std::int64_t, 3>;

/// Fold a finitely supported coefficient map onto the generating set by
/// direct summation of the aliasing relation; test utility for
/// fft(sample(f)) with trigonometric polynomials.
SpectralField aliasing_check(const PatternTransform& t, const std::map<FreqKey, cplx>& coeffs);

}  // namespace lathom
