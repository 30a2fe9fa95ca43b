#include "lathom/pattern_fft.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lathom {

namespace {

// exp(-2*pi*i * (h . y)) with the phase reduced exactly in integer arithmetic
cplx unit_phase(const std::array<std::int64_t, 3>& h, const RatVec& y, int d) {
  // h . y = num / den with den = lcm of the component denominators
  std::int64_t den = 1;
  for (int i = 0; i < d; ++i) den = std::lcm(den, y[i].den);
  std::int64_t num = 0;
  for (int i = 0; i < d; ++i) num += h[static_cast<size_t>(i)] * (y[i].num * (den / y[i].den));
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const double phi = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return cplx(std::cos(phi), std::sin(phi));
}

}  // namespace

PatternTransform::PatternTransform(const PatternMatrix& m) {
  const SmithDecomposition snf = smith_normal_form(m);
  pattern_ = Pattern::build(m, snf);
  gset_ = GeneratingSet::build(m, snf);
  m_ = pattern_.size();
  for (std::int64_t e : pattern_.divisors()) shape_.push_back(static_cast<size_t>(e));
}

void PatternTransform::forward_inplace(cplx* data, int ncomp) const {
  const double scale = 1.0 / static_cast<double>(m_);
  const size_t m = static_cast<size_t>(m_);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < ncomp; ++c) {
    cplx* comp = data + static_cast<size_t>(c) * m;
    fft_core::transform_nd(comp, shape_, false);
    for (size_t i = 0; i < m; ++i) comp[i] *= scale;
  }
}

void PatternTransform::inverse_inplace(cplx* data, int ncomp) const {
  const size_t m = static_cast<size_t>(m_);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < ncomp; ++c) {
    cplx* comp = data + static_cast<size_t>(c) * m;
    fft_core::transform_nd(comp, shape_, true);
  }
}

SpectralField PatternTransform::forward(const PatternField& a) const {
  if (a.size() != m_) throw std::invalid_argument("field size does not match pattern");
  SpectralField out(gset_, a.ncomp);
  out.v = a.v;
  forward_inplace(out.v.data(), a.ncomp);
  return out;
}

PatternField PatternTransform::inverse(const SpectralField& ahat) const {
  if (ahat.size() != m_) throw std::invalid_argument("field size does not match generating set");
  PatternField out(pattern_, ahat.ncomp);
  out.v = ahat.v;
  inverse_inplace(out.v.data(), ahat.ncomp);
  return out;
}

SpectralField dft_matrix_apply(const Pattern& p, const GeneratingSet& g, const PatternField& a) {
  if (a.size() != p.size()) throw std::invalid_argument("field size does not match pattern");
  const std::int64_t m = p.size();
  const int d = p.dim();
  const double scale = 1.0 / static_cast<double>(m);

  SpectralField out(g, a.ncomp);
  for (std::int64_t hi = 0; hi < m; ++hi) {
    const auto& h = g.frequency(hi);
    for (int c = 0; c < a.ncomp; ++c) {
      cplx acc(0, 0);
      for (std::int64_t yi = 0; yi < m; ++yi) acc += a.at(c, yi) * unit_phase(h, p.point(yi), d);
      out.at(c, hi) = acc * scale;
    }
  }
  return out;
}

PatternField sample_function(const Pattern& p, const std::function<cplx(const RatVec&)>& f) {
  PatternField a(p, 1);
  for (std::int64_t i = 0; i < p.size(); ++i) a.at(0, i) = f(p.point(i));
  return a;
}

SpectralField aliasing_check(const PatternTransform& t, const std::map<FreqKey, cplx>& coeffs) {
  const Pattern& p = t.pattern();
  const GeneratingSet& g = t.generating_set();
  const int d = p.dim();
  const IMat mt = p.matrix().m.transposed();
  const std::int64_t det_mt = mt.det();
  const IMat adj_mt = mt.adjugate();

  // representative lookup: k == h (mod M^T) iff M^{-T} k reduces to the same
  // dual-pattern point as M^{-T} h
  auto rep_index = [&](const FreqKey& k) {
    RatVec x(d);
    for (int i = 0; i < d; ++i) {
      std::int64_t num = 0;
      for (int j = 0; j < d; ++j) num += adj_mt(i, j) * k[static_cast<size_t>(j)];
      x[i] = Rat(num, det_mt);
    }
    const auto idx = t.generating_set().dual_pattern().index_of(reduce_to_symmetric_cell(x));
    if (!idx) throw std::logic_error("frequency does not reduce onto the dual pattern");
    return *idx;
  };

  SpectralField out(g, 1);
  for (const auto& [k, c] : coeffs) out.at(0, rep_index(k)) += c;
  return out;
}

}  // namespace lathom
