#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace lathom::fft_core {

using cplx = std::complex<double>;

/// One-dimensional complex transform plan for an arbitrary length.
/// Smooth lengths run a mixed-radix Cooley-Tukey recursion; lengths with a
/// prime factor above 61 fall back to Bluestein's chirp-z convolution.
/// Plans are immutable after construction and safe to execute concurrently;
/// each execution uses caller-owned scratch.
class Plan1d {
 public:
  explicit Plan1d(size_t n);

  size_t length() const { return n_; }
  size_t scratch_size() const { return scratch_size_; }
  bool uses_bluestein() const { return !chirp_.empty(); }

  /// Unnormalized transform: out[k] = sum_j in[j] exp(-+2*pi*i*j*k/n).
  /// in and out must not alias; scratch must hold scratch_size() elements.
  void execute(const cplx* in, cplx* out, bool inverse, cplx* scratch) const;

 private:
  void execute_ct(const cplx* in, size_t in_stride, cplx* out, size_t n, size_t level,
                  bool inverse) const;
  void execute_bluestein(const cplx* in, cplx* out, bool inverse, cplx* scratch) const;

  size_t n_;
  size_t scratch_size_ = 0;
  std::vector<size_t> factors_;
  std::vector<cplx> twiddle_;  // exp(-2*pi*i*j/n), j = 0..n-1

  // Bluestein tables (empty when the mixed-radix path is used)
  std::vector<cplx> chirp_;       // exp(-pi*i*j^2/n)
  std::vector<cplx> chirp_hat_;   // FFT of the zero-padded conjugate chirp
  std::shared_ptr<Plan1d> conv_;  // power-of-two convolution plan
};

/// Shared, thread-safe plan cache keyed by length.
std::shared_ptr<const Plan1d> plan(size_t n);

/// In-place d-dimensional unnormalized transform of a row-major array with
/// the given shape (last axis fastest).
void transform_nd(cplx* data, const std::vector<size_t>& shape, bool inverse);

}  // namespace lathom::fft_core
