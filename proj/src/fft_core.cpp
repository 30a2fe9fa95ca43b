#include "lathom/fft_core.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>

namespace lathom::fft_core {

namespace {

constexpr size_t kMaxDirectRadix = 61;

std::vector<size_t> factorize(size_t n) {
  std::vector<size_t> f;
  for (size_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      f.push_back(p);
      n /= p;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Plan1d::Plan1d(size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("zero-length transform");
  if (n == 1) return;

  twiddle_.resize(n);
  for (size_t j = 0; j < n; ++j) {
    const double phi = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    twiddle_[j] = cplx(std::cos(phi), std::sin(phi));
  }

  factors_ = factorize(n);
  if (factors_.back() <= kMaxDirectRadix) return;

  // Bluestein fallback for lengths with a large prime factor.
  factors_.clear();
  const size_t l = next_pow2(2 * n - 1);
  conv_ = std::make_shared<Plan1d>(l);
  scratch_size_ = 2 * l;

  chirp_.resize(n);
  for (size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the chirp angle exact for large j
    const size_t j2 = (j * j) % (2 * n);
    const double phi = -std::numbers::pi * static_cast<double>(j2) / static_cast<double>(n);
    chirp_[j] = cplx(std::cos(phi), std::sin(phi));
  }
  std::vector<cplx> b(l, cplx(0, 0)), bhat(l);
  b[0] = std::conj(chirp_[0]);
  for (size_t j = 1; j < n; ++j) {
    b[j] = std::conj(chirp_[j]);
    b[l - j] = std::conj(chirp_[j]);
  }
  conv_->execute_ct(b.data(), 1, bhat.data(), l, 0, false);
  chirp_hat_ = std::move(bhat);
}

void Plan1d::execute(const cplx* in, cplx* out, bool inverse, cplx* scratch) const {
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  if (!chirp_.empty())
    execute_bluestein(in, out, inverse, scratch);
  else
    execute_ct(in, 1, out, n_, 0, inverse);
}

void Plan1d::execute_ct(const cplx* in, size_t in_stride, cplx* out, size_t n, size_t level,
                        bool inverse) const {
  const size_t p = factors_[level];
  const size_t q = n / p;

  if (q == 1) {
    for (size_t r = 0; r < p; ++r) out[r] = in[r * in_stride];
  } else {
    for (size_t r = 0; r < p; ++r)
      execute_ct(in + r * in_stride, in_stride * p, out + r * q, q, level + 1, inverse);
  }

  // Generic radix-p butterfly: X[k + s q] = sum_r w_n^{r k} w_p^{r s} Y_r[k].
  std::array<cplx, kMaxDirectRadix + 1> t;
  for (size_t k = 0; k < q; ++k) {
    for (size_t r = 0; r < p; ++r) {
      const cplx w = twiddle_[(r * k * in_stride) % n_];
      const cplx y = out[r * q + k];
      t[r] = inverse ? y * std::conj(w) : y * w;
    }
    for (size_t s = 0; s < p; ++s) {
      cplx acc = t[0];
      for (size_t r = 1; r < p; ++r) {
        const cplx w = twiddle_[(r * s * q * in_stride) % n_];
        acc += inverse ? t[r] * std::conj(w) : t[r] * w;
      }
      out[k + s * q] = acc;
    }
  }
}

void Plan1d::execute_bluestein(const cplx* in, cplx* out, bool inverse, cplx* scratch) const {
  // The inverse is the conjugate of the forward transform of the conjugate.
  const size_t l = conv_->length();
  cplx* a = scratch;
  cplx* ahat = scratch + l;

  for (size_t j = 0; j < n_; ++j) {
    const cplx x = inverse ? std::conj(in[j]) : in[j];
    a[j] = x * chirp_[j];
  }
  for (size_t j = n_; j < l; ++j) a[j] = cplx(0, 0);

  conv_->execute_ct(a, 1, ahat, l, 0, false);
  for (size_t j = 0; j < l; ++j) ahat[j] *= chirp_hat_[j];
  conv_->execute_ct(ahat, 1, a, l, 0, true);

  const double scale = 1.0 / static_cast<double>(l);
  for (size_t k = 0; k < n_; ++k) {
    const cplx v = a[k] * chirp_[k] * scale;
    out[k] = inverse ? std::conj(v) : v;
  }
}

std::shared_ptr<const Plan1d> plan(size_t n) {
  static std::shared_mutex mutex;
  static std::map<size_t, std::shared_ptr<const Plan1d>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto p = std::make_shared<const Plan1d>(n);
  std::unique_lock lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

void transform_nd(cplx* data, const std::vector<size_t>& shape, bool inverse) {
  size_t total = 1;
  for (size_t s : shape) total *= s;
  if (total == 0) return;

  std::vector<cplx> line_in, line_out, scratch;
  for (size_t ax = 0; ax < shape.size(); ++ax) {
    const size_t len = shape[ax];
    if (len == 1) continue;
    const auto pl = plan(len);
    line_in.resize(len);
    line_out.resize(len);
    scratch.resize(pl->scratch_size());

    size_t stride = 1;
    for (size_t l = ax + 1; l < shape.size(); ++l) stride *= shape[l];
    const size_t outer = total / (len * stride);

    for (size_t o = 0; o < outer; ++o)
      for (size_t i = 0; i < stride; ++i) {
        cplx* base = data + o * len * stride + i;
        for (size_t t = 0; t < len; ++t) line_in[t] = base[t * stride];
        pl->execute(line_in.data(), line_out.data(), inverse, scratch.data());
        for (size_t t = 0; t < len; ++t) base[t * stride] = line_out[t];
      }
  }
}

}  // namespace lathom::fft_core
