#include "homog/kernels/kernels.hpp"

// AVX2 backend, 4 doubles per vector. Multiplies and adds stay unfused and
// the dot-product lanes match the scalar round-robin assignment, so results
// are bit-identical to the scalar backend.

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

namespace homog::kernels {
namespace {

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(xv, yv));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);       // lanes 0, 1
  const __m128d hi = _mm256_extractf128_pd(acc, 1);     // lanes 2, 3
  const __m128d pair = _mm_add_pd(lo, hi);              // {l0+l2, l1+l3}
  const double head =
      _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  double tail = 0.0;
  for (std::size_t i = nb; i < n; ++i) tail += x[i] * y[i];
  return head + tail;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (std::size_t i = nb; i < n; ++i) y[i] = y[i] + a * x[i];
}

void xpay_avx2(const double* x, double b, double* y, std::size_t n) {
  const __m256d bv = _mm256_set1_pd(b);
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(xv, _mm256_mul_pd(bv, yv)));
  }
  for (std::size_t i = nb; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard_avx2(const double* x, const double* y, double* out,
                   std::size_t n) {
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (std::size_t i = nb; i < n; ++i) out[i] = x[i] * y[i];
}

void stencil_avx2(std::size_t n, std::size_t nx, const double* dg,
                  const double* tw, const double* te, const double* ts,
                  const double* tn, const double* x, double* y) {
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t c = 0; c < nb; c += 4) {
    __m256d t = _mm256_mul_pd(_mm256_loadu_pd(dg + c), _mm256_loadu_pd(x + c));
    t = _mm256_sub_pd(t, _mm256_mul_pd(_mm256_loadu_pd(tw + c),
                                       _mm256_loadu_pd(x + c - 1)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(_mm256_loadu_pd(te + c),
                                       _mm256_loadu_pd(x + c + 1)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(_mm256_loadu_pd(ts + c),
                                       _mm256_loadu_pd(x + c - nx)));
    t = _mm256_sub_pd(t, _mm256_mul_pd(_mm256_loadu_pd(tn + c),
                                       _mm256_loadu_pd(x + c + nx)));
    _mm256_storeu_pd(y + c, t);
  }
  for (std::size_t c = nb; c < n; ++c) {
    double t = dg[c] * x[c];
    t = t - tw[c] * x[c - 1];
    t = t - te[c] * x[c + 1];
    t = t - ts[c] * x[c - nx];
    t = t - tn[c] * x[c + nx];
    y[c] = t;
  }
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend b{"avx2",      dot_avx2,      axpy_avx2,
                         xpay_avx2,   hadamard_avx2, stencil_avx2};
  return &b;
}

}  // namespace homog::kernels

#else

namespace homog::kernels {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace homog::kernels

#endif
