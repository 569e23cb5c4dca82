#include "homog/kernels/kernels.hpp"

// NEON backend. float64x2 is two lanes wide, so each iteration carries a
// pair of registers covering lanes {0,1} and {2,3}; the reduction tree
// (l0+l2)+(l1+l3) then matches the scalar and AVX2 backends bit for bit.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace homog::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc23 = vaddq_f64(acc23,
                      vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  const float64x2_t pair = vaddq_f64(acc01, acc23);  // {l0+l2, l1+l3}
  const double head = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  double tail = 0.0;
  for (std::size_t i = nb; i < n; ++i) tail += x[i] * y[i];
  return head + tail;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  const std::size_t nb = n & ~std::size_t(1);
  for (std::size_t i = 0; i < nb; i += 2) {
    const float64x2_t r =
        vaddq_f64(vld1q_f64(y + i), vmulq_f64(av, vld1q_f64(x + i)));
    vst1q_f64(y + i, r);
  }
  for (std::size_t i = nb; i < n; ++i) y[i] = y[i] + a * x[i];
}

void xpay_neon(const double* x, double b, double* y, std::size_t n) {
  const float64x2_t bv = vdupq_n_f64(b);
  const std::size_t nb = n & ~std::size_t(1);
  for (std::size_t i = 0; i < nb; i += 2) {
    const float64x2_t r =
        vaddq_f64(vld1q_f64(x + i), vmulq_f64(bv, vld1q_f64(y + i)));
    vst1q_f64(y + i, r);
  }
  for (std::size_t i = nb; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard_neon(const double* x, const double* y, double* out,
                   std::size_t n) {
  const std::size_t nb = n & ~std::size_t(1);
  for (std::size_t i = 0; i < nb; i += 2)
    vst1q_f64(out + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  for (std::size_t i = nb; i < n; ++i) out[i] = x[i] * y[i];
}

void stencil_neon(std::size_t n, std::size_t nx, const double* dg,
                  const double* tw, const double* te, const double* ts,
                  const double* tn, const double* x, double* y) {
  const std::size_t nb = n & ~std::size_t(1);
  for (std::size_t c = 0; c < nb; c += 2) {
    float64x2_t t = vmulq_f64(vld1q_f64(dg + c), vld1q_f64(x + c));
    t = vsubq_f64(t, vmulq_f64(vld1q_f64(tw + c), vld1q_f64(x + c - 1)));
    t = vsubq_f64(t, vmulq_f64(vld1q_f64(te + c), vld1q_f64(x + c + 1)));
    t = vsubq_f64(t, vmulq_f64(vld1q_f64(ts + c), vld1q_f64(x + c - nx)));
    t = vsubq_f64(t, vmulq_f64(vld1q_f64(tn + c), vld1q_f64(x + c + nx)));
    vst1q_f64(y + c, t);
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

const Backend* neon_backend_impl() {
  static const Backend b{"neon",      dot_neon,      axpy_neon,
                         xpay_neon,   hadamard_neon, stencil_neon};
  return &b;
}

}  // namespace homog::kernels

#else

namespace homog::kernels {
const Backend* neon_backend_impl() { return nullptr; }
}  // namespace homog::kernels

#endif
