#include "homog/kernels/kernels.hpp"

// Reference backend. The dot product accumulates into four lanes assigned
// round-robin (element i feeds lane i mod 4) and folds them as
// (l0+l2)+(l1+l3); the SIMD backends reproduce this tree exactly.

namespace homog::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t nb = n & ~std::size_t(3);
  for (std::size_t i = 0; i < nb; i += 4) {
    l0 += x[i] * y[i];
    l1 += x[i + 1] * y[i + 1];
    l2 += x[i + 2] * y[i + 2];
    l3 += x[i + 3] * y[i + 3];
  }
  double tail = 0.0;
  for (std::size_t i = nb; i < n; ++i) tail += x[i] * y[i];
  return ((l0 + l2) + (l1 + l3)) + tail;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void xpay_scalar(const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard_scalar(const double* x, const double* y, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void stencil_scalar(std::size_t n, std::size_t nx, const double* dg,
                    const double* tw, const double* te, const double* ts,
                    const double* tn, const double* x, double* y) {
  for (std::size_t c = 0; c < n; ++c) {
    double t = dg[c] * x[c];
    t = t - tw[c] * x[c - 1];
    t = t - te[c] * x[c + 1];
    t = t - ts[c] * x[c - nx];
    t = t - tn[c] * x[c + nx];
    y[c] = t;
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar",        dot_scalar,  axpy_scalar,
                         xpay_scalar,     hadamard_scalar, stencil_scalar};
  return b;
}

}  // namespace homog::kernels
