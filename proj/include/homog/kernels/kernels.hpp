#pragma once

#include <cstddef>
#include <vector>

namespace homog::kernels {

// Dense double-precision primitives behind the solvers and field synthesis.
// Every backend implements the same fixed arithmetic order (lane-blocked
// reductions, no fused multiply-add), so scalar and SIMD paths return
// bit-identical results; the equivalence tests assert exactly that.
//
// stencil_apply computes, for each cell c of an nx-per-row lattice,
//   y[c] = dg[c]*x[c] - tw[c]*x[c-1] - te[c]*x[c+1]
//                     - ts[c]*x[c-nx] - tn[c]*x[c+nx]
// Callers must pad x with nx readable elements on both sides of the live
// range and zero the transmissibility entries of faces on the domain
// boundary; the padded reads are then multiplied by exact zeros.

struct Backend {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*xpay)(const double* x, double b, double* y, std::size_t n);
  void (*hadamard)(const double* x, const double* y, double* out,
                   std::size_t n);
  void (*stencil_apply)(std::size_t n, std::size_t nx, const double* dg,
                        const double* tw, const double* te, const double* ts,
                        const double* tn, const double* x, double* y);
};

const Backend& scalar_backend();
const Backend* avx2_backend();  // null when the CPU or build lacks AVX2
const Backend* neon_backend();  // null off aarch64

// Backend picked at startup: best available unless the HOMOG_KERNELS
// environment variable names one of {scalar, avx2, neon}.
const Backend& active();
std::vector<const Backend*> available();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void xpay(const double* x, double b, double* y, std::size_t n) {
  active().xpay(x, b, y, n);
}
inline void hadamard(const double* x, const double* y, double* out,
                     std::size_t n) {
  active().hadamard(x, y, out, n);
}
inline void stencil_apply(std::size_t n, std::size_t nx, const double* dg,
                          const double* tw, const double* te, const double* ts,
                          const double* tn, const double* x, double* y) {
  active().stencil_apply(n, nx, dg, tw, te, ts, tn, x, y);
}

}  // namespace homog::kernels
