#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <vector>

#include "doctest.h"
#include "homog/kernels/kernels.hpp"
#include "homog/rng.hpp"

using homog::kernels::Backend;

namespace {

std::vector<double> fill(std::size_t n, std::uint64_t seed, double lo,
                         double hi) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * homog::rng::uniform01(7, 11, seed, i);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Padded stencil problem with zeroed boundary transmissibilities, the
// contract stencil_apply documents.
struct StencilCase {
  std::size_t nx, ny, n;
  std::vector<double> dg, tw, te, ts, tn, x;

  StencilCase(std::size_t nx_, std::size_t ny_, std::uint64_t seed)
      : nx(nx_), ny(ny_), n(nx_ * ny_) {
    dg = fill(n, seed + 1, 1.0, 4.0);
    tw = fill(n, seed + 2, 0.1, 1.0);
    te = fill(n, seed + 3, 0.1, 1.0);
    ts = fill(n, seed + 4, 0.1, 1.0);
    tn = fill(n, seed + 5, 0.1, 1.0);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      tw[iy * nx] = 0.0;
      te[iy * nx + nx - 1] = 0.0;
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
      ts[ix] = 0.0;
      tn[(ny - 1) * nx + ix] = 0.0;
    }
    x = fill(n + 2 * nx, seed + 6, -1.0, 1.0);  // nx of padding on each side
  }

  std::vector<double> apply(const Backend& b) const {
    std::vector<double> y(n, 0.0);
    b.stencil_apply(n, nx, dg.data(), tw.data(), te.data(), ts.data(),
                    tn.data(), x.data() + nx, y.data());
    return y;
  }
};

}  // namespace

TEST_CASE("scalar backend matches naive reference arithmetic") {
  const Backend& s = homog::kernels::scalar_backend();
  for (std::size_t n : {1u, 2u, 7u, 16u, 33u, 1024u}) {
    const auto x = fill(n, 100 + n, -2.0, 2.0);
    const auto y = fill(n, 200 + n, -2.0, 2.0);

    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += x[i] * y[i];
    CHECK(s.dot(x.data(), y.data(), n) ==
          doctest::Approx(ref).epsilon(1e-13));

    auto y1 = y;
    s.axpy(1.5, x.data(), y1.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y1[i] == doctest::Approx(1.5 * x[i] + y[i]).epsilon(1e-14));

    auto y2 = y;
    s.xpay(x.data(), 0.25, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y2[i] == doctest::Approx(x[i] + 0.25 * y[i]).epsilon(1e-14));

    std::vector<double> h(n);
    s.hadamard(x.data(), y.data(), h.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(h[i] == x[i] * y[i]);
  }
}

TEST_CASE("stencil_apply matches the five-point formula") {
  const Backend& s = homog::kernels::scalar_backend();
  const StencilCase c(7, 5, 42);
  const auto y = c.apply(s);
  const double* x = c.x.data() + c.nx;
  for (std::size_t i = 0; i < c.n; ++i) {
    const double want = c.dg[i] * x[i] - c.tw[i] * x[i - 1] -
                        c.te[i] * x[i + 1] - c.ts[i] * x[i - c.nx] -
                        c.tn[i] * x[i + c.nx];
    CHECK(y[i] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("every available backend is bit-identical to scalar") {
  const Backend& s = homog::kernels::scalar_backend();
  const auto backends = homog::kernels::available();
  REQUIRE(backends.size() >= 1);

  for (const Backend* b : backends) {
    CAPTURE(b->name);
    // Sizes straddle the SIMD widths so remainder lanes are exercised.
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 16u, 31u, 64u, 1000u}) {
      const auto x = fill(n, 300 + n, -3.0, 3.0);
      const auto y = fill(n, 400 + n, -3.0, 3.0);

      const double ds = s.dot(x.data(), y.data(), n);
      const double db = b->dot(x.data(), y.data(), n);
      CHECK(std::memcmp(&ds, &db, sizeof ds) == 0);

      auto ys = y, yb = y;
      s.axpy(-0.7, x.data(), ys.data(), n);
      b->axpy(-0.7, x.data(), yb.data(), n);
      CHECK(same_bits(ys, yb));

      ys = y;
      yb = y;
      s.xpay(x.data(), 1.9, ys.data(), n);
      b->xpay(x.data(), 1.9, yb.data(), n);
      CHECK(same_bits(ys, yb));

      std::vector<double> hs(n), hb(n);
      s.hadamard(x.data(), y.data(), hs.data(), n);
      b->hadamard(x.data(), y.data(), hb.data(), n);
      CHECK(same_bits(hs, hb));
    }

    for (std::size_t nx : {1u, 2u, 5u, 8u, 17u})
      for (std::size_t ny : {1u, 3u, 6u}) {
        const StencilCase c(nx, ny, 99 + nx * 31 + ny);
        CHECK(same_bits(c.apply(s), c.apply(*b)));
      }
  }
}

TEST_CASE("active backend is one of the available ones") {
  const Backend& a = homog::kernels::active();
  bool found = false;
  for (const Backend* b : homog::kernels::available())
    found = found || b == &a;
  CHECK(found);
}
