#include "homog/field/gaussian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "homog/kernels/kernels.hpp"

namespace homog::field {

double covariance(const CovarianceSpec& spec, double dx, double dy) {
  const double r2 = dx * dx + dy * dy;
  return spec.sigma * spec.sigma *
         std::exp(-r2 / (spec.corr_len * spec.corr_len));
}

namespace {

std::uint64_t fnv_accumulate(std::uint64_t h, const void* data,
                             std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

template <typename T>
std::uint64_t fnv_value(std::uint64_t h, const T& v) {
  return fnv_accumulate(h, &v, sizeof v);
}

struct Factor1d {
  std::vector<double> lambda;           // descending, positive
  std::vector<std::vector<double>> v;   // unit eigenvectors, length n
};

// Nystrom factor along one axis: eigenpairs of h * C with C_ij =
// cov(x_i - x_j). For the squared-exponential kernel on a tensor grid the
// full 2D Nystrom matrix is the Kronecker product of the axis factors, so
// products of these eigenpairs are exactly its eigenpairs; this keeps the
// dense eigensolve at the axis size instead of the cell count.
Factor1d axis_factor(const CovarianceSpec& spec, int n, double h) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double c = h * covariance(spec, (i - j) * h, 0.0);
      m(i, j) = c;
      m(j, i) = c;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalError("covariance eigendecomposition failed");
  Factor1d f;
  // Eigen returns ascending order; flip and drop non-positive values
  // (roundoff tails of a positive-definite kernel).
  for (int k = n - 1; k >= 0; --k) {
    const double lam = solver.eigenvalues()(k);
    if (lam <= 0.0) break;
    f.lambda.push_back(lam);
    std::vector<double> vec(n);
    for (int i = 0; i < n; ++i) vec[i] = solver.eigenvectors()(i, k);
    f.v.push_back(std::move(vec));
  }
  if (f.lambda.empty())
    throw NumericalError("covariance matrix has no positive eigenvalues");
  return f;
}

KlDecomposition build_decomposition(const CovarianceSpec& spec,
                                    const GridSpec& grid, double tol) {
  if (spec.sigma <= 0 || spec.corr_len <= 0)
    throw ParameterError("covariance: need sigma > 0 and corr_len > 0");
  if (!(tol > 0.0 && tol < 1.0))
    throw ParameterError("mode tolerance must lie in (0, 1)");
  if (grid.h > 0.5 * spec.corr_len)
    throw ResolutionError(
        "grid spacing exceeds half the correlation length; refine the grid");

  KlDecomposition kl;
  kl.grid = grid;
  kl.spec = spec;
  kl.mode_tolerance = tol;

  const std::size_t n = grid.cell_count();
  if (grid.dim == 1) {
    const Factor1d f = axis_factor(spec, grid.cells[0], grid.h);
    const double cut = tol * f.lambda[0];
    const double inv_sqrt_h = 1.0 / std::sqrt(grid.h);
    for (std::size_t k = 0; k < f.lambda.size(); ++k) {
      if (f.lambda[k] < cut) break;
      kl.eigenvalues.push_back(f.lambda[k]);
      for (std::size_t c = 0; c < n; ++c)
        kl.modes.push_back(f.v[k][c] * inv_sqrt_h);
    }
    return kl;
  }

  // The sigma^2 prefactor belongs to the product once, not to each axis.
  CovarianceSpec ax = spec;
  ax.sigma = 1.0;
  const Factor1d fx = axis_factor(ax, grid.cells[0], grid.h);
  const Factor1d fy = axis_factor(ax, grid.cells[1], grid.h);
  const double s2 = spec.sigma * spec.sigma;

  struct ModeRef {
    double lambda;
    int i, j;
  };
  std::vector<ModeRef> refs;
  const double lmax = s2 * fx.lambda[0] * fy.lambda[0];
  const double cut = tol * lmax;
  for (std::size_t i = 0; i < fx.lambda.size(); ++i) {
    if (s2 * fx.lambda[i] * fy.lambda[0] < cut) break;
    for (std::size_t j = 0; j < fy.lambda.size(); ++j) {
      const double lam = s2 * fx.lambda[i] * fy.lambda[j];
      if (lam < cut) break;
      refs.push_back({lam, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(refs.begin(), refs.end(), [](const ModeRef& a, const ModeRef& b) {
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  const int nx = grid.cells[0], ny = grid.cells[1];
  const double inv_h = 1.0 / grid.h;  // 1/sqrt(h*h)
  kl.eigenvalues.reserve(refs.size());
  kl.modes.reserve(refs.size() * n);
  for (const ModeRef& m : refs) {
    kl.eigenvalues.push_back(m.lambda);
    const std::vector<double>& vx = fx.v[m.i];
    const std::vector<double>& vy = fy.v[m.j];
    for (int iy = 0; iy < ny; ++iy) {
      const double vyv = vy[iy] * inv_h;
      for (int ix = 0; ix < nx; ++ix) kl.modes.push_back(vx[ix] * vyv);
    }
  }
  return kl;
}

}  // namespace

std::uint64_t covariance_spec_hash(const CovarianceSpec& spec,
                                   double mode_tolerance) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv_value(h, spec.sigma);
  h = fnv_value(h, spec.corr_len);
  h = fnv_value(h, spec.mean);
  h = fnv_value(h, mode_tolerance);
  return h;
}

std::uint64_t grid_hash(const GridSpec& grid) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv_value(h, grid.origin[0]);
  h = fnv_value(h, grid.origin[1]);
  h = fnv_value(h, grid.cells[0]);
  h = fnv_value(h, grid.cells[1]);
  h = fnv_value(h, grid.h);
  h = fnv_value(h, grid.dim);
  return h;
}

GaussianFieldSampler::GaussianFieldSampler(CovarianceSpec spec, GridSpec master,
                                           double mode_tolerance)
    : kl_(build_decomposition(spec, master, mode_tolerance)) {
  scale_.resize(kl_.mode_count());
  for (std::size_t k = 0; k < scale_.size(); ++k)
    scale_[k] = std::sqrt(kl_.eigenvalues[k]);
}

GaussianFieldSampler::GaussianFieldSampler(KlDecomposition precomputed)
    : kl_(std::move(precomputed)) {
  if (kl_.modes.size() != kl_.mode_count() * kl_.grid.cell_count())
    throw ParameterError("KL decomposition: mode array size mismatch");
  scale_.resize(kl_.mode_count());
  for (std::size_t k = 0; k < scale_.size(); ++k) {
    if (kl_.eigenvalues[k] <= 0.0)
      throw ParameterError("KL decomposition: non-positive eigenvalue");
    scale_[k] = std::sqrt(kl_.eigenvalues[k]);
  }
}

ScalarFieldSample GaussianFieldSampler::sample(const SeedPair& seed) const {
  const std::size_t n = kl_.grid.cell_count();
  ScalarFieldSample out;
  out.grid = kl_.grid;
  out.values.assign(n, kl_.spec.mean);
  for (std::size_t k = 0; k < kl_.mode_count(); ++k) {
    const double c = scale_[k] * rng::micro_gaussian(seed, k);
    kernels::axpy(c, kl_.modes.data() + k * n, out.values.data(), n);
  }
  return out;
}

ScalarFieldSample GaussianFieldSampler::sample_on(const SubBox& box,
                                                  const SeedPair& seed) const {
  return crop(sample(seed), box);
}

LognormalFieldSampler::LognormalFieldSampler(CovarianceSpec log_spec,
                                             GridSpec master,
                                             double mode_tolerance)
    : g_(log_spec, master, mode_tolerance) {
  if (log_spec.mean != 0.0)
    throw ParameterError("lognormal field: log-mean must be zero");
}

ScalarFieldSample LognormalFieldSampler::sample(const SeedPair& seed) const {
  ScalarFieldSample s = g_.sample(seed);
  for (double& v : s.values) v = std::exp(v);
  return s;
}

ScalarFieldSample LognormalFieldSampler::sample_on(const SubBox& box,
                                                   const SeedPair& seed) const {
  ScalarFieldSample s = g_.sample_on(box, seed);
  for (double& v : s.values) v = std::exp(v);
  return s;
}

}  // namespace homog::field
