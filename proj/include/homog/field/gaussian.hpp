#pragma once

#include <cstdint>
#include <vector>

#include "homog/grid.hpp"
#include "homog/rng.hpp"

namespace homog::field {

/// Squared-exponential covariance cov(x, x') =
/// sigma^2 exp(-|x - x'|^2 / corr_len^2) around a constant mean.
struct CovarianceSpec {
  double sigma = 1.0;
  double corr_len = 1.0;
  double mean = 0.0;

  bool operator==(const CovarianceSpec&) const = default;
};

double covariance(const CovarianceSpec& spec, double dx, double dy = 0.0);

/// Truncated Karhunen-Loeve decomposition of the covariance operator on a
/// fixed grid: Nystrom discretization at cell centers with cell-measure
/// weights, eigenpairs of the weighted kernel matrix, modes L2-orthonormal.
/// Retained eigenvalues are positive, non-increasing, and cut at
/// mode_tolerance relative to the largest.
struct KlDecomposition {
  GridSpec grid;
  CovarianceSpec spec;
  double mode_tolerance = 1e-4;
  std::vector<double> eigenvalues;
  std::vector<double> modes;  // mode_count() rows of grid.cell_count() values

  std::size_t mode_count() const { return eigenvalues.size(); }
};

std::uint64_t covariance_spec_hash(const CovarianceSpec& spec,
                                   double mode_tolerance);
std::uint64_t grid_hash(const GridSpec& grid);

/// Samples a stationary Gaussian field on a fixed master grid. Level
/// coupling contract: a sample on any sub-window is the cellwise
/// restriction of this sampler's master realization for the same SeedPair
/// (the master realization is synthesized once and cropped), so nested RVEs
/// driven by one seed agree exactly where they overlap. Samplers built on
/// different master grids use different expansions and do not couple.
class GaussianFieldSampler {
 public:
  GaussianFieldSampler(CovarianceSpec spec, GridSpec master,
                       double mode_tolerance = 1e-4);
  explicit GaussianFieldSampler(KlDecomposition precomputed);

  const KlDecomposition& decomposition() const { return kl_; }
  ScalarFieldSample sample(const SeedPair& seed) const;
  ScalarFieldSample sample_on(const SubBox& box, const SeedPair& seed) const;

 private:
  KlDecomposition kl_;
  std::vector<double> scale_;  // sqrt of retained eigenvalues
};

/// exp(K) for a zero-mean Gaussian log-field K.
class LognormalFieldSampler {
 public:
  LognormalFieldSampler(CovarianceSpec log_spec, GridSpec master,
                        double mode_tolerance = 1e-4);

  const GaussianFieldSampler& log_field() const { return g_; }
  ScalarFieldSample sample(const SeedPair& seed) const;
  ScalarFieldSample sample_on(const SubBox& box, const SeedPair& seed) const;

 private:
  GaussianFieldSampler g_;
};

}  // namespace homog::field
