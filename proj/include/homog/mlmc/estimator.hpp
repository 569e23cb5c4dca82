#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homog/mlmc/plan.hpp"
#include "homog/rng.hpp"

namespace homog::mlmc {

enum class Coupling {
  Shared,       // every level difference reuses the same realizations
  Independent,  // disjoint realization blocks; level l keeps m_l - m_{l+1}
};

struct EstimatorOptions {
  Coupling coupling = Coupling::Shared;
  std::uint64_t stream_id = 0;
  std::uint64_t seed_base = 0;  // realization j maps to seeds seed_base + j
  int threads = 1;
  int cost_exponent = 1;  // d in the per-sample work (eta_l / epsilon)^d
};

struct EstimatorOutput {
  double value = 0.0;
  std::vector<double> level_contributions;
  std::vector<double> level_variances;
  std::vector<long long> samples_used;
  double cost = 0.0;
};

/// Quantity of interest evaluated at one level for one realization. Must be
/// deterministic in (level, seeds); level is a 0-based index into plan.eta.
using LevelSampler = std::function<double(int level, const SeedPair& seeds)>;

/// Multilevel estimate of E[X_L] via telescoped level differences. Shared
/// coupling reuses realization j across the two levels of each difference
/// and across level terms; Independent requires strictly decreasing m and
/// gives each level the block of realizations the next finer one releases.
/// Sums and variances accumulate in realization order, so the output is
/// identical for any thread count.
EstimatorOutput mlmc_expect(const LevelSampler& sampler, const LevelPlan& plan,
                            const EstimatorOptions& opts);

/// Single-level arithmetic mean over m_hat realizations; cost is
/// m_hat * cost_per_sample.
EstimatorOutput mc_expect(const std::function<double(const SeedPair&)>& sampler,
                          long long m_hat, double cost_per_sample,
                          const EstimatorOptions& opts = {});

/// Tensor entries at two probe points for one realization.
using PairSampler =
    std::function<std::pair<double, double>(int level, const SeedPair& seeds)>;

/// Multilevel two-point correlation: per level the non-centered product mean
/// of the two entries, telescoped over levels. Shared coupling only.
EstimatorOutput two_point_correlation(const PairSampler& sampler,
                                      const LevelPlan& plan,
                                      const EstimatorOptions& opts);

}  // namespace homog::mlmc
