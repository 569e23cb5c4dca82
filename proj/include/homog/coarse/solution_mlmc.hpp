#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homog/coarse/solution.hpp"
#include "homog/rng.hpp"

namespace homog::coarse {

/// Per-cell values of the macroscopic factor for one realization, evaluated
/// on the requested grid. Must be deterministic in the seeds so the same
/// realization can be re-evaluated on the neighbouring coarser grid.
using MacroFieldSampler =
    std::function<std::vector<double>(const CoarseGrid&, const SeedPair&)>;

/// One level of the separable-coefficient solution estimator: coarse grid
/// H_l, the scalar micro factor E_{m_l}(B*_l) already averaged over its RVE
/// samples, and the macro realization count M_l.
struct SeparableLevelSpec {
  CoarseGrid grid;
  double micro_mean = 1.0;
  long long m_macro = 1;
  // Weight applied to this level's difference term. All ones is the plain
  // telescope whose mean is the finest-level solution; weights decaying by
  // 1/L per level make the estimator target the level-pooled mean instead,
  // which is also what pooled_solution_reference computes.
  double weight = 1.0;
};

struct SolutionEstimate {
  SolutionField value;  // weighted level sum on the finest grid
  std::vector<double> level_norms;
  std::vector<long long> samples_used;
  double cost = 0.0;  // degrees of freedom in the per-level fine solves
};

/// Telescoped solution estimate: per level the mean over M_l realizations
/// of u(H_l, micro_mean_l) - u(H_{l-1}, micro_mean_{l-1}), both solved with
/// the same macro draw and differenced on H_l after constant prolongation,
/// then scaled by that level's weight before summation. Unit weights target
/// E[u_L]; weights alpha_l = (L-l+1)/L target the level-pooled mean.
/// Realization k maps to seeds seed_base + k at every level, so differences
/// couple and the level sums are thread-count invariant.
SolutionEstimate mlmc_solution_separable(
    const MacroFieldSampler& macro, const std::vector<SeparableLevelSpec>& levels,
    const std::function<double(double, double)>& f, std::uint64_t stream_id,
    std::uint64_t seed_base, int threads);

/// Single-level comparator on the same seed convention.
SolutionEstimate mc_solution(const MacroFieldSampler& macro,
                             const SeparableLevelSpec& level,
                             const std::function<double(double, double)>& f,
                             std::uint64_t stream_id, std::uint64_t seed_base,
                             int threads);

/// Level-pooled reference: mean over levels of the per-level mean solution,
/// everything prolonged to the finest grid first.
SolutionField pooled_solution_reference(
    const MacroFieldSampler& macro, const std::vector<SeparableLevelSpec>& levels,
    const std::function<double(double, double)>& f, std::uint64_t stream_id,
    std::uint64_t seed_base, int threads);

}  // namespace homog::coarse
