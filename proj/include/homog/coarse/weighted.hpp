#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "homog/coarse/solution.hpp"
#include "homog/rng.hpp"

namespace homog::coarse {

/// Level weights alpha_l = sum_{j>=l} alpha_tilde_j E_LL / E_jj, built to
/// equilibrate the per-level terms of the systematic error bound.
std::vector<double> choose_weights(const std::vector<double>& E_diag,
                                   const std::vector<double>& alpha_tilde);

/// Mesh size and RVE accuracy of the single-level comparator matched to the
/// weighted estimator's systematic error: H_hat = sum (alpha_l -
/// alpha_{l+1}) H_l and likewise for delta, with alpha_{L+1} = 0.
struct SystematicMatch {
  double H_hat = 0.0;
  double delta_hat = 0.0;
};

SystematicMatch systematic_match(const std::vector<double>& alpha,
                                 const std::vector<double>& H,
                                 const std::vector<double>& delta);

/// Statistical sample counts M_l = C (alpha_l (H_l + delta_l) / (gamma_l
/// (H_hat + delta_hat)))^2 for l >= 2, with the (H + delta) factor dropped
/// at l = 1 where the estimator is a plain mean. Rounded up, clamped
/// non-increasing.
std::vector<long long> choose_weighted_M(const std::vector<double>& alpha,
                                         const std::vector<double>& H,
                                         const std::vector<double>& delta,
                                         double H_hat, double delta_hat,
                                         const std::vector<double>& gamma,
                                         double c_scale);

struct WeightedPlan {
  std::vector<double> alpha;
  std::vector<long long> M;  // non-increasing; M_{L+1} = 0 implicitly
  std::vector<double> gamma;
  std::vector<double> E_diag;
};

/// Apparent coefficient A*(x) from the RVE hierarchy level rve_level, for
/// the realization the seeds identify. The estimator calls this exactly once
/// per (realization, vertex of the level's grid) and reuses the value on
/// every coarser grid, so callers may instrument it to audit RVE work.
using RveCoefficient =
    std::function<double(int rve_level, double x, const SeedPair&)>;

struct WeightedSolveReport {
  SolutionField weighted;  // weighted estimator, on the finest grid
  SolutionField plain;     // same samples folded as the standard estimator
  long long rve_evaluations = 0;
  std::vector<long long> block_sizes;  // M_j - M_{j+1}
};

/// Weighted estimator sum_l alpha_l E*_{M_l}(u_l - u_{l-1}) on the 1D
/// Neumann problem. Realizations are partitioned into blocks: sample i with
/// M_{j+1} <= i < M_j carries the RVE accuracy of level j, its coefficient
/// is evaluated at the vertices of grid H_j (a superset of every coarser
/// grid's vertices), and it appears in the level-l term for every l <= j.
/// The report also carries the plain fold (alpha dropped, level terms
/// accumulated in sample order) over the identical solves, which the
/// telescoping identity says must agree with the weighted fold at
/// alpha = 1.
WeightedSolveReport weighted_mlmc_solution(
    const RveCoefficient& rve_value, const WeightedPlan& plan,
    const std::vector<CoarseGrid>& grids, const std::function<double(double)>& f,
    std::uint64_t stream_id, std::uint64_t seed_base, int threads);

struct ClassicSolveReport {
  SolutionField value;
  long long rve_evaluations = 0;
};

/// Standard solution-level MLMC: level l pairs grid H_l with RVE level l for
/// all of its M_l realizations, so unlike the weighted scheme every level
/// difference pays for its own RVE evaluations at both of its levels.
ClassicSolveReport classic_mlmc_solution_1d(
    const RveCoefficient& rve_value, const std::vector<long long>& M,
    const std::vector<CoarseGrid>& grids, const std::function<double(double)>& f,
    std::uint64_t stream_id, std::uint64_t seed_base, int threads);

struct WorkRatios {
  double rve_ratio = 0.0;     // W_rve(weighted) / W_rve(single-level MC)
  double coarse_ratio = 0.0;  // same for the coarse-solve work
};

/// Cost study for the geometric hierarchy eta_l = 2^{l-L} with gamma_l =
/// 1/L, constant base weights normalized to alpha_1 = 1, per-level accuracy
/// split delta_l = (epsilon/eta_l)^{beta/2} and H_l = delta_l, and RVE point
/// counts N_l = H_l^{-2}. Sample counts stay real-valued so the scale
/// constant cancels from both ratios.
WorkRatios weighted_work_ratios(int L, double beta, double epsilon);

}  // namespace homog::coarse
