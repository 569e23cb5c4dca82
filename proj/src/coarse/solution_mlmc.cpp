#include "homog/coarse/solution_mlmc.hpp"

#include <cmath>

#include "homog/coarse/coarse2d.hpp"
#include "homog/coarse/transfer.hpp"
#include "homog/errors.hpp"
#include "homog/parallel.hpp"

namespace homog::coarse {
namespace {

void check_levels(const std::vector<SeparableLevelSpec>& levels) {
  if (levels.empty()) throw ParameterError("solution estimator needs levels");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (levels[l].grid.d != 2)
      throw ParameterError("the separable solution estimator is two-dimensional");
    if (!(levels[l].micro_mean > 0.0))
      throw CoercivityError("non-positive micro factor");
    if (!(levels[l].weight > 0.0))
      throw ParameterError("level weights must be positive");
    if (levels[l].m_macro < 1) throw ParameterError("empty level");
    if (l > 0) {
      if (levels[l].grid.cells_per_dim() <= levels[l - 1].grid.cells_per_dim())
        throw StructureError("coarse grids must refine along the hierarchy");
      if (levels[l].m_macro > levels[l - 1].m_macro)
        throw ParameterError("macro sample counts must be non-increasing");
    }
  }
}

std::vector<double> scaled_coeff(const MacroFieldSampler& macro,
                                 const CoarseGrid& grid, const SeedPair& seeds,
                                 double micro_mean) {
  std::vector<double> a = macro(grid, seeds);
  if (a.size() != grid.cell_count())
    throw StructureError("macro sampler returned a wrong-sized field");
  for (double& v : a) v *= micro_mean;
  return a;
}

double l2_norm(const SolutionField& u) {
  double s = 0.0;
  for (double v : u.values) s += v * v;
  return std::sqrt(s * u.grid.cell_volume());
}

}  // namespace

SolutionEstimate mlmc_solution_separable(
    const MacroFieldSampler& macro, const std::vector<SeparableLevelSpec>& levels,
    const std::function<double(double, double)>& f, std::uint64_t stream_id,
    std::uint64_t seed_base, int threads) {
  check_levels(levels);
  if (threads < 1) threads = 1;
  const std::size_t L = levels.size();
  const CoarseGrid& finest = levels[L - 1].grid;

  SolutionEstimate out;
  out.value.grid = finest;
  out.value.values.assign(finest.cell_count(), 0.0);
  out.value.rve_level = static_cast<int>(L) - 1;
  out.value.mesh_level = static_cast<int>(L) - 1;

  for (std::size_t l = 0; l < L; ++l) {
    const long long m = levels[l].m_macro;
    const CoarseGrid& grid = levels[l].grid;
    std::vector<std::vector<double>> diffs(static_cast<std::size_t>(m));
    parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t k) {
      const std::uint64_t s = seed_base + static_cast<std::uint64_t>(k);
      const SeedPair seeds{s, s, stream_id};
      SolutionField fine = solve_coarse_2d(
          scaled_coeff(macro, grid, seeds, levels[l].micro_mean), f, grid);
      if (l > 0) {
        const SolutionField coarse = solve_coarse_2d(
            scaled_coeff(macro, levels[l - 1].grid, seeds,
                         levels[l - 1].micro_mean),
            f, levels[l - 1].grid);
        const SolutionField up = grid_transfer(coarse, grid);
        for (std::size_t c = 0; c < fine.values.size(); ++c)
          fine.values[c] -= up.values[c];
      }
      diffs[k] = std::move(fine.values);
    });

    SolutionField mean;
    mean.grid = grid;
    mean.values.assign(grid.cell_count(), 0.0);
    for (long long k = 0; k < m; ++k)
      for (std::size_t c = 0; c < mean.values.size(); ++c)
        mean.values[c] += diffs[static_cast<std::size_t>(k)][c];
    for (double& v : mean.values)
      v *= levels[l].weight / static_cast<double>(m);

    const SolutionField up = grid_transfer(mean, finest);
    for (std::size_t c = 0; c < out.value.values.size(); ++c)
      out.value.values[c] += up.values[c];

    out.level_norms.push_back(l2_norm(up));
    out.samples_used.push_back(m);
    const double dof = static_cast<double>(grid.cell_count());
    out.cost += static_cast<double>(m) * dof;
  }
  return out;
}

SolutionEstimate mc_solution(const MacroFieldSampler& macro,
                             const SeparableLevelSpec& level,
                             const std::function<double(double, double)>& f,
                             std::uint64_t stream_id, std::uint64_t seed_base,
                             int threads) {
  return mlmc_solution_separable(macro, {level}, f, stream_id, seed_base,
                                 threads);
}

SolutionField pooled_solution_reference(
    const MacroFieldSampler& macro, const std::vector<SeparableLevelSpec>& levels,
    const std::function<double(double, double)>& f, std::uint64_t stream_id,
    std::uint64_t seed_base, int threads) {
  check_levels(levels);
  if (threads < 1) threads = 1;
  const std::size_t L = levels.size();
  const CoarseGrid& finest = levels[L - 1].grid;

  SolutionField ref;
  ref.grid = finest;
  ref.values.assign(finest.cell_count(), 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const long long m = levels[l].m_macro;
    const CoarseGrid& grid = levels[l].grid;
    std::vector<std::vector<double>> sols(static_cast<std::size_t>(m));
    parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t k) {
      const std::uint64_t s = seed_base + static_cast<std::uint64_t>(k);
      const SeedPair seeds{s, s, stream_id};
      sols[k] = solve_coarse_2d(
                    scaled_coeff(macro, grid, seeds, levels[l].micro_mean), f, grid)
                    .values;
    });
    SolutionField mean;
    mean.grid = grid;
    mean.values.assign(grid.cell_count(), 0.0);
    for (long long k = 0; k < m; ++k)
      for (std::size_t c = 0; c < mean.values.size(); ++c)
        mean.values[c] += sols[static_cast<std::size_t>(k)][c];
    for (double& v : mean.values) v /= static_cast<double>(m);
    const SolutionField up = grid_transfer(mean, finest);
    for (std::size_t c = 0; c < ref.values.size(); ++c)
      ref.values[c] += up.values[c] / static_cast<double>(L);
  }
  return ref;
}

}  // namespace homog::coarse
