#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "homog/errors.hpp"

namespace homog::coarse {

/// One member of a factor-2 nested hierarchy of meshes on the unit domain
/// (0,1)^d. H must divide the domain into an integer cell count.
struct CoarseGrid {
  double H = 1.0;
  int d = 1;
  int nested_level = 0;

  int cells_per_dim() const { return static_cast<int>(std::lround(1.0 / H)); }
  std::size_t cell_count() const {
    const auto n = static_cast<std::size_t>(cells_per_dim());
    return d == 2 ? n * n : n;
  }
  double cell_volume() const { return d == 2 ? H * H : H; }
};

inline CoarseGrid make_coarse_grid(double H, int d, int nested_level = 0) {
  if (d != 1 && d != 2) throw ParameterError("coarse grids are 1D or 2D");
  if (!(H > 0.0) || H > 1.0) throw ParameterError("mesh size must lie in (0, 1]");
  const double n = 1.0 / H;
  if (std::fabs(n - std::round(n)) > 1e-9 * n)
    throw ParameterError("mesh size must divide the unit domain evenly");
  return CoarseGrid{H, d, nested_level};
}

/// Piecewise-constant solution values, one per cell, in row-major order for
/// d = 2. rve_level / mesh_level record which (eta, H) pair produced it.
struct SolutionField {
  CoarseGrid grid;
  std::vector<double> values;
  int rve_level = 0;
  int mesh_level = 0;
};

}  // namespace homog::coarse
