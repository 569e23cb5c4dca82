#pragma once

#include <functional>
#include <vector>

#include "homog/coarse/solution.hpp"

namespace homog::coarse {

/// -div(a grad u) = f on (0,1)^2 with homogeneous Dirichlet data, solved by
/// the same cell-centered scheme the RVE problems use. coefficient holds one
/// value per cell (row-major); f is evaluated at cell centers.
SolutionField solve_coarse_2d(const std::vector<double>& coefficient,
                              const std::function<double(double, double)>& f,
                              const CoarseGrid& grid, double tol = 1e-10);

}  // namespace homog::coarse
