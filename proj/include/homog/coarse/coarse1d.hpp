#pragma once

#include <functional>
#include <vector>

#include "homog/coarse/solution.hpp"

namespace homog::coarse {

/// Solves (A* u')' = f on (0,1) with u'(0) = u'(1) = 0 and the anchor
/// u(0) = 0, which requires the compatibility condition int_0^1 f = 0
/// (checked to 1e-10). The solution is the cumulative piecewise-constant
/// formula u_i = sum_{j<=i} A_j^{-1} int_{x_{j-1}}^{x_j} F with
/// F(t) = int_0^t f; both integrals use composite Simpson with 8
/// subintervals per cell. coefficient holds one A* value per cell.
SolutionField solve_coarse_1d_neumann(const std::vector<double>& coefficient,
                                      const std::function<double(double)>& f,
                                      const CoarseGrid& grid);

/// The per-cell integrals int_{x_{j-1}}^{x_j} F the solver consumes,
/// exposed so multi-realization estimators can quadrature f once per grid.
/// Also enforces the compatibility condition.
std::vector<double> neumann_cell_integrals(const std::function<double(double)>& f,
                                           const CoarseGrid& grid);

}  // namespace homog::coarse
