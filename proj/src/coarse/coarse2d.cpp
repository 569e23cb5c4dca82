#include "homog/coarse/coarse2d.hpp"

#include "homog/cell/fv.hpp"
#include "homog/errors.hpp"
#include "homog/grid.hpp"

namespace homog::coarse {

SolutionField solve_coarse_2d(const std::vector<double>& coefficient,
                              const std::function<double(double, double)>& f,
                              const CoarseGrid& grid, double tol) {
  if (grid.d != 2) throw ParameterError("the Dirichlet solver is two-dimensional");
  const int n = grid.cells_per_dim();
  ScalarFieldSample coeff;
  coeff.grid = make_grid_2d(0.0, 0.0, n, n, grid.H);
  if (coefficient.size() != coeff.grid.cell_count())
    throw ParameterError("coefficient size does not match the grid");
  coeff.values = coefficient;

  std::vector<double> f_cells(coeff.grid.cell_count());
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      f_cells[coeff.grid.flat(ix, iy)] =
          f(coeff.grid.center(0, ix), coeff.grid.center(1, iy));

  const cell::StructuredOperator op =
      cell::assemble_dirichlet_poisson(coeff, f_cells);
  SolutionField u;
  u.grid = grid;
  cell::pcg_solve(op, u.values, tol);
  return u;
}

}  // namespace homog::coarse
