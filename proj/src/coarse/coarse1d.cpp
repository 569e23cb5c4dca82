#include "homog/coarse/coarse1d.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog::coarse {
namespace {

// Simpson increment of f over [a, b].
double simpson(const std::function<double(double)>& f, double a, double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

}  // namespace

std::vector<double> neumann_cell_integrals(const std::function<double(double)>& f,
                                           const CoarseGrid& grid) {
  if (grid.d != 1) throw ParameterError("the Neumann solver is one-dimensional");
  const int n = grid.cells_per_dim();

  // F = int_0^t f accumulated over 16 pieces per cell, so the outer Simpson
  // rule (8 subintervals per cell) has F available at its panel midpoints.
  const int pieces = 16;
  const double w = grid.H / pieces;
  std::vector<double> fint(static_cast<std::size_t>(n), 0.0);
  std::vector<double> fcum(static_cast<std::size_t>(pieces) + 1, 0.0);
  double F0 = 0.0;  // F at the left edge of the current cell
  for (int c = 0; c < n; ++c) {
    const double x0 = c * grid.H;
    fcum[0] = F0;
    for (int p = 0; p < pieces; ++p)
      fcum[static_cast<std::size_t>(p) + 1] =
          fcum[static_cast<std::size_t>(p)] + simpson(f, x0 + p * w, x0 + (p + 1) * w);
    double cell = 0.0;
    for (int p = 0; p < pieces; p += 2)
      cell += (2.0 * w) / 6.0 *
              (fcum[static_cast<std::size_t>(p)] +
               4.0 * fcum[static_cast<std::size_t>(p) + 1] +
               fcum[static_cast<std::size_t>(p) + 2]);
    fint[static_cast<std::size_t>(c)] = cell;
    F0 = fcum[static_cast<std::size_t>(pieces)];
  }
  if (std::fabs(F0) > 1e-10)
    throw CompatibilityError("source does not integrate to zero over (0,1)");
  return fint;
}

SolutionField solve_coarse_1d_neumann(const std::vector<double>& coefficient,
                                      const std::function<double(double)>& f,
                                      const CoarseGrid& grid) {
  const int n = grid.cells_per_dim();
  if (coefficient.size() != static_cast<std::size_t>(n))
    throw ParameterError("coefficient size does not match the grid");
  for (double a : coefficient)
    if (!(a > 0.0)) throw CoercivityError("non-positive coarse coefficient");

  const std::vector<double> fint = neumann_cell_integrals(f, grid);
  SolutionField u;
  u.grid = grid;
  u.values.resize(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int c = 0; c < n; ++c) {
    acc += fint[static_cast<std::size_t>(c)] / coefficient[static_cast<std::size_t>(c)];
    u.values[static_cast<std::size_t>(c)] = acc;
  }
  return u;
}

}  // namespace homog::coarse
