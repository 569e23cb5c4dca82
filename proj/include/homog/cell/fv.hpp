#pragma once

#include <vector>

#include "homog/grid.hpp"

namespace homog::cell {

enum class CorrectorBc {
  DirichletLinear,  // chi_d = y_d on the whole RVE boundary
  DirichletNoFlow,  // chi_d = y_d on faces normal to e_d, zero flux elsewhere
};

/// Cell-centered two-point flux operator on an nx-by-ny lattice. Coupling
/// coefficients use harmonic face averaging of the cell coefficients;
/// Dirichlet data is eliminated through ghost values at half-cell distance
/// (its transmissibility lands on the diagonal, its data on the rhs).
struct StructuredOperator {
  int nx = 1, ny = 1;
  double h = 1.0;
  int dim = 1;
  std::vector<double> diag, tw, te, ts, tn;
  std::vector<double> rhs;

  std::size_t size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
};

StructuredOperator assemble_corrector(const ScalarFieldSample& coeff,
                                      int direction, CorrectorBc bc);

/// -div(A grad u) = f with homogeneous Dirichlet data; f_cells holds the
/// cell-centered source values (scaled by cell volume during assembly).
StructuredOperator assemble_dirichlet_poisson(const ScalarFieldSample& coeff,
                                              const std::vector<double>& f_cells);

struct SolveStats {
  double rel_residual = 0.0;
  int iterations = 0;
};

/// Jacobi-preconditioned conjugate gradients. max_iter == 0 selects the
/// default cap 50 sqrt(n) + 1000. Throws SolverError (with the residual
/// tail) when the cap is hit, ParameterError for tolerances outside
/// (0, 1e-4].
SolveStats pcg_solve(const StructuredOperator& op, std::vector<double>& x,
                     double tol, int max_iter = 0);

struct CellSolution {
  int direction = 0;
  CorrectorBc bc = CorrectorBc::DirichletLinear;
  GridSpec grid;
  std::vector<double> values;
  double rel_residual = 0.0;
  int iterations = 0;
};

CellSolution solve_corrector(const ScalarFieldSample& coeff, int direction,
                             CorrectorBc bc, double tol = 1e-10);

}  // namespace homog::cell
