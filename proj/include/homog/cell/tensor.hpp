#pragma once

#include <array>
#include <vector>

#include "homog/cell/fv.hpp"
#include "homog/grid.hpp"

namespace homog::cell {

enum class TensorForm {
  FluxAverage,    // column d = volume average of the flux A grad chi_d
  EnergyAverage,  // entry (m, n) = volume-averaged discrete energy product
};

struct HomogenizedTensor {
  int dim = 1;
  TensorForm form = TensorForm::FluxAverage;
  std::array<std::array<double, 2>, 2> e{{{0.0, 0.0}, {0.0, 0.0}}};

  double scalar() const;  // trace / dim, the value 1D pipelines consume
};

/// Apparent tensor of one RVE realization. Expects one corrector per
/// direction, all solved on the coefficient's grid with a common boundary
/// treatment. Both forms integrate over faces: fluxes use the two-point
/// transmissibilities directly, so for the linear-data correctors the two
/// forms agree up to the solver residual.
HomogenizedTensor apparent_tensor(const ScalarFieldSample& coeff,
                                  const std::vector<CellSolution>& correctors,
                                  TensorForm form);

}  // namespace homog::cell
