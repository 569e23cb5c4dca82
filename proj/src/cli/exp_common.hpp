#pragma once

// Internal helpers shared by the experiment runners; not installed.

#include <cmath>
#include <string>

#include "homog/cell/fv.hpp"
#include "homog/cell/tensor.hpp"
#include "homog/cli/config.hpp"
#include "homog/errors.hpp"
#include "homog/grid.hpp"
#include "homog/mlmc/plan.hpp"

namespace homog::cli {

inline cell::CorrectorBc parse_bc(const std::string& name) {
  if (name == "dirichlet-linear") return cell::CorrectorBc::DirichletLinear;
  if (name == "dirichlet-noflow") return cell::CorrectorBc::DirichletNoFlow;
  throw ConfigError("config.bc: unknown boundary condition '" + name + "'");
}

inline cell::TensorForm parse_form(const std::string& name) {
  if (name == "flux") return cell::TensorForm::FluxAverage;
  if (name == "energy") return cell::TensorForm::EnergyAverage;
  throw ConfigError("config.tensor_form: unknown form '" + name + "'");
}

struct MicroTensor {
  cell::HomogenizedTensor tensor;
  double residual = 0.0;
};

/// Apparent tensor of one RVE realization: both correctors plus the
/// averaging step, with the worse of the two solver residuals attached.
inline MicroTensor micro_apparent(const ScalarFieldSample& field,
                                  cell::CorrectorBc bc, cell::TensorForm form) {
  std::vector<cell::CellSolution> chi;
  chi.push_back(cell::solve_corrector(field, 0, bc));
  if (field.grid.dim == 2) chi.push_back(cell::solve_corrector(field, 1, bc));
  MicroTensor out;
  out.tensor = cell::apparent_tensor(field, chi, form);
  for (const auto& c : chi) out.residual = std::max(out.residual, c.rel_residual);
  return out;
}

/// Wraps explicit per-level sample counts from a config into the plan
/// shape the estimator and the equal-cost formulas consume.
inline mlmc::LevelPlan literal_plan(const ExperimentConfig& cfg,
                                    double eps_eff) {
  mlmc::LevelPlan p;
  p.eta = cfg.eta;
  p.m = cfg.m;
  p.beta = cfg.beta;
  p.epsilon = eps_eff;
  p.alpha.assign(cfg.eta.size(), 1.0 / static_cast<double>(cfg.eta.size()));
  p.raw.assign(cfg.m.begin(), cfg.m.end());
  return p;
}

/// Cells per axis when `extent` is tiled by cells of size h (must divide).
inline int cells_for(double extent, double h) {
  const double r = extent / h;
  const int n = static_cast<int>(std::lround(r));
  if (n < 1 || std::fabs(r - n) > 1e-9 * r)
    throw ParameterError("mesh size does not tile the requested extent");
  return n;
}

}  // namespace homog::cli
