#include <cmath>

#include "exp_common.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/coarse/transfer.hpp"
#include "homog/coarse/weighted.hpp"
#include "homog/csv.hpp"
#include "homog/mlmc/stats.hpp"
#include "homog/parallel.hpp"

namespace homog::cli {

namespace {

// Closed-form apparent coefficient of the 1D RVE problem on [0, b]. The
// microstructure enters through an oscillatory boundary term that decays
// like eps / b, so larger RVEs approach the linear-in-x limit profile
// 1 / (C (1 + exp(5 omega)) x). Realizations draw omega, omega' ~ U[1/2, 1]
// from the macro seed, identically on every level.
struct RveClosedForm {
  double C = 2.0 * std::exp(1.0);
  double eps = 0.0;
  std::vector<double> b;  // RVE right endpoints per level

  double inverse(int level, double x, const SeedPair& seeds) const {
    const double omega = 0.5 + 0.5 * rng::macro_uniform(seeds, 0);
    const double omega_p = 0.5 + 0.5 * rng::macro_uniform(seeds, 1);
    const double w = omega * omega_p;
    const double bl = b[static_cast<std::size_t>(level)];
    const double boundary =
        (1.0 / bl) * (eps / w) *
        (std::exp((1.0 + x) * w * std::sin(bl / eps)) -
         std::exp((1.0 + x) * w * std::sin(0.0)));
    return C * (1.0 + std::exp(5.0 * omega)) * x + boundary;
  }
};

// E(u_infinity) at the right vertex of every cell of the finest grid:
// script-C times (x e^x - e^x - (e-1) x^3/3 - x^2/2 + 1).
coarse::SolutionField reference_field(const coarse::CoarseGrid& grid, double C) {
  const double e = std::exp(1.0);
  const double script_c =
      C * (1.0 + 0.4 * (std::exp(5.0) - std::exp(2.5)));
  coarse::SolutionField ref;
  ref.grid = grid;
  const int n = grid.cells_per_dim();
  for (int c = 0; c < n; ++c) {
    const double x = (c + 1) * grid.H;
    ref.values.push_back(script_c * (x * std::exp(x) - std::exp(x) -
                                     (e - 1.0) * x * x * x / 3.0 -
                                     x * x / 2.0 + 1.0));
  }
  return ref;
}

std::string plot_body() {
  return R"(#!/usr/bin/env python3
"""Plots the per-repetition relative solution errors."""
import csv
import matplotlib.pyplot as plt

with open("errors.csv") as f:
    reps = list(csv.DictReader(f))
idx = [int(r["rep_index"]) for r in reps]
mlmc = [float(r["e_mlmc"]) for r in reps]
mc = [float(r["e_mc"]) for r in reps]

fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(idx, mc, ".", label="MC", alpha=0.6)
ax.plot(idx, mlmc, ".", label="MLMC", alpha=0.6)
ax.set_xlabel("repetition")
ax.set_ylabel("relative L2 error")
ax.legend()
fig.tight_layout()
fig.savefig("errors.png", dpi=150)
print("wrote errors.png")
)";
}

}  // namespace

void run_solution1d(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const std::size_t L = cfg.H.size();
  std::vector<coarse::CoarseGrid> grids;
  for (std::size_t l = 0; l < L; ++l)
    grids.push_back(coarse::make_coarse_grid(cfg.H[l], 1, static_cast<int>(l)));

  RveClosedForm closed;
  closed.eps = cfg.epsilon > 0.0 ? cfg.epsilon : cfg.eta.front() / 100.0;
  closed.b = cfg.eta;

  const coarse::RveCoefficient rve = [&](int level, double x,
                                         const SeedPair& seeds) {
    const double inv = closed.inverse(level, x, seeds);
    if (!(inv > 0.0))
      throw CoercivityError("closed-form coefficient lost positivity");
    return 1.0 / inv;
  };
  const auto f = [](double x) { return std::exp(x) - (std::exp(1.0) - 1.0); };
  const coarse::SolutionField ref = reference_field(grids.back(), closed.C);

  // Equal work: one realization on level l pays for N_l coarse cells and an
  // RVE of size eta_l, so the single-level budget is the eta * N weighted sum.
  double work = 0.0;
  for (std::size_t l = 0; l < L; ++l)
    work += static_cast<double>(cfg.M[l]) * cfg.eta[l] / cfg.H[l];
  const long long M_hat = static_cast<long long>(
      std::ceil(work / (cfg.eta.back() / cfg.H.back())));

  std::vector<double> e_mlmc(static_cast<std::size_t>(cfg.nb));
  std::vector<double> e_mc(static_cast<std::size_t>(cfg.nb));
  coarse::SolutionField shown;
  long long rve_evals_mlmc = 0, rve_evals_mc = 0;

  const std::vector<coarse::CoarseGrid> grid_mc{grids.back()};
  const coarse::RveCoefficient rve_mc = [&](int, double x, const SeedPair& s) {
    return rve(static_cast<int>(L) - 1, x, s);
  };

  parallel_for(static_cast<std::size_t>(cfg.nb), cfg.threads,
               [&](std::size_t b) {
    const std::uint64_t seed0 = cfg.base_seed + b * kRepStride;
    const auto est = coarse::classic_mlmc_solution_1d(rve, cfg.M, grids, f,
                                                      kStreamMlmc, seed0, 1);
    const auto mc = coarse::classic_mlmc_solution_1d(rve_mc, {M_hat}, grid_mc,
                                                     f, kStreamMc, seed0, 1);
    e_mlmc[b] = coarse::l2_relative_error(est.value, ref);
    e_mc[b] = coarse::l2_relative_error(mc.value, ref);
    if (b == 0) {
      shown = est.value;
      rve_evals_mlmc = est.rve_evaluations;
      rve_evals_mc = mc.rve_evaluations;
    }
  });

  std::vector<std::vector<std::string>> rows;
  for (int b = 0; b < cfg.nb; ++b)
    rows.push_back({std::to_string(b),
                    fmt_double(e_mlmc[static_cast<std::size_t>(b)]),
                    fmt_double(e_mc[static_cast<std::size_t>(b)])});
  out.csv("errors.csv", "rep_index,e_mlmc,e_mc", rows);

  std::vector<std::vector<std::string>> sol_rows, ref_rows;
  for (int c = 0; c < shown.grid.cells_per_dim(); ++c) {
    const double x = (c + 0.5) * shown.grid.H;
    sol_rows.push_back({fmt_double(x), fmt_double(0.0),
                        fmt_double(shown.values[static_cast<std::size_t>(c)])});
    ref_rows.push_back({fmt_double(x), fmt_double(0.0),
                        fmt_double(ref.values[static_cast<std::size_t>(c)])});
  }
  out.csv("solution.csv", "x1,x2,value", sol_rows);
  out.csv("reference.csv", "x1,x2,value", ref_rows);
  out.script("plot.py", plot_body());

  double mean_mlmc = 0.0, mean_mc = 0.0;
  for (int b = 0; b < cfg.nb; ++b) {
    mean_mlmc += e_mlmc[static_cast<std::size_t>(b)] / cfg.nb;
    mean_mc += e_mc[static_cast<std::size_t>(b)] / cfg.nb;
  }
  out.derived()["M_hat"] = M_hat;
  out.derived()["epsilon_used"] = closed.eps;
  out.derived()["mean_e_mlmc"] = mean_mlmc;
  out.derived()["mean_e_mc"] = mean_mc;
  out.derived()["error_ratio"] = mean_mlmc / mean_mc;
  out.derived()["rve_evaluations"] = {{"mlmc", rve_evals_mlmc},
                                      {"mc", rve_evals_mc}};
  std::printf("solution-1d: mean e_mlmc %.4g, mean e_mc %.4g, ratio %.3g\n",
              mean_mlmc, mean_mc, mean_mlmc / mean_mc);
}

}  // namespace homog::cli
