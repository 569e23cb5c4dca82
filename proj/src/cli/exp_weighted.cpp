#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "homog/cli/experiments.hpp"
#include "homog/coarse/weighted.hpp"
#include "homog/csv.hpp"
#include "homog/mlmc/plan.hpp"

namespace homog::cli {

namespace {

std::string plot_body() {
  return R"(#!/usr/bin/env python3
"""Plots MLMC/MC cost ratios against the number of levels."""
import csv
from collections import defaultdict
import matplotlib.pyplot as plt

by_beta = defaultdict(list)
with open("cost_ratios.csv") as f:
    for r in csv.DictReader(f):
        by_beta[r["beta"]].append((int(r["levels"]), float(r["ratio"])))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for beta, pts in sorted(by_beta.items()):
    pts.sort()
    ax1.plot([p[0] for p in pts], [p[1] for p in pts], "o-",
             label=f"beta={beta}")
ax1.axhline(1.0, color="gray", lw=0.8)
ax1.set_xlabel("levels")
ax1.set_ylabel("W_mlmc / W_mc")
ax1.set_yscale("log")
ax1.legend()

with open("weighted_ratios.csv") as f:
    rows = list(csv.DictReader(f))
ax2.plot([int(r["levels"]) for r in rows],
         [float(r["rve_ratio"]) for r in rows], "o-", label="RVE work")
ax2.plot([int(r["levels"]) for r in rows],
         [float(r["coarse_ratio"]) for r in rows], "s-", label="coarse work")
ax2.axhline(1.0, color="gray", lw=0.8)
ax2.set_xlabel("levels")
ax2.set_ylabel("weighted / single-level")
ax2.legend()
fig.tight_layout()
fig.savefig("ratios.png", dpi=150)
print("wrote ratios.png")
)";
}

}  // namespace

void run_weighted_cost(const ExperimentConfig& cfg, ArtifactWriter& out) {
  // Geometric hierarchy eta_l = 2^{l-L} on equal base weights, target
  // accuracy a tenth of the coarsest RVE size. All counts stay real-valued
  // through cost_model, so the unknown variance constant cancels.
  std::vector<std::vector<std::string>> cost_rows;
  for (double beta : cfg.betas) {
    for (int L = 1; L <= cfg.max_levels; ++L) {
      std::vector<double> eta(static_cast<std::size_t>(L));
      for (int l = 0; l < L; ++l) eta[static_cast<std::size_t>(l)] =
          std::pow(2.0, static_cast<double>(l + 1 - L));
      const double eps = eta.front() / 10.0;
      const auto plan = mlmc::plan_samples(beta, eps, eta, {}, 1.0, 1);
      const auto cost = mlmc::cost_model(plan, cfg.cost_dim);
      cost_rows.push_back({fmt_double(beta), std::to_string(L),
                           fmt_double(cost.w_mlmc), fmt_double(cost.w_mc),
                           fmt_double(cost.w_mlmc / cost.w_mc)});
    }
  }
  out.csv("cost_ratios.csv", "beta,levels,w_mlmc,w_mc,ratio", cost_rows);

  // Companion study for the weighted estimator at the manifest's beta.
  std::vector<std::vector<std::string>> weighted_rows;
  for (int L = 1; L <= cfg.max_levels; ++L) {
    const double eps = std::pow(2.0, static_cast<double>(1 - L)) / 10.0;
    const auto r = coarse::weighted_work_ratios(L, cfg.beta, eps);
    weighted_rows.push_back({std::to_string(L), fmt_double(r.rve_ratio),
                             fmt_double(r.coarse_ratio)});
  }
  out.csv("weighted_ratios.csv", "levels,rve_ratio,coarse_ratio",
          weighted_rows);
  out.script("plot.py", plot_body());

  out.derived()["cost_dim"] = cfg.cost_dim;
  out.derived()["betas"] = cfg.betas;
  out.derived()["weighted_beta"] = cfg.beta;
  std::printf("weighted-cost: %zu cost rows, %d weighted rows\n",
              cost_rows.size(), cfg.max_levels);
}

}  // namespace homog::cli
