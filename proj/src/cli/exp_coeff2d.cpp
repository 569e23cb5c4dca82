#include <cmath>

#include "exp_common.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/csv.hpp"
#include "homog/field/gaussian.hpp"
#include "homog/mlmc/estimator.hpp"
#include "homog/mlmc/stats.hpp"
#include "homog/parallel.hpp"
#include "homog/rates/rates.hpp"

namespace homog::cli {

namespace {

std::string plot_body() {
  return R"(#!/usr/bin/env python3
"""Plots the per-repetition squared errors of the 2D coefficient study."""
import csv
import matplotlib.pyplot as plt

with open("repetitions.csv") as f:
    reps = list(csv.DictReader(f))
idx = [int(r["rep_index"]) for r in reps]
mlmc = [float(r["rel_sq_error_mlmc"]) for r in reps]
mc = [float(r["rel_sq_error_mc"]) for r in reps]

fig, ax = plt.subplots(figsize=(7, 4))
ax.semilogy(idx, mc, ".", label="MC", alpha=0.6)
ax.semilogy(idx, mlmc, ".", label="MLMC", alpha=0.6)
ax.set_xlabel("repetition")
ax.set_ylabel("relative squared error of entry 11")
ax.legend()
fig.tight_layout()
fig.savefig("errors.png", dpi=150)
print("wrote errors.png")
)";
}

}  // namespace

void run_coeff2d(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const int L = static_cast<int>(cfg.eta.size());
  std::vector<int> cells;
  for (double e : cfg.eta) cells.push_back(cells_for(e, cfg.micro_h));
  const auto bc = parse_bc(cfg.bc);
  const auto form = parse_form(cfg.tensor_form);

  // One master field per realization covers the largest RVE; smaller RVEs
  // are corner-anchored windows of it, so levels sharing a seed see the
  // same microstructure where they overlap.
  const field::CovarianceSpec spec{cfg.sigma, cfg.corr_len, cfg.field_mean};
  const GridSpec master =
      make_grid_2d(0.0, 0.0, cells.back(), cells.back(), cfg.micro_h);
  const field::GaussianFieldSampler sampler(spec, master);

  const auto micro = [&](int level, const SeedPair& seeds) {
    SubBox box;
    box.count = {cells[static_cast<std::size_t>(level)],
                 cells[static_cast<std::size_t>(level)]};
    return micro_apparent(sampler.sample_on(box, seeds), bc, form);
  };
  const mlmc::LevelSampler entry11 = [&](int level, const SeedPair& seeds) {
    return micro(level, seeds).tensor.e[0][0];
  };

  // Pooled reference from an independent per-level sample set.
  const std::vector<long long>& m_ref = cfg.m_ref.empty() ? cfg.m : cfg.m_ref;
  if (m_ref.size() != cfg.eta.size())
    throw ConfigError("config.m_ref: length must match eta");
  std::vector<std::vector<double>> ref_samples(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    auto& vals = ref_samples[static_cast<std::size_t>(l)];
    vals.resize(static_cast<std::size_t>(m_ref[static_cast<std::size_t>(l)]));
    parallel_for(vals.size(), cfg.threads, [&](std::size_t j) {
      const std::uint64_t s = cfg.base_seed +
                              static_cast<std::uint64_t>(l) * kLevelStride +
                              static_cast<std::uint64_t>(j);
      vals[j] = entry11(l, {s, s, kStreamReference});
    });
  }
  const double reference = rates::pooled_reference(ref_samples);

  const double eps_eff = cfg.epsilon > 0.0 ? cfg.epsilon : cfg.corr_len;
  const mlmc::LevelPlan plan = literal_plan(cfg, eps_eff);
  const long long m_hat = mlmc::equal_cost_mc_samples(plan, 2);
  const double mc_cost = std::pow(plan.eta.back() / eps_eff, 2.0);
  const auto coupling = cfg.coupling == "independent"
                            ? mlmc::Coupling::Independent
                            : mlmc::Coupling::Shared;

  std::vector<double> sq_mlmc(static_cast<std::size_t>(cfg.nb));
  std::vector<double> sq_mc(static_cast<std::size_t>(cfg.nb));
  mlmc::EstimatorOutput shown;
  const auto sq_rel = [&](double v) {
    const double r = (v - reference) / reference;
    return r * r;
  };
  parallel_for(static_cast<std::size_t>(cfg.nb), cfg.threads,
               [&](std::size_t b) {
    mlmc::EstimatorOptions opts;
    opts.coupling = coupling;
    opts.stream_id = kStreamMlmc;
    opts.seed_base = cfg.base_seed + b * kRepStride;
    opts.threads = 1;
    opts.cost_exponent = 2;
    const auto est = mlmc::mlmc_expect(entry11, plan, opts);

    mlmc::EstimatorOptions mc_opts = opts;
    mc_opts.stream_id = kStreamMc;
    const auto mc = mlmc::mc_expect(
        [&](const SeedPair& s) { return entry11(L - 1, s); }, m_hat, mc_cost,
        mc_opts);

    sq_mlmc[b] = sq_rel(est.value);
    sq_mc[b] = sq_rel(mc.value);
    if (b == 0) shown = est;
  });

  std::vector<std::vector<std::string>> level_rows;
  for (int l = 0; l < L; ++l) {
    const auto s = static_cast<std::size_t>(l);
    level_rows.push_back(
        {std::to_string(l + 1), fmt_double(plan.eta[s]),
         std::to_string(shown.samples_used[s]),
         fmt_double(shown.level_contributions[s]),
         fmt_double(shown.level_variances[s]),
         fmt_double(static_cast<double>(shown.samples_used[s]) *
                    std::pow(plan.eta[s] / eps_eff, 2.0))});
  }
  out.csv("levels.csv", "level,eta,m,mean_diff,var_diff,cost", level_rows);

  std::vector<std::vector<std::string>> rep_rows;
  for (int b = 0; b < cfg.nb; ++b)
    rep_rows.push_back({std::to_string(b),
                        fmt_double(sq_mlmc[static_cast<std::size_t>(b)]),
                        fmt_double(sq_mc[static_cast<std::size_t>(b)])});
  out.csv("repetitions.csv", "rep_index,rel_sq_error_mlmc,rel_sq_error_mc",
          rep_rows);

  // Optional audit dump: the tensors repetition 0's estimator consumed.
  if (cfg.dump_samples) {
    std::vector<std::vector<std::string>> rows;
    for (int l = 0; l < L; ++l) {
      for (long long j = 0; j < cfg.m[static_cast<std::size_t>(l)]; ++j) {
        const std::uint64_t s = cfg.base_seed + static_cast<std::uint64_t>(j);
        const MicroTensor t = micro(l, {s, s, kStreamMlmc});
        rows.push_back({std::to_string(l + 1), std::to_string(j),
                        fmt_double(t.tensor.e[0][0]), fmt_double(t.tensor.e[0][1]),
                        fmt_double(t.tensor.e[1][0]), fmt_double(t.tensor.e[1][1]),
                        fmt_double(t.residual)});
      }
    }
    out.csv("samples.csv",
            "level,sample_index,entry_11,entry_12,entry_21,entry_22,residual",
            rows);
  }
  out.script("plot.py", plot_body());

  const auto stat_mlmc = mlmc::score_squared_errors(sq_mlmc);
  const auto stat_mc = mlmc::score_squared_errors(sq_mc);
  out.derived()["reference"] = reference;
  out.derived()["m_hat"] = m_hat;
  out.derived()["kl_modes"] = sampler.decomposition().mode_count();
  out.derived()["mse_mlmc"] = {{"mean", stat_mlmc.relative_mse},
                               {"ci_low", stat_mlmc.ci_low},
                               {"ci_high", stat_mlmc.ci_high}};
  out.derived()["mse_mc"] = {{"mean", stat_mc.relative_mse},
                             {"ci_low", stat_mc.ci_low},
                             {"ci_high", stat_mc.ci_high}};
  out.derived()["gain"] = stat_mc.relative_mse / stat_mlmc.relative_mse;
  std::printf("coeff-2d: reference %.8g, MLMC mse %.4g, MC mse %.4g, gain %.3g\n",
              reference, stat_mlmc.relative_mse, stat_mc.relative_mse,
              stat_mc.relative_mse / stat_mlmc.relative_mse);
}

}  // namespace homog::cli
