#include <cmath>
#include <functional>

#include "exp_common.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/csv.hpp"
#include "homog/errors.hpp"
#include "homog/field/analytic1d.hpp"
#include "homog/mlmc/estimator.hpp"
#include "homog/mlmc/stats.hpp"
#include "homog/parallel.hpp"

namespace homog::cli {

namespace {

// One of the three analytic microstructure families, reduced to what the
// estimator needs: the apparent coefficient on [0, eta_l] per realization,
// and the infinite-RVE reference the errors are measured against.
struct Family1d {
  std::function<double(int level, const SeedPair&)> apparent;
  double reference = 0.0;
};

Family1d make_family(const ExperimentConfig& cfg, nlohmann::json& derived) {
  Family1d out;
  if (cfg.family == "unit-interval") {
    field::UnitIntervalStationaryFamily fam({cfg.family_constant});
    std::vector<std::int64_t> ends;
    for (double e : cfg.eta) {
      if (std::fabs(e - std::round(e)) > 1e-9)
        throw ParameterError("unit-interval family needs integer RVE sizes");
      ends.push_back(static_cast<std::int64_t>(std::llround(e)));
    }
    out.apparent = [fam, ends](int level, const SeedPair& s) {
      return fam.apparent_closed_form(s, 0, ends[static_cast<std::size_t>(level)]);
    };
    out.reference = fam.apparent_reference();
    return out;
  }
  if (cfg.family == "exp-cos") {
    field::ExpCosNonSeparableFamily::Params p;
    p.C = cfg.family_constant;
    if (cfg.epsilon > 0.0) p.eps = cfg.epsilon;
    field::ExpCosNonSeparableFamily fam(p);
    const std::vector<double> eta = cfg.eta;
    out.apparent = [fam, eta](int level, const SeedPair& s) {
      const auto r = fam.realize(s);
      return fam.apparent_closed_form(r, 0.0, eta[static_cast<std::size_t>(level)]);
    };
    out.reference = fam.apparent_reference();
    return out;
  }
  // sine-separable: no closed-form expectation of the infinite-RVE limit,
  // so the reference is a deterministic Monte Carlo average of the limit
  // value 1 / (exp(omega) (C + sum_i chi_i / 2)) on its own seed stream.
  field::SineSeparableFamily::Params p;
  p.C = cfg.family_constant;
  if (cfg.epsilon > 0.0) p.eps = cfg.epsilon;
  field::SineSeparableFamily fam(p, cfg.base_seed);
  derived["frequencies"] = fam.frequencies();
  const std::vector<double> eta = cfg.eta;
  out.apparent = [fam, eta](int level, const SeedPair& s) {
    const auto r = fam.realize(s);
    return fam.apparent_closed_form(r, 0.0, eta[static_cast<std::size_t>(level)]);
  };
  const long long n_ref = cfg.reference_M;
  double acc = 0.0;
  for (long long j = 0; j < n_ref; ++j) {
    const std::uint64_t s = cfg.base_seed + static_cast<std::uint64_t>(j);
    const auto r = fam.realize({s, s, kStreamReference});
    double half_sum = 0.0;
    for (double chi : r.chi) half_sum += 0.5 * chi;
    acc += 1.0 / (std::exp(r.omega) * (cfg.family_constant + half_sum));
  }
  out.reference = acc / static_cast<double>(n_ref);
  return out;
}

std::string plot_body() {
  return R"(#!/usr/bin/env python3
"""Plots the per-repetition squared errors and the level summary."""
import csv
import matplotlib.pyplot as plt

def read(name):
    with open(name) as f:
        return list(csv.DictReader(f))

reps = read("repetitions.csv")
idx = [int(r["rep_index"]) for r in reps]
mlmc = [float(r["rel_sq_error_mlmc"]) for r in reps]
mc = [float(r["rel_sq_error_mc"]) for r in reps]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
ax1.semilogy(idx, mc, ".", label="MC", alpha=0.6)
ax1.semilogy(idx, mlmc, ".", label="MLMC", alpha=0.6)
ax1.set_xlabel("repetition")
ax1.set_ylabel("relative squared error")
ax1.legend()

levels = read("levels.csv")
ax2.bar([r["level"] for r in levels],
        [float(r["var_diff"]) for r in levels])
ax2.set_xlabel("level")
ax2.set_ylabel("difference variance")
fig.tight_layout()
fig.savefig("errors.png", dpi=150)
print("wrote errors.png")
)";
}

}  // namespace

void run_coeff1d(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const Family1d fam = make_family(cfg, out.derived());
  const double eps_eff = cfg.epsilon > 0.0 ? cfg.epsilon : 1.0;
  const mlmc::LevelPlan plan = literal_plan(cfg, eps_eff);
  const int L = plan.levels();
  const long long m_hat = mlmc::equal_cost_mc_samples(plan, 1);
  const double mc_cost = std::pow(plan.eta.back() / eps_eff, 1.0);

  const auto coupling = cfg.coupling == "independent"
                            ? mlmc::Coupling::Independent
                            : mlmc::Coupling::Shared;

  std::vector<double> sq_mlmc(static_cast<std::size_t>(cfg.nb));
  std::vector<double> sq_mc(static_cast<std::size_t>(cfg.nb));
  mlmc::EstimatorOutput shown;  // repetition 0, for the level summary
  const auto sq_rel = [&](double v) {
    const double r = (v - fam.reference) / fam.reference;
    return r * r;
  };

  parallel_for(static_cast<std::size_t>(cfg.nb), cfg.threads,
               [&](std::size_t b) {
    mlmc::EstimatorOptions opts;
    opts.coupling = coupling;
    opts.stream_id = kStreamMlmc;
    opts.seed_base = cfg.base_seed + b * kRepStride;
    opts.threads = 1;
    opts.cost_exponent = 1;
    const auto est = mlmc::mlmc_expect(fam.apparent, plan, opts);

    mlmc::EstimatorOptions mc_opts = opts;
    mc_opts.stream_id = kStreamMc;
    const auto mc = mlmc::mc_expect(
        [&](const SeedPair& s) { return fam.apparent(L - 1, s); }, m_hat,
        mc_cost, mc_opts);

    sq_mlmc[b] = sq_rel(est.value);
    sq_mc[b] = sq_rel(mc.value);
    if (b == 0) shown = est;
  });

  std::vector<std::vector<std::string>> level_rows;
  for (int l = 0; l < L; ++l) {
    const auto s = static_cast<std::size_t>(l);
    level_rows.push_back({std::to_string(l + 1), fmt_double(plan.eta[s]),
                          std::to_string(shown.samples_used[s]),
                          fmt_double(shown.level_contributions[s]),
                          fmt_double(shown.level_variances[s]),
                          fmt_double(static_cast<double>(shown.samples_used[s]) *
                                     (plan.eta[s] / eps_eff))});
  }
  out.csv("levels.csv", "level,eta,m,mean_diff,var_diff,cost", level_rows);

  std::vector<std::vector<std::string>> rep_rows;
  for (int b = 0; b < cfg.nb; ++b)
    rep_rows.push_back({std::to_string(b),
                        fmt_double(sq_mlmc[static_cast<std::size_t>(b)]),
                        fmt_double(sq_mc[static_cast<std::size_t>(b)])});
  out.csv("repetitions.csv", "rep_index,rel_sq_error_mlmc,rel_sq_error_mc",
          rep_rows);
  out.script("plot.py", plot_body());

  const auto stat_mlmc = mlmc::score_squared_errors(sq_mlmc);
  const auto stat_mc = mlmc::score_squared_errors(sq_mc);
  out.derived()["reference"] = fam.reference;
  out.derived()["m_hat"] = m_hat;
  out.derived()["mse_mlmc"] = {{"mean", stat_mlmc.relative_mse},
                               {"ci_low", stat_mlmc.ci_low},
                               {"ci_high", stat_mlmc.ci_high}};
  out.derived()["mse_mc"] = {{"mean", stat_mc.relative_mse},
                             {"ci_low", stat_mc.ci_low},
                             {"ci_high", stat_mc.ci_high}};
  out.derived()["gain"] = stat_mc.relative_mse / stat_mlmc.relative_mse;
  std::printf("coeff-1d: reference %.8g, MLMC mse %.4g, MC mse %.4g, gain %.3g\n",
              fam.reference, stat_mlmc.relative_mse, stat_mc.relative_mse,
              stat_mc.relative_mse / stat_mlmc.relative_mse);
}

}  // namespace homog::cli
