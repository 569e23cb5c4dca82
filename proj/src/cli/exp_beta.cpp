#include <cmath>

#include "exp_common.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/csv.hpp"
#include "homog/field/gaussian.hpp"
#include "homog/parallel.hpp"
#include "homog/rates/rates.hpp"

namespace homog::cli {

namespace {

std::string plot_body() {
  return R"py(#!/usr/bin/env python3
"""Plots the rate-regression points, their error bars and the fitted line."""
import csv
import matplotlib.pyplot as plt

with open("points.csv") as f:
    pts = list(csv.DictReader(f))
with open("fit.csv") as f:
    fit = next(csv.DictReader(f))

x = [float(p["x"]) for p in pts]
y = [float(p["y"]) for p in pts]
bar = [float(p["bar"]) for p in pts]
beta, lnc = float(fit["beta"]), float(fit["ln_c"])

fig, ax = plt.subplots(figsize=(6, 4))
ax.errorbar(x, y, yerr=bar, fmt="o", capsize=3, label="levels")
xs = [min(x), max(x)]
ax.plot(xs, [lnc + beta * v for v in xs], "-",
        label=f"slope {beta:.3f}, intercept {lnc:.3f}")
ax.set_xlabel("ln(eps / eta)")
ax.set_ylabel("ln mean squared deviation")
ax.legend()
fig.tight_layout()
fig.savefig("rates.png", dpi=150)
print("wrote rates.png")
)py";
}

// Mean-square Frobenius deviations of per-level apparent tensors from the
// level-pooled reference tensor, the 2D analogue of the scalar pipeline.
std::vector<std::vector<double>> field_squares(const ExperimentConfig& cfg,
                                               nlohmann::json& derived) {
  const int L = static_cast<int>(cfg.eta.size());
  const auto bc = parse_bc(cfg.bc);
  const auto form = parse_form(cfg.tensor_form);
  const field::CovarianceSpec spec{cfg.sigma, cfg.corr_len, cfg.field_mean};

  std::vector<std::vector<cell::HomogenizedTensor>> tensors(
      static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    const int n = cells_for(cfg.eta[static_cast<std::size_t>(l)], cfg.micro_h);
    const GridSpec grid = make_grid_2d(0.0, 0.0, n, n, cfg.micro_h);
    const field::GaussianFieldSampler sampler(spec, grid);
    auto& level = tensors[static_cast<std::size_t>(l)];
    level.resize(static_cast<std::size_t>(cfg.m[static_cast<std::size_t>(l)]));
    parallel_for(level.size(), cfg.threads, [&](std::size_t j) {
      const std::uint64_t s = cfg.base_seed +
                              static_cast<std::uint64_t>(l) * kLevelStride +
                              static_cast<std::uint64_t>(j);
      level[j] = micro_apparent(sampler.sample(SeedPair{s, s, kStreamMlmc}),
                                bc, form)
                     .tensor;
    });
  }

  double ref[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (const auto& level : tensors) {
    double mean[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (const auto& t : level)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) mean[a][b] += t.e[a][b];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        ref[a][b] += mean[a][b] / static_cast<double>(level.size()) / L;
  }
  derived["reference_tensor"] = {{ref[0][0], ref[0][1]},
                                 {ref[1][0], ref[1][1]}};

  std::vector<std::vector<double>> squares(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    auto& sq = squares[static_cast<std::size_t>(l)];
    for (const auto& t : tensors[static_cast<std::size_t>(l)]) {
      double f2 = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double d = t.e[a][b] - ref[a][b];
          f2 += d * d;
        }
      sq.push_back(f2);
    }
  }
  return squares;
}

}  // namespace

void run_beta(const ExperimentConfig& cfg, ArtifactWriter& out) {
  const int L = static_cast<int>(cfg.eta.size());
  double eps = cfg.epsilon;
  std::vector<long long> counts;

  std::vector<std::vector<double>> squares;
  if (cfg.synthetic) {
    // Noiseless power-law targets: every sample on level l carries exactly
    // the prescribed mean square, so the regression must return the inputs.
    for (int l = 0; l < L; ++l) {
      const double q = std::exp(cfg.ln_c) *
                       std::pow(eps / cfg.eta[static_cast<std::size_t>(l)],
                                cfg.beta);
      squares.push_back({q, q});
      counts.push_back(2);
    }
  } else {
    if (!(eps > 0.0)) eps = cfg.corr_len / std::sqrt(2.0);
    squares = field_squares(cfg, out.derived());
    counts = cfg.m;
  }

  const rates::RateEstimate est =
      rates::estimate_beta_from_squares(squares, cfg.eta, eps);

  std::vector<std::vector<std::string>> point_rows;
  for (int l = 0; l < L; ++l) {
    const auto& p = est.points[static_cast<std::size_t>(l)];
    point_rows.push_back({std::to_string(l + 1),
                          fmt_double(cfg.eta[static_cast<std::size_t>(l)]),
                          std::to_string(counts[static_cast<std::size_t>(l)]),
                          fmt_double(p.x), fmt_double(p.y), fmt_double(p.bar)});
  }
  out.csv("points.csv", "level,eta,m,x,y,bar", point_rows);
  out.csv("fit.csv", "beta,ln_c,stderr_beta",
          {{fmt_double(est.beta), fmt_double(est.ln_c),
            fmt_double(est.stderr_beta)}});
  out.script("plot.py", plot_body());

  out.derived()["epsilon_used"] = eps;
  out.derived()["beta"] = est.beta;
  out.derived()["ln_c"] = est.ln_c;
  out.derived()["stderr_beta"] = est.stderr_beta;
  if (cfg.synthetic) {
    out.derived()["target_beta"] = cfg.beta;
    out.derived()["target_ln_c"] = cfg.ln_c;
  }
  std::printf("estimate-beta: beta %.6g, lnC %.6g, stderr %.3g\n", est.beta,
              est.ln_c, est.stderr_beta);
}

}  // namespace homog::cli
