#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "homog/coarse/coarse1d.hpp"
#include "homog/coarse/coarse2d.hpp"
#include "homog/coarse/transfer.hpp"
#include "homog/coarse/weighted.hpp"
#include "homog/errors.hpp"
#include "homog/rates/rates.hpp"
#include "homog/rng.hpp"

using namespace homog;
using coarse::CoarseGrid;
using coarse::make_coarse_grid;
using coarse::SolutionField;

TEST_CASE("coarse grid construction guards") {
  CHECK_THROWS_AS(make_coarse_grid(0.3, 1), ParameterError);
  CHECK_THROWS_AS(make_coarse_grid(2.0, 2), ParameterError);
  CHECK_THROWS_AS(make_coarse_grid(0.25, 3), ParameterError);
  CHECK(make_coarse_grid(0.125, 2).cell_count() == 64);
}

TEST_CASE("1d neumann solve hits the analytic vertex values") {
  const double pi = std::numbers::pi;
  const auto f = [&](double x) { return pi * pi * std::cos(pi * x); };
  const auto grid = make_coarse_grid(1.0 / 16.0, 1);
  const std::vector<double> one(16, 1.0);
  const auto u = coarse::solve_coarse_1d_neumann(one, f, grid);

  REQUIRE(u.values.size() == 16);
  for (int c = 0; c < 16; ++c) {
    const double x = (c + 1) * grid.H;
    CHECK(u.values[static_cast<std::size_t>(c)] ==
          doctest::Approx(1.0 - std::cos(pi * x)).epsilon(1e-9));
  }

  // Halving the coefficient doubles the solution.
  const std::vector<double> half(16, 0.5);
  const auto u2 = coarse::solve_coarse_1d_neumann(half, f, grid);
  CHECK(u2.values[7] == doctest::Approx(2.0 * u.values[7]).epsilon(1e-12));

  CHECK_THROWS_AS(
      coarse::neumann_cell_integrals([](double) { return 1.0; }, grid),
      CompatibilityError);
  const std::vector<double> bad(16, -1.0);
  CHECK_THROWS_AS(coarse::solve_coarse_1d_neumann(bad, f, grid),
                  CoercivityError);
}

TEST_CASE("2d dirichlet coarse solve converges to the manufactured field") {
  const double pi = std::numbers::pi;
  const auto f = [&](double x, double y) {
    return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
  };
  double errs[2];
  int k = 0;
  for (double H : {1.0 / 16.0, 1.0 / 32.0}) {
    const auto grid = make_coarse_grid(H, 2);
    const std::vector<double> one(grid.cell_count(), 1.0);
    const auto u = coarse::solve_coarse_2d(one, f, grid);

    const int n = grid.cells_per_dim();
    double e2 = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double want =
            std::sin(pi * (ix + 0.5) * H) * std::sin(pi * (iy + 0.5) * H);
        const double d = u.values[static_cast<std::size_t>(iy) * n + ix] - want;
        e2 += d * d * H * H;
      }
    errs[k++] = std::sqrt(e2);
  }
  CHECK(errs[1] < 3e-3);
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("grid transfer copies down and averages up") {
  SolutionField u;
  u.grid = make_coarse_grid(0.5, 1, 0);
  u.values = {1.0, 3.0};

  const auto fine = coarse::grid_transfer(u, make_coarse_grid(0.25, 1, 1));
  CHECK(fine.values == std::vector<double>{1.0, 1.0, 3.0, 3.0});

  // Round trip back to the original grid is exact.
  const auto back = coarse::grid_transfer(fine, u.grid);
  CHECK(back.values == u.values);

  SolutionField v;
  v.grid = make_coarse_grid(0.25, 1, 1);
  v.values = {1.0, 2.0, 5.0, 7.0};
  const auto coarse_v = coarse::grid_transfer(v, u.grid);
  CHECK(coarse_v.values[0] == doctest::Approx(1.5));
  CHECK(coarse_v.values[1] == doctest::Approx(6.0));

  SolutionField w;
  w.grid = make_coarse_grid(1.0 / 3.0, 1, 0);
  w.values = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(coarse::grid_transfer(w, make_coarse_grid(0.5, 1)),
                  StructureError);

  CHECK(coarse::l2_relative_error(u, u) == 0.0);
  SolutionField scaled = u;
  for (double& x : scaled.values) x *= 1.1;
  CHECK(coarse::l2_relative_error(scaled, u) == doctest::Approx(0.1));
}

TEST_CASE("weight construction follows the error-equilibration formulas") {
  // Equal per-level errors with flat base weights count the remaining tail.
  const auto alpha = coarse::choose_weights({2.0, 2.0, 2.0}, {1.0, 1.0, 1.0});
  REQUIRE(alpha.size() == 3);
  CHECK(alpha[0] == doctest::Approx(3.0));
  CHECK(alpha[1] == doctest::Approx(2.0));
  CHECK(alpha[2] == doctest::Approx(1.0));

  const auto match = coarse::systematic_match({1.0, 0.5}, {0.3, 0.1},
                                              {0.2, 0.05});
  CHECK(match.H_hat == doctest::Approx(0.5 * 0.3 + 0.5 * 0.1));
  CHECK(match.delta_hat == doctest::Approx(0.5 * 0.2 + 0.5 * 0.05));

  const auto M = coarse::choose_weighted_M({1.0, 0.5}, {0.3, 0.1},
                                           {0.2, 0.05}, 0.2, 0.125,
                                           {0.5, 0.5}, 1.0);
  REQUIRE(M.size() == 2);
  // M_1 = ceil((1 / (0.5 * 0.325))^2) = ceil(37.87) = 38; the level-2 count
  // ceil((0.5 * 0.15 / (0.5 * 0.325))^2) = 1.
  CHECK(M[0] == 38);
  CHECK(M[1] == 1);
}

TEST_CASE("weighted work ratios match the frozen study values") {
  const auto r1 = coarse::weighted_work_ratios(1, 2.0, 0.1);
  CHECK(r1.rve_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r1.coarse_ratio == doctest::Approx(1.0).epsilon(1e-12));

  const auto r2 = coarse::weighted_work_ratios(2, 2.0, 0.05);
  CHECK(r2.rve_ratio == doctest::Approx(0.842798353909465).epsilon(1e-12));
  CHECK(r2.coarse_ratio == doctest::Approx(1.80938271604938).epsilon(1e-12));

  const auto r3 = coarse::weighted_work_ratios(3, 2.0, 0.025);
  CHECK(r3.rve_ratio == doctest::Approx(0.396569456603966).epsilon(1e-12));
  CHECK(r3.coarse_ratio == doctest::Approx(1.72323198667222).epsilon(1e-12));

  const auto r4 = coarse::weighted_work_ratios(4, 2.0, 0.0125);
  CHECK(r4.rve_ratio == doctest::Approx(0.177783255967078).epsilon(1e-12));
  CHECK(r4.coarse_ratio == doctest::Approx(1.21949550617284).epsilon(1e-12));

  CHECK_THROWS_AS(coarse::weighted_work_ratios(3, 2.0, 0.5), ParameterError);
  CHECK_THROWS_AS(coarse::weighted_work_ratios(0, 2.0, 0.01), ParameterError);
}

TEST_CASE("weighted solve audits its coefficient evaluations") {
  const std::vector<CoarseGrid> grids{make_coarse_grid(0.25, 1, 0),
                                      make_coarse_grid(0.125, 1, 1),
                                      make_coarse_grid(0.0625, 1, 2)};
  coarse::WeightedPlan plan;
  plan.alpha = {1.0, 1.0, 1.0};
  plan.M = {16, 4, 1};
  const auto f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };

  std::atomic<long long> calls{0};
  const auto rve = [&](int level, double x, const SeedPair& s) {
    calls.fetch_add(1, std::memory_order_relaxed);
    return 2.0 + std::sin(3.0 * x + level) +
           0.5 * rng::macro_uniform(s, static_cast<std::uint64_t>(level));
  };

  const auto report =
      coarse::weighted_mlmc_solution(rve, plan, grids, f, 11, 100, 2);
  CHECK(report.block_sizes == std::vector<long long>{12, 3, 1});
  const long long expect = 12 * 4 + 3 * 8 + 1 * 16;
  CHECK(report.rve_evaluations == expect);
  CHECK(calls.load() == expect);

  // With unit weights the weighted fold and the plain fold are the same sum
  // in a different order.
  REQUIRE(report.weighted.values.size() == report.plain.values.size());
  for (std::size_t i = 0; i < report.weighted.values.size(); ++i)
    CHECK(report.weighted.values[i] ==
          doctest::Approx(report.plain.values[i]).epsilon(1e-12));
}

TEST_CASE("classic solution estimator pays per-level coefficient costs") {
  const std::vector<CoarseGrid> grids{make_coarse_grid(0.25, 1, 0),
                                      make_coarse_grid(0.125, 1, 1)};
  const auto f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
  std::atomic<long long> calls{0};
  const auto rve = [&](int level, double x, const SeedPair& s) {
    calls.fetch_add(1, std::memory_order_relaxed);
    return 1.5 + 0.25 * std::cos(x + level) + 0.1 * rng::macro_uniform(s, 0);
  };

  const auto report = coarse::classic_mlmc_solution_1d(rve, {6, 2}, grids, f,
                                                       12, 500, 1);
  // Level 1: 6 realizations on the 4-vertex grid. Level 2: 2 realizations
  // solved on both the 8- and 4-vertex grids.
  CHECK(report.rve_evaluations == 6 * 4 + 2 * (8 + 4));
  CHECK(calls.load() == report.rve_evaluations);
  CHECK(report.value.grid.cells_per_dim() == 8);
}

TEST_CASE("rate regression recovers exact synthetic decay") {
  const std::vector<double> eta{0.0625, 0.125, 0.25, 0.5};
  const double eps = 0.01, beta = 0.8, ln_c = -0.3;
  std::vector<std::vector<double>> squares;
  for (double e : eta) {
    const double q = std::exp(ln_c) * std::pow(eps / e, beta);
    squares.push_back({q, q});
  }
  const auto est = rates::estimate_beta_from_squares(squares, eta, eps);
  CHECK(std::fabs(est.beta - beta) < 1e-12);
  CHECK(std::fabs(est.ln_c - ln_c) < 1e-12);
  CHECK(est.stderr_beta < 1e-10);
  REQUIRE(est.points.size() == 4);
  CHECK(est.points[0].x == doctest::Approx(std::log(eps / eta[0])));

  // Scalar deviations route through the same fit.
  std::vector<std::vector<double>> samples;
  for (double e : eta) {
    const double dev = std::exp(0.5 * ln_c) * std::pow(eps / e, beta / 2.0);
    samples.push_back({1.0 + dev, 1.0 - dev});
  }
  const auto est2 = rates::estimate_beta(samples, 1.0, eta, eps);
  CHECK(std::fabs(est2.beta - beta) < 1e-12);

  CHECK(rates::pooled_reference({{1.0, 3.0}, {5.0}}) == doctest::Approx(3.5));
}

TEST_CASE("rate regression guards") {
  CHECK_THROWS_AS(
      rates::estimate_beta_from_squares({{1.0}}, {0.5}, 0.01),
      ParameterError);
  CHECK_THROWS_AS(
      rates::estimate_beta_from_squares({{1.0}, {1.0}}, {0.5, 0.25}, 0.01),
      ParameterError);
  CHECK_THROWS_AS(
      rates::estimate_beta_from_squares({{0.0}, {0.0}}, {0.25, 0.5}, 0.01),
      NumericalError);
  CHECK_THROWS_AS(
      rates::estimate_beta_from_squares({{1.0}, {1.0}}, {0.25, 0.5}, -1.0),
      ParameterError);
  CHECK_THROWS_AS(rates::pooled_reference({}), ParameterError);
}
