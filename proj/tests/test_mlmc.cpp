#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <mutex>
#include <set>
#include <vector>

#include "doctest.h"
#include "homog/errors.hpp"
#include "homog/mlmc/estimator.hpp"
#include "homog/mlmc/plan.hpp"
#include "homog/mlmc/stats.hpp"
#include "homog/rng.hpp"

using namespace homog;
using mlmc::Coupling;
using mlmc::EstimatorOptions;
using mlmc::LevelPlan;

namespace {

LevelPlan literal(std::vector<double> eta, std::vector<long long> m,
                  double epsilon = 1.0) {
  LevelPlan p;
  p.eta = std::move(eta);
  p.m = std::move(m);
  p.epsilon = epsilon;
  p.raw.assign(p.m.begin(), p.m.end());
  p.alpha.assign(p.eta.size(), 1.0 / static_cast<double>(p.eta.size()));
  return p;
}

}  // namespace

TEST_CASE("plan_samples reproduces the classic ladders") {
  const auto p1 = mlmc::plan_samples(1.0, 1.0, {100.0, 200.0, 400.0}, {},
                                     std::nullopt, 400);
  CHECK(p1.m == std::vector<long long>{1600, 800, 400});

  const auto p2 = mlmc::plan_samples(2.0, 1.0, {100.0, 200.0, 400.0}, {},
                                     std::nullopt, 50);
  CHECK(p2.m == std::vector<long long>{800, 200, 50});

  // With a second moment the coarsest level becomes a plain-mean budget.
  const auto p3 = mlmc::plan_samples(2.0, 0.05, {0.125, 0.25, 0.5}, {},
                                     2.0, 10);
  // raw_1 pre-scaling: 2 (0.5/0.05)^2 / (1/3)^2 = 1800; levels 2, 3 give
  // (0.5/0.125)^2 * 9 = 144 and (0.5/0.25)^2 * 9 = 36.
  CHECK(p3.raw[0] / p3.raw[2] == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(p3.raw[1] / p3.raw[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(p3.m[2] == 10);
  CHECK(p3.m[0] == 500);
  CHECK(p3.m[1] == 40);

  CHECK_THROWS_AS(
      mlmc::plan_samples(1.0, 1.0, {200.0, 100.0}, {}, std::nullopt, 4),
      ParameterError);
}

TEST_CASE("equal cost mc sample count") {
  const auto plan = literal({100.0, 200.0, 400.0}, {1600, 800, 400});
  CHECK(mlmc::equal_cost_mc_samples(plan, 1) == 1200);
  // d = 2 weights coarse levels less: 1600/16 + 800/4 + 400 = 700.
  CHECK(mlmc::equal_cost_mc_samples(plan, 2) == 700);
}

TEST_CASE("cost model is exactly neutral for a single level") {
  const auto plan = literal({0.5}, {37}, 0.05);
  const auto c = mlmc::cost_model(plan, 2);
  CHECK(c.w_mlmc == c.w_mc);
}

TEST_CASE("pilot moments") {
  const auto m = mlmc::pilot_moments({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.second == doctest::Approx(7.5));
  CHECK(m.variance == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("telescoping is exact for deterministic level values") {
  const auto plan = literal({1.0, 2.0, 4.0}, {32, 16, 8});
  const auto sampler = [](int level, const SeedPair&) {
    return 3.0 + std::pow(0.5, level);
  };
  const auto out = mlmc::mlmc_expect(sampler, plan, {});
  CHECK(out.value == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(out.level_variances[1] == 0.0);
  CHECK(out.level_variances[2] == 0.0);
  CHECK(out.samples_used == std::vector<long long>{32, 16, 8});
}

TEST_CASE("shared coupling cancels level-independent noise") {
  const auto plan = literal({1.0, 2.0}, {64, 16});
  // Noise quantized to 1/16 steps so that adding the level index is exact
  // and the fine/coarse difference carries no rounding residue.
  const auto sampler = [](int level, const SeedPair& s) {
    const double u = std::floor(16.0 * rng::macro_uniform(s, 0)) / 16.0;
    return static_cast<double>(level) + u;
  };
  const auto out = mlmc::mlmc_expect(sampler, plan, {});
  // The difference term sees identical noise on both levels, so its sample
  // variance vanishes identically.
  CHECK(out.level_variances[1] == 0.0);
  CHECK(out.level_contributions[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("estimator value is invariant in the thread count") {
  const auto plan = literal({1.0, 2.0, 4.0}, {500, 100, 20});
  const auto sampler = [](int level, const SeedPair& s) {
    return 1.0 + 0.1 * level + rng::micro_uniform(s, static_cast<std::uint64_t>(level));
  };
  EstimatorOptions o1;
  o1.seed_base = 7;
  o1.stream_id = 5;
  EstimatorOptions o8 = o1;
  o8.threads = 8;
  const auto a = mlmc::mlmc_expect(sampler, plan, o1);
  const auto b = mlmc::mlmc_expect(sampler, plan, o8);
  CHECK(a.value == b.value);
  CHECK(a.level_variances == b.level_variances);

  const auto mc_sampler = [](const SeedPair& s) {
    return rng::micro_uniform(s, 0);
  };
  const auto ma = mlmc::mc_expect(mc_sampler, 1000, 1.0, o1);
  const auto mb = mlmc::mc_expect(mc_sampler, 1000, 1.0, o8);
  CHECK(ma.value == mb.value);
}

TEST_CASE("independent coupling uses disjoint realization blocks") {
  const auto plan = literal({1.0, 2.0, 4.0}, {40, 10, 4});

  std::mutex mu;
  std::vector<std::set<std::uint64_t>> seen(3);
  long long calls = 0;
  const auto sampler = [&](int level, const SeedPair& s) {
    std::lock_guard<std::mutex> lock(mu);
    seen[static_cast<std::size_t>(level)].insert(s.macro_seed);
    ++calls;
    return rng::macro_uniform(s, static_cast<std::uint64_t>(level));
  };

  EstimatorOptions opts;
  opts.coupling = Coupling::Independent;
  const auto out = mlmc::mlmc_expect(sampler, plan, opts);
  CHECK(out.samples_used == std::vector<long long>{30, 6, 4});
  // Level term l evaluates its block at levels l and l-1, so the seed sets
  // overlap only between a term and its own coarse half.
  CHECK(calls == 30 + 2 * 6 + 2 * 4);
  CHECK(seen[0].size() == 36);  // term 1 block prefix plus term 2's coarse half
  for (std::uint64_t s = 10; s < 40; ++s) CHECK(seen[0].count(s) == 1);
  for (std::uint64_t s = 4; s < 10; ++s) CHECK(seen[1].count(s) == 1);
  for (std::uint64_t s = 0; s < 4; ++s) CHECK(seen[2].count(s) == 1);

  const auto flat = literal({1.0, 2.0}, {8, 8});
  CHECK_THROWS_AS(mlmc::mlmc_expect(sampler, flat, opts), ParameterError);
}

TEST_CASE("mc_expect averages and prices its samples") {
  EstimatorOptions opts;
  opts.seed_base = 100;
  opts.stream_id = 9;
  const auto out = mlmc::mc_expect(
      [](const SeedPair& s) { return rng::macro_uniform(s, 0); }, 4000, 2.5,
      opts);
  CHECK(out.cost == doctest::Approx(10000.0));
  CHECK(out.value == doctest::Approx(0.5).epsilon(0.03));
  CHECK(out.level_variances[0] == doctest::Approx(1.0 / 12.0).epsilon(0.1));
}

TEST_CASE("two point correlation multiplies the probe values") {
  const auto plan = literal({1.0, 2.0}, {16, 4});
  const auto out = mlmc::two_point_correlation(
      [](int, const SeedPair&) { return std::make_pair(3.0, 0.5); }, plan, {});
  CHECK(out.value == doctest::Approx(1.5).epsilon(1e-14));

  EstimatorOptions opts;
  opts.coupling = Coupling::Independent;
  CHECK_THROWS_AS(mlmc::two_point_correlation(
                      [](int, const SeedPair&) { return std::make_pair(1.0, 1.0); },
                      plan, opts),
                  ParameterError);
}

TEST_CASE("estimator input guards") {
  CHECK_THROWS_AS(mlmc::mlmc_expect(nullptr, literal({1.0}, {4}), {}),
                  ParameterError);
  CHECK_THROWS_AS(
      mlmc::mlmc_expect([](int, const SeedPair&) { return 0.0; },
                        literal({1.0, 2.0}, {4}), {}),
      ParameterError);
  CHECK_THROWS_AS(
      mlmc::mlmc_expect([](int, const SeedPair&) { return 0.0; },
                        literal({1.0, 2.0}, {4, 8}), {}),
      ParameterError);
  CHECK_THROWS_AS(mlmc::mc_expect(nullptr, 4, 1.0), ParameterError);
  CHECK_THROWS_AS(
      mlmc::mc_expect([](const SeedPair&) { return 0.0; }, 0, 1.0),
      ParameterError);
}

TEST_CASE("score_squared_errors matches the hand formula") {
  const std::vector<double> sq{1.0, 2.0, 3.0, 6.0};
  const auto st = mlmc::score_squared_errors(sq);
  CHECK(st.relative_mse == doctest::Approx(3.0));
  // Sample variance 14/3; half-width 1.96 sqrt(14/12).
  const double half = 1.96 * std::sqrt(14.0 / 12.0);
  CHECK(st.ci_low == doctest::Approx(3.0 - half).epsilon(1e-12));
  CHECK(st.ci_high == doctest::Approx(3.0 + half).epsilon(1e-12));
  CHECK(st.nb == 4);
  CHECK_THROWS_AS(mlmc::score_squared_errors({1.0}), ParameterError);
}

TEST_CASE("repeat_and_score wires seeds and normalizes errors") {
  // Experiment returns ref (1 + seed_base / 1000), so the squared relative
  // error of repetition b is (b stride / 1000)^2.
  const auto st = mlmc::repeat_and_score(
      [](std::uint64_t seed_base) {
        return 2.0 * (1.0 + static_cast<double>(seed_base) / 1000.0);
      },
      2.0, 4, 10, 2);
  // squares: 0, 1e-4, 4e-4, 9e-4; mean 3.5e-4
  CHECK(st.relative_mse == doctest::Approx(3.5e-4).epsilon(1e-12));
  CHECK_THROWS_AS(mlmc::repeat_and_score([](std::uint64_t) { return 1.0; },
                                         0.0, 4, 10),
                  ParameterError);
}

TEST_CASE("estimator variance follows the 1/(12 M) law") {
  const int reps = 2000;
  const long long M = 25;
  std::vector<double> vals;
  vals.reserve(reps);
  for (int b = 0; b < reps; ++b) {
    EstimatorOptions opts;
    opts.seed_base = static_cast<std::uint64_t>(b) * 1000;
    opts.stream_id = 77;
    vals.push_back(mlmc::mc_expect(
                       [](const SeedPair& s) { return rng::micro_uniform(s, 0); },
                       M, 1.0, opts)
                       .value);
  }
  double mean = 0.0;
  for (double v : vals) mean += v / reps;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean) / (reps - 1);
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / (12.0 * M)).epsilon(0.15));
}
