#include "homog/mlmc/estimator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "homog/errors.hpp"
#include "homog/parallel.hpp"

namespace homog::mlmc {
namespace {

void check_plan(const LevelPlan& plan) {
  if (plan.levels() == 0) throw ParameterError("empty plan");
  if (plan.m.size() != plan.eta.size())
    throw ParameterError("plan sample counts do not match its level count");
  for (std::size_t l = 0; l < plan.m.size(); ++l) {
    if (plan.m[l] < 1) throw ParameterError("plan has an empty level");
    if (l > 0 && plan.m[l] > plan.m[l - 1])
      throw ParameterError("plan sample counts must be non-increasing");
  }
}

double eval_with_context(const std::function<double(int, const SeedPair&)>& v,
                         int level, const SeedPair& seeds) {
  try {
    return v(level, seeds);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("sampler failed at level " + std::to_string(level + 1) +
                ", seed " + std::to_string(seeds.macro_seed) + ": " + e.what());
  }
}

// Mean and unbiased variance folded in index order (thread-count invariant).
std::pair<double, double> mean_and_variance(const std::vector<double>& d) {
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  if (d.size() < 2) return {mean, 0.0};
  double var = 0.0;
  for (double x : d) var += (x - mean) * (x - mean);
  return {mean, var / static_cast<double>(d.size() - 1)};
}

EstimatorOutput run_estimator(const std::function<double(int, const SeedPair&)>& v,
                              const LevelPlan& plan, const EstimatorOptions& opts) {
  check_plan(plan);
  if (opts.cost_exponent < 1 || opts.cost_exponent > 3)
    throw ParameterError("cost exponent must be 1, 2, or 3");
  const int L = plan.levels();
  const int threads = opts.threads < 1 ? 1 : opts.threads;

  EstimatorOutput out;
  out.level_contributions.resize(static_cast<std::size_t>(L));
  out.level_variances.resize(static_cast<std::size_t>(L));
  out.samples_used.resize(static_cast<std::size_t>(L));

  const auto seeds_for = [&](long long j) {
    const std::uint64_t s = opts.seed_base + static_cast<std::uint64_t>(j);
    return SeedPair{s, s, opts.stream_id};
  };

  if (opts.coupling == Coupling::Shared) {
    std::vector<double> prev, cur, diff;
    for (int l = 0; l < L; ++l) {
      const long long m = plan.m[static_cast<std::size_t>(l)];
      cur.assign(static_cast<std::size_t>(m), 0.0);
      diff.assign(static_cast<std::size_t>(m), 0.0);
      parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t j) {
        const SeedPair seeds = seeds_for(static_cast<long long>(j));
        cur[j] = eval_with_context(v, l, seeds);
        diff[j] = cur[j] - (l > 0 ? prev[j] : 0.0);
      });
      const auto [mean, var] = mean_and_variance(diff);
      out.level_contributions[static_cast<std::size_t>(l)] = mean;
      out.level_variances[static_cast<std::size_t>(l)] = var;
      out.samples_used[static_cast<std::size_t>(l)] = m;
      prev = std::move(cur);
    }
  } else {
    for (int l = 0; l + 1 < L; ++l)
      if (plan.m[static_cast<std::size_t>(l)] <= plan.m[static_cast<std::size_t>(l) + 1])
        throw ParameterError(
            "independent coupling needs strictly decreasing sample counts");
    std::vector<double> diff;
    for (int l = 0; l < L; ++l) {
      const long long hi = plan.m[static_cast<std::size_t>(l)];
      const long long lo = (l + 1 < L) ? plan.m[static_cast<std::size_t>(l) + 1] : 0;
      const long long count = hi - lo;
      diff.assign(static_cast<std::size_t>(count), 0.0);
      parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t k) {
        const SeedPair seeds = seeds_for(lo + static_cast<long long>(k));
        const double fine = eval_with_context(v, l, seeds);
        const double coarse = l > 0 ? eval_with_context(v, l - 1, seeds) : 0.0;
        diff[k] = fine - coarse;
      });
      const auto [mean, var] = mean_and_variance(diff);
      out.level_contributions[static_cast<std::size_t>(l)] = mean;
      out.level_variances[static_cast<std::size_t>(l)] = var;
      out.samples_used[static_cast<std::size_t>(l)] = count;
    }
  }

  for (int l = 0; l < L; ++l) {
    out.value += out.level_contributions[static_cast<std::size_t>(l)];
    out.cost += static_cast<double>(out.samples_used[static_cast<std::size_t>(l)]) *
                std::pow(plan.eta[static_cast<std::size_t>(l)] / plan.epsilon,
                         opts.cost_exponent);
  }
  return out;
}

}  // namespace

EstimatorOutput mlmc_expect(const LevelSampler& sampler, const LevelPlan& plan,
                            const EstimatorOptions& opts) {
  if (!sampler) throw ParameterError("null sampler");
  return run_estimator(sampler, plan, opts);
}

EstimatorOutput mc_expect(const std::function<double(const SeedPair&)>& sampler,
                          long long m_hat, double cost_per_sample,
                          const EstimatorOptions& opts) {
  if (!sampler) throw ParameterError("null sampler");
  if (m_hat < 1) throw ParameterError("sample count must be at least 1");
  const int threads = opts.threads < 1 ? 1 : opts.threads;

  std::vector<double> vals(static_cast<std::size_t>(m_hat), 0.0);
  parallel_for(static_cast<std::size_t>(m_hat), threads, [&](std::size_t j) {
    const std::uint64_t s = opts.seed_base + static_cast<std::uint64_t>(j);
    const SeedPair seeds{s, s, opts.stream_id};
    vals[j] = eval_with_context([&](int, const SeedPair& sp) { return sampler(sp); },
                                0, seeds);
  });
  const auto [mean, var] = mean_and_variance(vals);

  EstimatorOutput out;
  out.value = mean;
  out.level_contributions = {mean};
  out.level_variances = {var};
  out.samples_used = {m_hat};
  out.cost = static_cast<double>(m_hat) * cost_per_sample;
  return out;
}

EstimatorOutput two_point_correlation(const PairSampler& sampler,
                                      const LevelPlan& plan,
                                      const EstimatorOptions& opts) {
  if (!sampler) throw ParameterError("null sampler");
  if (opts.coupling != Coupling::Shared)
    throw ParameterError("two-point correlation requires shared coupling");
  return run_estimator(
      [&](int level, const SeedPair& seeds) {
        const auto [ax, ay] = sampler(level, seeds);
        return ax * ay;
      },
      plan, opts);
}

}  // namespace homog::mlmc
