#include "homog/mlmc/plan.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog::mlmc {

LevelPlan plan_samples(double beta, double epsilon, std::vector<double> eta,
                       std::vector<double> alpha,
                       std::optional<double> second_moment, long long m_finest) {
  const std::size_t L = eta.size();
  if (L == 0) throw ParameterError("plan needs at least one level");
  if (!(beta > 0.0)) throw ParameterError("variance rate beta must be positive");
  if (!(epsilon > 0.0)) throw ParameterError("microscale epsilon must be positive");
  if (m_finest < 1) throw ParameterError("finest-level sample count must be at least 1");
  for (std::size_t l = 0; l < L; ++l) {
    if (!(eta[l] > 0.0)) throw ParameterError("RVE sizes must be positive");
    if (l > 0 && !(eta[l] > eta[l - 1]))
      throw ParameterError("RVE sizes must be strictly increasing");
  }
  if (!(epsilon < eta[0]))
    throw ParameterError("microscale must be smaller than the coarsest RVE");
  if (alpha.empty()) alpha.assign(L, 1.0 / static_cast<double>(L));
  if (alpha.size() != L)
    throw ParameterError("error-split weights must match the level count");
  for (double a : alpha)
    if (!(a > 0.0)) throw ParameterError("error-split weights must be positive");
  if (second_moment && !(*second_moment > 0.0))
    throw ParameterError("second-moment estimate must be positive");
  if (L >= 2 && !second_moment && !(eta[1] > eta[0]))
    throw ParameterError("geometric continuation needs two distinct coarse sizes");

  LevelPlan plan;
  plan.eta = std::move(eta);
  plan.beta = beta;
  plan.epsilon = epsilon;
  plan.alpha = std::move(alpha);
  plan.second_moment = second_moment;

  plan.raw.resize(L);
  const double eta_L = plan.eta[L - 1];
  for (std::size_t l = 1; l < L; ++l)
    plan.raw[l] =
        std::pow(eta_L / plan.eta[l - 1], beta) / (plan.alpha[l] * plan.alpha[l]);
  if (second_moment) {
    plan.raw[0] = *second_moment * std::pow(eta_L / epsilon, beta) /
                  (plan.alpha[0] * plan.alpha[0]);
  } else if (L >= 2) {
    const double eta_0 = plan.eta[0] * plan.eta[0] / plan.eta[1];
    plan.raw[0] = std::pow(eta_L / eta_0, beta) / (plan.alpha[0] * plan.alpha[0]);
  } else {
    plan.raw[0] = 1.0 / (plan.alpha[0] * plan.alpha[0]);
  }

  plan.m.resize(L);
  const double scale = static_cast<double>(m_finest) / plan.raw[L - 1];
  for (std::size_t l = 0; l < L; ++l) {
    const double scaled = plan.raw[l] * scale;
    if (!(scaled >= 1.0) && l + 1 == L)
      throw ParameterError("allocation left the finest level below one sample");
    plan.m[l] = static_cast<long long>(std::ceil(scaled));
    if (plan.m[l] < 1) throw ParameterError("allocation produced an empty level");
  }
  for (std::size_t l = L - 1; l-- > 0;)
    if (plan.m[l] < plan.m[l + 1]) plan.m[l] = plan.m[l + 1];
  return plan;
}

long long equal_cost_mc_samples(const LevelPlan& plan, int d) {
  if (plan.levels() == 0) throw ParameterError("empty plan");
  if (d < 1 || d > 3) throw ParameterError("cost exponent must be 1, 2, or 3");
  const double eta_L = plan.eta.back();
  double total = 0.0;
  for (std::size_t l = 0; l < plan.eta.size(); ++l)
    total += static_cast<double>(plan.m[l]) * std::pow(plan.eta[l] / eta_L, d);
  return static_cast<long long>(std::ceil(total));
}

CostSplit cost_model(const LevelPlan& plan, int d) {
  if (plan.levels() == 0) throw ParameterError("empty plan");
  if (d < 1 || d > 3) throw ParameterError("cost exponent must be 1, 2, or 3");
  CostSplit out;
  for (std::size_t l = 0; l < plan.eta.size(); ++l)
    out.w_mlmc += plan.raw[l] * std::pow(plan.eta[l] / plan.epsilon, d);
  out.w_mc = plan.raw[0] * std::pow(plan.eta.back() / plan.epsilon, d);
  return out;
}

Moments pilot_moments(const std::vector<double>& values) {
  if (values.size() < 2) throw ParameterError("pilot needs at least two values");
  const double n = static_cast<double>(values.size());
  Moments m;
  for (double v : values) {
    m.mean += v;
    m.second += v * v;
  }
  m.mean /= n;
  m.second /= n;
  for (double v : values) m.variance += (v - m.mean) * (v - m.mean);
  m.variance /= (n - 1.0);
  return m;
}

}  // namespace homog::mlmc
