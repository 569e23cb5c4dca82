#pragma once

#include <optional>
#include <vector>

namespace homog::mlmc {

/// Level layout of a multilevel run: RVE sizes eta (strictly increasing),
/// integer sample counts m (non-increasing), and the allocation inputs they
/// were derived from. `raw` keeps the unscaled real-valued counts so cost
/// models can be evaluated without the rounding noise.
struct LevelPlan {
  std::vector<double> eta;
  std::vector<long long> m;
  double beta = 1.0;
  double epsilon = 1.0;
  std::vector<double> alpha;
  std::optional<double> second_moment;
  std::vector<double> raw;

  int levels() const { return static_cast<int>(eta.size()); }
};

/// Optimal per-level sample counts. For l >= 2 the raw count is
/// (eta_L / eta_{l-1})^beta / alpha_l^2. Level 1 plays the role of a plain
/// mean, so its count uses the second moment of the quantity itself when an
/// estimate is supplied: E[(A*)^2] (eta_L / epsilon)^beta / alpha_1^2.
/// Without one, the geometric profile is continued one step below eta_1
/// (eta_0 := eta_1^2 / eta_2), which reproduces the classic
/// (4^{L-l} m_L) / (2^{L-l} m_L) ladders for beta = 2 / beta = 1.
/// Raw counts are then scaled so the finest level receives exactly m_finest,
/// rounded up, and clamped non-increasing. alpha may be empty (all 1/L).
LevelPlan plan_samples(double beta, double epsilon, std::vector<double> eta,
                       std::vector<double> alpha,
                       std::optional<double> second_moment, long long m_finest);

/// Sample count of a single-level MC run matching the plan's total work:
/// ceil( sum_l m_l (eta_l / eta_L)^d ).
long long equal_cost_mc_samples(const LevelPlan& plan, int d);

struct CostSplit {
  double w_mlmc = 0.0;
  double w_mc = 0.0;
};

/// Work totals in degree-of-freedom units, using the unscaled counts:
/// W_mlmc = sum_l raw_l (eta_l / epsilon)^d. The MC comparator runs at the
/// finest level with the statistical floor the level-1 count encodes, so
/// W_mc = raw_1 (eta_L / epsilon)^d and L = 1 gives a ratio of exactly 1.
CostSplit cost_model(const LevelPlan& plan, int d);

struct Moments {
  double mean = 0.0;
  double second = 0.0;
  double variance = 0.0;
};

/// Empirical mean / raw second moment / unbiased variance of pilot values,
/// e.g. a 30-sample level-1 pilot feeding plan_samples' second_moment.
Moments pilot_moments(const std::vector<double>& values);

}  // namespace homog::mlmc
