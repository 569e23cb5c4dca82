#include "homog/coarse/weighted.hpp"

#include <atomic>
#include <cmath>

#include "homog/coarse/coarse1d.hpp"
#include "homog/errors.hpp"
#include "homog/parallel.hpp"

namespace homog::coarse {

std::vector<double> choose_weights(const std::vector<double>& E_diag,
                                   const std::vector<double>& alpha_tilde) {
  const std::size_t L = E_diag.size();
  if (L == 0 || alpha_tilde.size() != L)
    throw ParameterError("weight inputs must share one entry per level");
  for (double e : E_diag)
    if (!(e > 0.0)) throw ParameterError("accuracies must be positive");

  std::vector<double> alpha(L, 0.0);
  double tail = 0.0;
  for (std::size_t l = L; l-- > 0;) {
    tail += alpha_tilde[l] * E_diag[L - 1] / E_diag[l];
    alpha[l] = tail;
  }
  return alpha;
}

SystematicMatch systematic_match(const std::vector<double>& alpha,
                                 const std::vector<double>& H,
                                 const std::vector<double>& delta) {
  const std::size_t L = alpha.size();
  if (L == 0 || H.size() != L || delta.size() != L)
    throw ParameterError("systematic match inputs must share one entry per level");
  SystematicMatch out;
  for (std::size_t l = 0; l < L; ++l) {
    const double a_next = (l + 1 < L) ? alpha[l + 1] : 0.0;
    out.H_hat += (alpha[l] - a_next) * H[l];
    out.delta_hat += (alpha[l] - a_next) * delta[l];
  }
  return out;
}

std::vector<long long> choose_weighted_M(const std::vector<double>& alpha,
                                         const std::vector<double>& H,
                                         const std::vector<double>& delta,
                                         double H_hat, double delta_hat,
                                         const std::vector<double>& gamma,
                                         double c_scale) {
  const std::size_t L = alpha.size();
  if (L == 0 || H.size() != L || delta.size() != L || gamma.size() != L)
    throw ParameterError("sample-count inputs must share one entry per level");
  if (!(H_hat + delta_hat > 0.0) || !(c_scale > 0.0))
    throw ParameterError("scales must be positive");
  for (std::size_t l = 0; l < L; ++l)
    if (!(alpha[l] > 0.0) || !(gamma[l] > 0.0) || !(H[l] > 0.0) || !(delta[l] >= 0.0))
      throw ParameterError("sample-count inputs must be positive");

  std::vector<long long> M(L);
  const double hat = H_hat + delta_hat;
  for (std::size_t l = 0; l < L; ++l) {
    const double num = l == 0 ? alpha[0] : alpha[l] * (H[l] + delta[l]);
    const double r = num / (gamma[l] * hat);
    M[l] = static_cast<long long>(std::ceil(c_scale * r * r));
    if (M[l] < 1) M[l] = 1;
  }
  for (std::size_t l = L - 1; l-- > 0;)
    if (M[l] < M[l + 1]) M[l] = M[l + 1];
  return M;
}

namespace {

// Sample layout shared by both 1D solution estimators.
struct Layout {
  int L = 0;
  std::vector<int> cells;       // per level
  std::vector<double> H;
  std::vector<std::vector<double>> fint;  // per level, per cell
};

Layout make_layout(const std::vector<CoarseGrid>& grids,
                   const std::function<double(double)>& f) {
  if (grids.empty()) throw ParameterError("need at least one coarse grid");
  Layout ly;
  ly.L = static_cast<int>(grids.size());
  for (std::size_t l = 0; l < grids.size(); ++l) {
    if (grids[l].d != 1)
      throw ParameterError("the weighted estimators run on 1D grids");
    const int n = grids[l].cells_per_dim();
    if (l > 0) {
      const int prev = ly.cells[l - 1];
      if (n <= prev || n % prev != 0)
        throw StructureError("coarse grids must be nested and refining");
    }
    ly.cells.push_back(n);
    ly.H.push_back(grids[l].H);
    ly.fint.push_back(neumann_cell_integrals(f, grids[l]));
  }
  return ly;
}

// Inverse coefficient values at the vertices x = (k+1) H_j of grid level j,
// straight from the RVE closure. One closure call per vertex.
std::vector<double> vertex_inverses(const RveCoefficient& rve_value, int level,
                                    const Layout& ly, const SeedPair& seeds) {
  const int n = ly.cells[static_cast<std::size_t>(level)];
  std::vector<double> inv(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = rve_value(level, (k + 1) * ly.H[static_cast<std::size_t>(level)], seeds);
    if (!(a > 0.0)) throw CoercivityError("non-positive apparent coefficient");
    inv[static_cast<std::size_t>(k)] = 1.0 / a;
  }
  return inv;
}

// Cumulative Neumann solve on grid `level` with vertex data owned by grid
// `owner` (owner >= level, so every needed vertex is present).
std::vector<double> solve_from_vertices(const std::vector<double>& inv_owner,
                                        int owner, int level, const Layout& ly) {
  const int n = ly.cells[static_cast<std::size_t>(level)];
  const int r = ly.cells[static_cast<std::size_t>(owner)] / n;
  std::vector<double> u(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (int c = 0; c < n; ++c) {
    acc += ly.fint[static_cast<std::size_t>(level)][static_cast<std::size_t>(c)] *
           inv_owner[static_cast<std::size_t>((c + 1) * r - 1)];
    u[static_cast<std::size_t>(c)] = acc;
  }
  return u;
}

// u_level minus the injection of u_{level-1} (empty for level 0).
std::vector<double> level_difference(const std::vector<double>& u_fine,
                                     const std::vector<double>& u_coarse,
                                     int level, const Layout& ly) {
  std::vector<double> d = u_fine;
  if (level > 0) {
    const int r = ly.cells[static_cast<std::size_t>(level)] /
                  ly.cells[static_cast<std::size_t>(level) - 1];
    for (int c = 0; c < ly.cells[static_cast<std::size_t>(level)]; ++c)
      d[static_cast<std::size_t>(c)] -= u_coarse[static_cast<std::size_t>(c / r)];
  }
  return d;
}

SolutionField inject_to_finest(const std::vector<double>& values, int level,
                               const Layout& ly,
                               const std::vector<CoarseGrid>& grids) {
  SolutionField out;
  out.grid = grids.back();
  const int nf = ly.cells[static_cast<std::size_t>(ly.L) - 1];
  const int r = nf / ly.cells[static_cast<std::size_t>(level)];
  out.values.resize(static_cast<std::size_t>(nf));
  for (int c = 0; c < nf; ++c)
    out.values[static_cast<std::size_t>(c)] = values[static_cast<std::size_t>(c / r)];
  return out;
}

}  // namespace

WeightedSolveReport weighted_mlmc_solution(
    const RveCoefficient& rve_value, const WeightedPlan& plan,
    const std::vector<CoarseGrid>& grids, const std::function<double(double)>& f,
    std::uint64_t stream_id, std::uint64_t seed_base, int threads) {
  if (!rve_value) throw ParameterError("null RVE coefficient");
  const Layout ly = make_layout(grids, f);
  const std::size_t L = static_cast<std::size_t>(ly.L);
  if (plan.M.size() != L || plan.alpha.size() != L)
    throw ParameterError("plan arrays must match the grid hierarchy");
  for (std::size_t l = 0; l < L; ++l) {
    if (plan.M[l] < 1) throw ParameterError("empty weighted level");
    if (l > 0 && plan.M[l] > plan.M[l - 1])
      throw ParameterError("weighted sample counts must be non-increasing");
  }
  if (threads < 1) threads = 1;

  // Block of sample i: the unique j with M_{j+1} <= i < M_j.
  const long long total = plan.M[0];
  std::vector<int> block_of(static_cast<std::size_t>(total));
  for (std::size_t j = 0; j < L; ++j) {
    const long long lo = (j + 1 < L) ? plan.M[j + 1] : 0;
    for (long long i = lo; i < plan.M[j]; ++i)
      block_of[static_cast<std::size_t>(i)] = static_cast<int>(j);
  }

  // Every realization is solved once per grid up to its block level; the
  // level-difference fields are cached and both folds below only reorder
  // their summation.
  std::vector<std::vector<std::vector<double>>> diff(
      static_cast<std::size_t>(total));
  std::atomic<long long> rve_count{0};
  parallel_for(static_cast<std::size_t>(total), threads, [&](std::size_t i) {
    const int j = block_of[i];
    const std::uint64_t s = seed_base + static_cast<std::uint64_t>(i);
    const SeedPair seeds{s, s, stream_id};
    const std::vector<double> inv = vertex_inverses(rve_value, j, ly, seeds);
    rve_count.fetch_add(ly.cells[static_cast<std::size_t>(j)],
                        std::memory_order_relaxed);
    std::vector<double> prev;
    diff[i].resize(static_cast<std::size_t>(j) + 1);
    for (int l = 0; l <= j; ++l) {
      std::vector<double> u = solve_from_vertices(inv, j, l, ly);
      diff[i][static_cast<std::size_t>(l)] = level_difference(u, prev, l, ly);
      prev = std::move(u);
    }
  });

  WeightedSolveReport report;
  report.rve_evaluations = rve_count.load();
  for (std::size_t j = 0; j < L; ++j)
    report.block_sizes.push_back(plan.M[j] - (j + 1 < L ? plan.M[j + 1] : 0));

  // Weighted fold: the literal double sum, blocks outermost within a level.
  report.weighted.grid = grids.back();
  report.weighted.values.assign(grids.back().cell_count(), 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    std::vector<double> acc(static_cast<std::size_t>(ly.cells[l]), 0.0);
    for (std::size_t j = l; j < L; ++j) {
      const long long lo = (j + 1 < L) ? plan.M[j + 1] : 0;
      for (long long i = lo; i < plan.M[j]; ++i) {
        const std::vector<double>& d = diff[static_cast<std::size_t>(i)][l];
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += d[c];
      }
    }
    const double w = plan.alpha[l] / static_cast<double>(plan.M[l]);
    for (double& v : acc) v *= w;
    const SolutionField up = inject_to_finest(acc, static_cast<int>(l), ly, grids);
    for (std::size_t c = 0; c < report.weighted.values.size(); ++c)
      report.weighted.values[c] += up.values[c];
  }

  // Plain fold: the standard estimator over the same solves, samples in
  // index order and no weights.
  report.plain.grid = grids.back();
  report.plain.values.assign(grids.back().cell_count(), 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    std::vector<double> acc(static_cast<std::size_t>(ly.cells[l]), 0.0);
    for (long long i = 0; i < plan.M[l]; ++i) {
      const std::vector<double>& d = diff[static_cast<std::size_t>(i)][l];
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += d[c];
    }
    for (double& v : acc) v /= static_cast<double>(plan.M[l]);
    const SolutionField up = inject_to_finest(acc, static_cast<int>(l), ly, grids);
    for (std::size_t c = 0; c < report.plain.values.size(); ++c)
      report.plain.values[c] += up.values[c];
  }
  return report;
}

ClassicSolveReport classic_mlmc_solution_1d(
    const RveCoefficient& rve_value, const std::vector<long long>& M,
    const std::vector<CoarseGrid>& grids, const std::function<double(double)>& f,
    std::uint64_t stream_id, std::uint64_t seed_base, int threads) {
  if (!rve_value) throw ParameterError("null RVE coefficient");
  const Layout ly = make_layout(grids, f);
  const std::size_t L = static_cast<std::size_t>(ly.L);
  if (M.size() != L) throw ParameterError("sample counts must match the hierarchy");
  for (std::size_t l = 0; l < L; ++l) {
    if (M[l] < 1) throw ParameterError("empty level");
    if (l > 0 && M[l] > M[l - 1])
      throw ParameterError("sample counts must be non-increasing");
  }
  if (threads < 1) threads = 1;

  ClassicSolveReport report;
  report.value.grid = grids.back();
  report.value.values.assign(grids.back().cell_count(), 0.0);
  std::atomic<long long> rve_count{0};

  for (std::size_t l = 0; l < L; ++l) {
    std::vector<std::vector<double>> d(static_cast<std::size_t>(M[l]));
    parallel_for(static_cast<std::size_t>(M[l]), threads, [&](std::size_t i) {
      const std::uint64_t s = seed_base + static_cast<std::uint64_t>(i);
      const SeedPair seeds{s, s, stream_id};
      const std::vector<double> inv_f =
          vertex_inverses(rve_value, static_cast<int>(l), ly, seeds);
      long long evals = ly.cells[l];
      const std::vector<double> u =
          solve_from_vertices(inv_f, static_cast<int>(l), static_cast<int>(l), ly);
      std::vector<double> u_coarse;
      if (l > 0) {
        const std::vector<double> inv_c =
            vertex_inverses(rve_value, static_cast<int>(l) - 1, ly, seeds);
        evals += ly.cells[l - 1];
        u_coarse = solve_from_vertices(inv_c, static_cast<int>(l) - 1,
                                       static_cast<int>(l) - 1, ly);
      }
      rve_count.fetch_add(evals, std::memory_order_relaxed);
      d[i] = level_difference(u, u_coarse, static_cast<int>(l), ly);
    });

    std::vector<double> acc(static_cast<std::size_t>(ly.cells[l]), 0.0);
    for (long long i = 0; i < M[l]; ++i)
      for (std::size_t c = 0; c < acc.size(); ++c)
        acc[c] += d[static_cast<std::size_t>(i)][c];
    for (double& v : acc) v /= static_cast<double>(M[l]);
    const SolutionField up = inject_to_finest(acc, static_cast<int>(l), ly, grids);
    for (std::size_t c = 0; c < report.value.values.size(); ++c)
      report.value.values[c] += up.values[c];
  }
  report.rve_evaluations = rve_count.load();
  return report;
}

WorkRatios weighted_work_ratios(int L, double beta, double epsilon) {
  if (L < 1) throw ParameterError("need at least one level");
  if (!(beta > 0.0) || !(epsilon > 0.0))
    throw ParameterError("rate and microscale must be positive");

  std::vector<double> eta(static_cast<std::size_t>(L)), delta, H, E_diag;
  for (int l = 1; l <= L; ++l)
    eta[static_cast<std::size_t>(l - 1)] = std::pow(2.0, l - L);
  if (!(epsilon < eta[0]))
    throw ParameterError("microscale must stay below the smallest RVE");
  for (double e : eta) {
    const double d = std::pow(epsilon / e, beta / 2.0);
    delta.push_back(d);
    H.push_back(d);
    E_diag.push_back(2.0 * d);
  }

  // Base weights are constant, normalized afterwards so alpha_1 = 1.
  std::vector<double> alpha = choose_weights(E_diag, std::vector<double>(E_diag.size(), 1.0));
  for (std::size_t l = alpha.size(); l-- > 0;) alpha[l] /= alpha[0];

  const SystematicMatch hat = systematic_match(alpha, H, delta);
  const double hat_sum = hat.H_hat + hat.delta_hat;
  const std::vector<double> gamma(static_cast<std::size_t>(L), 1.0 / L);

  // Real-valued counts; the common constant C cancels from the ratios.
  std::vector<double> M(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) {
    const double num = l == 0 ? alpha[0]
                              : alpha[static_cast<std::size_t>(l)] *
                                    (H[static_cast<std::size_t>(l)] +
                                     delta[static_cast<std::size_t>(l)]);
    const double r = num / (gamma[static_cast<std::size_t>(l)] * hat_sum);
    M[static_cast<std::size_t>(l)] = r * r;
  }
  const double M_hat = 1.0 / (hat_sum * hat_sum);
  const double N_hat = 1.0 / (hat.H_hat * hat.H_hat);
  const double eta_hat = epsilon * std::pow(hat.delta_hat, -2.0 / beta);

  double w_rve = 0.0, w_coarse = 0.0;
  for (int l = 0; l < L; ++l) {
    const std::size_t s = static_cast<std::size_t>(l);
    const double m_next = (l + 1 < L) ? M[s + 1] : 0.0;
    const double n_l = 1.0 / (H[s] * H[s]);
    w_rve += (M[s] - m_next) * (eta[s] / epsilon) * (eta[s] / epsilon) * n_l;
    w_coarse += M[s] / (H[s] * H[s]);
  }
  const double w_rve_mc = M_hat * N_hat * (eta_hat / epsilon) * (eta_hat / epsilon);
  const double w_coarse_mc = M_hat / (hat.H_hat * hat.H_hat);

  return {w_rve / w_rve_mc, w_coarse / w_coarse_mc};
}

}  // namespace homog::coarse
