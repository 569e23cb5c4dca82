#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "homog/cell/fv.hpp"
#include "homog/cell/harmonic.hpp"
#include "homog/cell/tensor.hpp"
#include "homog/errors.hpp"
#include "homog/grid.hpp"
#include "homog/rng.hpp"

using namespace homog;
using cell::CorrectorBc;
using cell::TensorForm;

namespace {

ScalarFieldSample constant_field_1d(double c, int n) {
  ScalarFieldSample s;
  s.grid = make_grid_1d(0.0, n, 1.0 / n);
  s.values.assign(static_cast<std::size_t>(n), c);
  return s;
}

ScalarFieldSample constant_field_2d(double c, int n) {
  ScalarFieldSample s;
  s.grid = make_grid_2d(0.0, 0.0, n, n, 1.0 / n);
  s.values.assign(static_cast<std::size_t>(n) * n, c);
  return s;
}

cell::HomogenizedTensor apparent(const ScalarFieldSample& field,
                                 CorrectorBc bc, TensorForm form) {
  std::vector<cell::CellSolution> chi;
  chi.push_back(cell::solve_corrector(field, 0, bc));
  if (field.grid.dim == 2) chi.push_back(cell::solve_corrector(field, 1, bc));
  return cell::apparent_tensor(field, chi, form);
}

double harmonic_of_cells(const std::vector<double>& v) {
  double s = 0.0;
  for (double a : v) s += 1.0 / a;
  return static_cast<double>(v.size()) / s;
}

}  // namespace

TEST_CASE("constant coefficient reproduces c times the identity") {
  for (double c : {0.7, 3.2})
    for (auto bc : {CorrectorBc::DirichletLinear, CorrectorBc::DirichletNoFlow})
      for (auto form : {TensorForm::FluxAverage, TensorForm::EnergyAverage}) {
        const auto t1 = apparent(constant_field_1d(c, 32), bc, form);
        CHECK(std::fabs(t1.e[0][0] - c) < 1e-10);

        const auto t2 = apparent(constant_field_2d(c, 16), bc, form);
        CHECK(std::fabs(t2.e[0][0] - c) < 1e-10);
        CHECK(std::fabs(t2.e[1][1] - c) < 1e-10);
        CHECK(std::fabs(t2.e[0][1]) < 1e-10);
        CHECK(std::fabs(t2.e[1][0]) < 1e-10);
        CHECK(t2.scalar() == doctest::Approx(c).epsilon(1e-10));
      }
}

TEST_CASE("1d apparent value is the harmonic mean of the cell values") {
  ScalarFieldSample s;
  const int n = 64;
  s.grid = make_grid_1d(0.0, n, 1.0 / n);
  for (int i = 0; i < n; ++i)
    s.values.push_back(0.5 + 2.5 * rng::uniform01(1, rng::kTagMicro, 9, i));

  for (auto bc : {CorrectorBc::DirichletLinear, CorrectorBc::DirichletNoFlow}) {
    const auto t = apparent(s, bc, TensorForm::FluxAverage);
    CHECK(t.e[0][0] ==
          doctest::Approx(harmonic_of_cells(s.values)).epsilon(1e-8));
  }
}

TEST_CASE("apparent_scalar_1d computes the harmonic integral mean") {
  // 1/a = 2 + sin(2 pi x) integrates to 2 over a full period.
  const auto a = [](double x) {
    return 1.0 / (2.0 + std::sin(2.0 * std::numbers::pi * x));
  };
  CHECK(cell::apparent_scalar_1d(a, 0.0, 1.0, 4096) ==
        doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("product coefficient matches the separable oracle") {
  const auto a1 = [](double x) {
    return 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x);
  };
  const auto a2 = [](double y) { return 2.0 + y; };
  const auto oracle = cell::apparent_tensor_noflow_product(
      a1, a2, 0.0, 1.0, 0.0, 1.0, 1 << 14);

  double err_prev = 0.0;
  for (int n : {16, 64}) {
    ScalarFieldSample s;
    s.grid = make_grid_2d(0.0, 0.0, n, n, 1.0 / n);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        s.values.push_back(a1((ix + 0.5) / n) * a2((iy + 0.5) / n));

    const auto t = apparent(s, CorrectorBc::DirichletNoFlow,
                            TensorForm::FluxAverage);
    const double err = std::max(std::fabs(t.e[0][0] - oracle.e[0][0]),
                                std::fabs(t.e[1][1] - oracle.e[1][1]));
    CHECK(std::fabs(t.e[0][1]) < 1e-8);
    if (n == 16) err_prev = err;
    if (n == 64) {
      CHECK(err < 1e-2);
      CHECK(err < err_prev);
    }
  }
}

TEST_CASE("dirichlet poisson solve converges at second order") {
  const double pi = std::numbers::pi;

  SUBCASE("1d") {
    double errs[2] = {0.0, 0.0};
    int k = 0;
    for (int n : {64, 128}) {
      ScalarFieldSample s = constant_field_1d(1.0, n);
      std::vector<double> f(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        f[static_cast<std::size_t>(i)] =
            pi * pi * std::sin(pi * (i + 0.5) / n);
      const auto op = cell::assemble_dirichlet_poisson(s, f);
      std::vector<double> u(static_cast<std::size_t>(n), 0.0);
      const auto st = cell::pcg_solve(op, u, 1e-12);
      CHECK(st.rel_residual <= 1e-12);

      double e2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = u[static_cast<std::size_t>(i)] -
                         std::sin(pi * (i + 0.5) / n);
        e2 += d * d / n;
      }
      errs[k++] = std::sqrt(e2);
    }
    CHECK(errs[1] < 1e-3);
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.2));
  }

  SUBCASE("2d") {
    double errs[2] = {0.0, 0.0};
    int k = 0;
    for (int n : {16, 32}) {
      ScalarFieldSample s = constant_field_2d(1.0, n);
      std::vector<double> f;
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
          f.push_back(2.0 * pi * pi * std::sin(pi * (ix + 0.5) / n) *
                      std::sin(pi * (iy + 0.5) / n));
      const auto op = cell::assemble_dirichlet_poisson(s, f);
      std::vector<double> u(static_cast<std::size_t>(n) * n, 0.0);
      cell::pcg_solve(op, u, 1e-12);

      double e2 = 0.0;
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double want = std::sin(pi * (ix + 0.5) / n) *
                              std::sin(pi * (iy + 0.5) / n);
          const double d = u[static_cast<std::size_t>(iy) * n + ix] - want;
          e2 += d * d / (n * n);
        }
      errs[k++] = std::sqrt(e2);
    }
    CHECK(errs[1] < 3e-3);
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.3));
  }
}

TEST_CASE("solver guards") {
  auto s = constant_field_2d(1.0, 32);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    s.values[i] = 0.5 + rng::uniform01(2, rng::kTagMicro, 4, i);
  std::vector<double> f(s.values.size(), 1.0);
  const auto op = cell::assemble_dirichlet_poisson(s, f);
  std::vector<double> u(s.values.size(), 0.0);

  CHECK_THROWS_AS(cell::pcg_solve(op, u, 1e-10, 3), SolverError);
  CHECK_THROWS_AS(cell::pcg_solve(op, u, 0.0), ParameterError);
  CHECK_THROWS_AS(cell::pcg_solve(op, u, 1e-3), ParameterError);
}

TEST_CASE("corrector solutions report their residual") {
  auto s = constant_field_2d(1.0, 8);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    s.values[i] = 1.0 + rng::uniform01(6, rng::kTagMicro, 2, i);
  const auto chi = cell::solve_corrector(s, 0, CorrectorBc::DirichletLinear);
  CHECK(chi.rel_residual <= 1e-10);
  CHECK(chi.direction == 0);
  CHECK(chi.values.size() == 64);
}
