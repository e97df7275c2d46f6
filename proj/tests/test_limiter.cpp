#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cutdg/errors.hpp"
#include "cutdg/limiter.hpp"
#include "support.hpp"

using namespace cutdg;
using cutdg::testing::scalar;
using cutdg::testing::share;

TEST_CASE("minmod") {
  CHECK(minmod(1.0, 2.0, 3.0) == 1.0);
  CHECK(minmod(-1.0, -2.0, -3.0) == -1.0);
  CHECK(minmod(1.0, -2.0, 3.0) == 0.0);
  CHECK(minmod(0.0, 2.0, 3.0) == 0.0);
  const double one[] = {-4.0};
  CHECK(minmod(one) == -4.0);
}

TEST_CASE("smooth monotone linear data is left alone") {
  auto mesh = share(CutCellMesh(0.0, 1.0, 5, {}));
  auto u = project([](double x) { return scalar(2.0 * x); }, mesh, 1, 1);
  const auto before = u.data();
  for (std::size_t j = 1; j + 1 < u.cells(); ++j) CHECK_FALSE(limit_cell(u, j, BoundaryKind::transmissive));
  CHECK(u.data() == before);
}

TEST_CASE("an isolated extremum loses its slope") {
  auto mesh = share(CutCellMesh(0.0, 1.0, 3, {}));
  DGState u(mesh, 1, 2);
  u.coeff(0, 0, 0) = 0.0;
  u.coeff(1, 0, 0) = 1.0;
  u.coeff(1, 0, 1) = 0.2;
  u.coeff(1, 0, 2) = -0.1;
  u.coeff(2, 0, 0) = 0.0;
  CHECK(limit_cell(u, 1, BoundaryKind::transmissive));
  CHECK(u.coeff(1, 0, 0) == 1.0);
  CHECK(u.coeff(1, 0, 1) == 0.0);
  CHECK(u.coeff(1, 0, 2) == 0.0);
}

TEST_CASE("an overshooting cubic is reduced to a bounded linear") {
  auto mesh = share(CutCellMesh(0.0, 1.0, 3, {}));
  DGState u(mesh, 1, 3);
  u.coeff(0, 0, 0) = 0.0;
  u.coeff(1, 0, 0) = 0.5;
  u.coeff(2, 0, 0) = 1.0;
  u.coeff(1, 0, 1) = 0.4;
  u.coeff(1, 0, 3) = 0.2;
  const double right_before = u.right_trace(1)(0);
  CHECK(right_before > 1.0);
  CHECK(limit_cell(u, 1, BoundaryKind::transmissive));
  CHECK(u.coeff(1, 0, 0) == 0.5);
  CHECK(u.coeff(1, 0, 2) == 0.0);
  CHECK(u.coeff(1, 0, 3) == 0.0);
  CHECK(u.right_trace(1)(0) <= 1.0 + 1e-14);
  CHECK(u.left_trace(1)(0) >= -1e-14);
  CHECK(u.right_trace(1)(0) > u.left_trace(1)(0));
}

TEST_CASE("cut-neighbor postprocessing") {
  auto mesh = share(model_mesh(6, 3, 0.01));
  const auto& pair = mesh->cut_pairs().front();
  StabilizationRecord rec;
  rec.left = pair.left_neighbor;
  rec.small = pair.small;
  rec.right = pair.large;
  rec.alpha = pair.alpha;
  rec.eta = compute_eta(pair.alpha, 0.4);

  auto flat = project([](double) { return scalar(0.3); }, mesh, 1, 2);
  CHECK_FALSE(postprocess_cut_neighbors(flat, rec));

  DGState u(mesh, 1, 3);
  u.coeff(rec.left, 0, 0) = 0.0;
  u.coeff(rec.small, 0, 0) = 0.1;
  u.coeff(rec.right, 0, 0) = 0.2;
  u.coeff(rec.left, 0, 1) = 0.5;  // steep: extension at the cut exceeds 0.2
  const double x_cut = mesh->edges()[rec.small + 1];
  CHECK(evaluate(u, rec.left, x_cut)(0) > 0.2);
  CHECK(postprocess_cut_neighbors(u, rec));
  CHECK(evaluate(u, rec.left, x_cut)(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(u.coeff(rec.left, 0, 0) == 0.0);

  // Already bounded cubic stays untouched.
  DGState v(mesh, 1, 3);
  v.coeff(rec.left, 0, 0) = 0.0;
  v.coeff(rec.small, 0, 0) = 0.1;
  v.coeff(rec.right, 0, 0) = 1.0;
  v.coeff(rec.left, 0, 1) = 0.01;
  v.coeff(rec.left, 0, 3) = 0.001;
  const auto before = v.data();
  CHECK_FALSE(postprocess_cut_neighbors(v, rec));
  CHECK(v.data() == before);
}

TEST_CASE("positivity guard") {
  const EulerEquations euler;
  auto mesh = share(CutCellMesh(0.0, 1.0, 4, {}));
  const Quadrature q(4);
  auto smooth = project([&](double x) { return euler.conserved(1.0 + 0.1 * x, 0.2, 1.0); }, mesh, 3, 2);
  const auto before = smooth.data();
  CHECK(positivity_guard(smooth, euler, q) == 0);
  CHECK(smooth.data() == before);

  DGState u(mesh, 3, 1);
  for (std::size_t j = 0; j < 4; ++j) {
    u.coeff(j, 0, 0) = 1.0;
    u.coeff(j, 2, 0) = 1.0;
  }
  u.coeff(2, 2, 1) = 0.9;  // energy, hence pressure, negative at the left edge
  CHECK(euler.pressure(u.left_trace(2)) < 0.0);
  CHECK(positivity_guard(u, euler, q) == 1);
  CHECK(u.coeff(2, 2, 1) == 0.0);
  CHECK(u.coeff(2, 2, 0) == 1.0);

  u.coeff(1, 0, 0) = -0.5;
  CHECK_THROWS_AS(positivity_guard(u, euler, q), AdmissibilityError);
}

TEST_CASE("limiter conserves averages, bounds traces and is idempotent") {
  auto mesh = share(banded_mesh(20, {0.1, 0.9}, RandomAlpha{42, 1e-2}));
  auto flux = make_flux("godunov", make_equation("burgers"));
  const SpatialOperator op(mesh, flux, 3);
  LimiterConfig cfg;
  cfg.enabled = true;
  const Limiter limiter(cfg, op);
  SplitMix64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    DGState u = op.zero_state();
    testing::randomize(u, rng);
    std::vector<double> averages;
    for (std::size_t j = 0; j < u.cells(); ++j) averages.push_back(u.coeff(j, 0, 0));
    limiter.apply(u);
    for (std::size_t j = 0; j < u.cells(); ++j) CHECK(u.coeff(j, 0, 0) == averages[j]);
    const auto once = u.data();
    limiter.apply(u);
    CHECK(u.data() == once);
  }
}
