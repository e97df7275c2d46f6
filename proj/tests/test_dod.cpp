#include <doctest.h>

#include <cmath>
#include <memory>

#include "cutdg/dod.hpp"
#include "cutdg/errors.hpp"
#include "cutdg/spatial.hpp"
#include "support.hpp"

using namespace cutdg;
using cutdg::testing::scalar;
using cutdg::testing::share;
using cutdg::testing::vec;

namespace {

struct Setup {
  std::shared_ptr<const CutCellMesh> mesh;
  std::shared_ptr<const NumericalFlux> flux;
  SpatialOperator op;
  DGState state;
  StabilizationRecord rec;

  Setup(const std::string& eq_key, int p, double alpha, std::uint64_t seed = 1)
      : mesh(share(model_mesh(12, 6, alpha))),
        flux(make_flux(default_flux_key(*make_equation(eq_key)), make_equation(eq_key))),
        op(mesh, flux, p),
        state(op.zero_state()) {
    SplitMix64 rng(seed);
    if (eq_key == "euler") {
      const auto& e = static_cast<const EulerEquations&>(flux->equation());
      const auto u = project(
          [&](double x) { return e.conserved(1.0 + 0.3 * std::sin(6.0 * x), 0.5, 1.0 + 0.2 * x); },
          mesh, 3, p);
      state = u;
      for (auto& c : state.data()) c += 0.01 * (rng.uniform() - 0.5);
    } else {
      testing::randomize(state, rng);
    }
    rec = make_record(state, mesh->cut_pairs().front(), flux->equation(), 0.4);
  }

  std::vector<double> rows(const std::vector<double>& r, std::size_t cell) const {
    const auto begin = r.begin() + static_cast<long>(state.index(cell, 0, 0));
    return {begin, begin + state.components() * state.modes()};
  }
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> minus(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

std::vector<double> plus(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] + b[i];
  return d;
}

}  // namespace

TEST_CASE("eta") {
  CHECK(compute_eta(0.1, 0.4) == doctest::Approx(0.75));
  CHECK(compute_eta(0.4, 0.4) == 0.0);
  CHECK(compute_eta(0.5, 0.4) == 0.0);
  CHECK(compute_eta(1e-6, 0.4) == doctest::Approx(1.0 - 2.5e-6).epsilon(1e-15));
  CHECK(eta_complement(1e-6, 0.4) == doctest::Approx(2.5e-6).epsilon(1e-15));
  CHECK(eta_complement(0.5, 0.4) == 1.0);
}

TEST_CASE("direction matrices") {
  const AdvectionEquation adv(1.0);
  auto [l, r] = direction_matrices(adv, scalar(0.3), scalar(-2.0));
  CHECK(l(0, 0) == 1.0);
  CHECK(r(0, 0) == 0.0);
  std::tie(l, r) = direction_matrices(AdvectionEquation(-2.0), scalar(1.0), scalar(1.0));
  CHECK(l(0, 0) == 0.0);
  CHECK(r(0, 0) == 1.0);

  const BurgersEquation burgers;
  std::tie(l, r) = direction_matrices(burgers, scalar(-0.5), scalar(0.5));
  CHECK(l(0, 0) == 0.5);
  CHECK(r(0, 0) == 0.5);
  std::tie(l, r) = direction_matrices(burgers, scalar(0.1), scalar(0.2));
  CHECK(l(0, 0) == 1.0);
  std::tie(l, r) = direction_matrices(burgers, scalar(-0.1), scalar(-0.2));
  CHECK(r(0, 0) == 1.0);

  const LinearSystem lin(coupled_wave_matrix());
  std::tie(l, r) = direction_matrices(lin, vec({0.0, 0.0, 0.0}), vec({1.0, 2.0, 3.0}));
  CHECK(l.trace() == doctest::Approx(2.0));
  CHECK(r.trace() == doctest::Approx(1.0));
  CHECK((l + r - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  // Scaling the state does not change the directions of linear problems.
  const auto [l2, r2] = direction_matrices(lin, vec({0.0, 0.0, 0.0}), vec({5.0, 10.0, 15.0}));
  CHECK((l2 - l).cwiseAbs().maxCoeff() == 0.0);

  const EulerEquations euler;
  SplitMix64 rng(3);
  for (int s = 0; s < 50; ++s) {
    const Vector a = euler.conserved(0.2 + rng.uniform(), -2.0 + 4.0 * rng.uniform(), 0.2 + rng.uniform());
    const Vector b = euler.conserved(0.2 + rng.uniform(), -2.0 + 4.0 * rng.uniform(), 0.2 + rng.uniform());
    const auto [le, re] = direction_matrices(euler, a, b);
    CHECK((le + re - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXcd ev = Eigen::MatrixXd(le).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      CHECK(ev(i).real() > -1e-10);
      CHECK(ev(i).real() < 1.0 + 1e-10);
    }
  }
}

TEST_CASE("edge penalty for upwind advection") {
  Setup s("advection", 2, 0.05);
  const auto j0 = j0_edge_penalty(s.state, s.rec, *s.flux);
  CHECK(max_abs(j0.left) == 0.0);
  const double x_cut = s.mesh->edges()[s.rec.small + 1];
  const double d = evaluate(s.state, s.rec.left, x_cut)(0) - s.state.right_trace(s.rec.small)(0);
  const auto plus1 = legendre_values(2, 1.0);
  const auto minus1 = legendre_values(2, -1.0);
  for (int i = 0; i <= 2; ++i) {
    CHECK(j0.small[i] == doctest::Approx(s.rec.eta * d * plus1[i]).epsilon(1e-12));
    CHECK(j0.right[i] == doctest::Approx(-s.rec.eta * d * minus1[i]).epsilon(1e-12));
  }
}

TEST_CASE("penalties vanish for constant states and for eta = 0") {
  for (const char* key : {"advection", "burgers", "linsys", "euler"}) {
    Setup s(key, 2, 0.05);
    if (std::string(key) == "euler") {
      const auto& e = static_cast<const EulerEquations&>(s.flux->equation());
      s.state = project([&](double) { return e.conserved(1.1, 0.4, 0.8); }, s.mesh, 3, 2);
    } else {
      const int m = s.state.components();
      s.state = project([&](double) { return Vector::Constant(m, 0.7); }, s.mesh, m, 2);
    }
    const auto j0 = j0_edge_penalty(s.state, s.rec, *s.flux);
    const auto j1 = j1_volume_penalty(s.state, s.rec, *s.flux, s.op.quadrature());
    for (const auto* rows : {&j0.left, &j0.small, &j0.right, &j1.left, &j1.small, &j1.right}) {
      CHECK(max_abs(*rows) < 1e-12);
    }
  }
  Setup off("burgers", 2, 0.45);
  CHECK(off.rec.eta == 0.0);
  const auto j0 = j0_edge_penalty(off.state, off.rec, *off.flux);
  CHECK(max_abs(j0.small) == 0.0);
}

TEST_CASE("volume penalty vanishes at p = 0 and for global polynomials") {
  Setup p0("burgers", 0, 0.05);
  const auto j1 = j1_volume_penalty(p0.state, p0.rec, *p0.flux, p0.op.quadrature());
  CHECK(max_abs(j1.left) == 0.0);
  CHECK(max_abs(j1.small) == 0.0);
  CHECK(max_abs(j1.right) == 0.0);

  for (const char* key : {"advection", "burgers", "linsys"}) {
    Setup s(key, 3, 0.05);
    const int m = s.state.components();
    s.state = project([&](double x) { return Vector::Constant(m, 0.3 + x - 0.8 * x * x); }, s.mesh, m, 3);
    const auto rec = make_record(s.state, s.mesh->cut_pairs().front(), s.flux->equation(), 0.4);
    const auto j = j1_volume_penalty(s.state, rec, *s.flux, s.op.quadrature());
    CHECK(max_abs(j.left) < 1e-12);
    CHECK(max_abs(j.small) < 1e-12);
    CHECK(max_abs(j.right) < 1e-12);
  }
}

TEST_CASE("advection volume penalty collapses to the two-term form") {
  Setup s("advection", 3, 0.05, 9);
  const auto j1 = j1_volume_penalty(s.state, s.rec, *s.flux, s.op.quadrature());
  const auto& small = s.mesh->cell(s.rec.small);
  const auto& left = s.mesh->cell(s.rec.left);
  const Quadrature q(8);
  std::vector<double> left_rows(4, 0.0), small_rows(4, 0.0);
  for (int k = 0; k < q.size(); ++k) {
    const double x = small.center() + 0.5 * small.length * q.nodes()[k];
    const double w = 0.5 * small.length * q.weights()[k];
    const double d = evaluate(s.state, s.rec.left, x)(0) - evaluate(s.state, s.rec.small, x)(0);
    const auto dl = legendre_derivatives(3, reference_coordinate(left, x));
    const auto ds = legendre_derivatives(3, reference_coordinate(small, x));
    for (int i = 0; i < 4; ++i) {
      left_rows[i] += s.rec.eta * w * d * dl[i] * 2.0 / left.length;
      small_rows[i] -= s.rec.eta * w * d * ds[i] * 2.0 / small.length;
    }
  }
  for (int i = 0; i < 4; ++i) {
    CHECK(j1.left[i] == doctest::Approx(left_rows[i]).epsilon(1e-10));
    CHECK(j1.small[i] == doctest::Approx(small_rows[i]).epsilon(1e-10));
    CHECK(std::abs(j1.right[i]) < 1e-12);
  }
}

TEST_CASE("legacy penalty differs only in rows of the left neighbor") {
  Setup s("advection", 2, 0.05, 4);
  const auto j1 = j1_volume_penalty(s.state, s.rec, *s.flux, s.op.quadrature());
  const auto legacy = legacy_j1_advection(s.state, s.rec, *s.flux, s.op.quadrature());
  CHECK(max_abs(minus(j1.small, legacy.small)) < 1e-12);
  CHECK(max_abs(minus(j1.right, legacy.right)) < 1e-12);
  CHECK(max_abs(j1.left) > 1e-6);
  CHECK(max_abs(legacy.left) == 0.0);

  SpatialOptions opt;
  opt.stabilization = StabilizationMode::legacy;
  const SpatialOperator legacy_op(s.mesh, s.flux, 2, opt);
  const auto full = s.op.residual(s.state, 0.0);
  const auto old = legacy_op.residual(s.state, 0.0);
  const auto diff = minus(full, old);
  CHECK(max_abs(s.rows(diff, s.rec.left)) > 1e-6);
  for (std::size_t j = 0; j < s.state.cells(); ++j) {
    if (j != s.rec.left) CHECK(max_abs(s.rows(diff, j)) < 1e-12);
  }

  Setup p0("advection", 0, 0.05);
  CHECK(max_abs(legacy_j1_advection(p0.state, p0.rec, *p0.flux, p0.op.quadrature()).small) == 0.0);
  Setup b("burgers", 1, 0.05);
  CHECK_THROWS_AS(legacy_j1_advection(b.state, b.rec, *b.flux, b.op.quadrature()), UnsupportedError);
}

TEST_CASE("grouped small-cell rows equal the literal J0 + J1 sum") {
  for (const char* key : {"advection", "burgers", "linsys", "euler"}) {
    for (const int p : {0, 1, 3}) {
      Setup s(key, p, 0.02, 17);
      SpatialOptions off;
      off.stabilization = StabilizationMode::off;
      const SpatialOperator plain(s.mesh, s.flux, p, off);
      const auto a = plain.residual(s.state, 0.0);
      const auto full = s.op.residual(s.state, 0.0);
      const auto j0 = j0_edge_penalty(s.state, s.rec, *s.flux);
      const auto j1 = j1_volume_penalty(s.state, s.rec, *s.flux, s.op.quadrature());
      const auto diff = minus(full, a);
      const double scale = 1.0 + max_abs(full);
      CHECK(max_abs(minus(s.rows(diff, s.rec.small), plus(j0.small, j1.small))) < 1e-11 * scale);
      CHECK(max_abs(minus(s.rows(diff, s.rec.left), plus(j0.left, j1.left))) < 1e-11 * scale);
      CHECK(max_abs(minus(s.rows(diff, s.rec.right), plus(j0.right, j1.right))) < 1e-11 * scale);
      // And the grouped form used for the small cell.
      const auto ext = extended_small_rows(s.state, s.rec, *s.flux, s.op.quadrature());
      const auto as = s.rows(a, s.rec.small);
      std::vector<double> grouped(ext.size());
      for (std::size_t i = 0; i < ext.size(); ++i) grouped[i] = s.rec.eta * (ext[i] - as[i]);
      CHECK(max_abs(minus(grouped, plus(j0.small, j1.small))) < 1e-11 * scale);
    }
  }
}

TEST_CASE("penalties conserve mass over the extended control volume") {
  for (const char* key : {"advection", "burgers", "linsys", "euler"}) {
    Setup s(key, 2, 0.03, 21);
    const auto j0 = j0_edge_penalty(s.state, s.rec, *s.flux);
    const auto j1 = j1_volume_penalty(s.state, s.rec, *s.flux, s.op.quadrature());
    const int modes = s.state.modes();
    for (int c = 0; c < s.state.components(); ++c) {
      // Test function 1 on the three cells is phi_0 on each.
      const std::size_t i = static_cast<std::size_t>(c * modes);
      const double total = j0.left[i] + j0.small[i] + j0.right[i] + j1.left[i] + j1.small[i] + j1.right[i];
      CHECK(std::abs(total) < 1e-12);
    }
  }
}

TEST_CASE("scalar energy form is nonnegative") {
  for (const char* key : {"advection", "burgers"}) {
    for (const int p : {0, 1, 2, 3}) {
      Setup s(key, p, 1e-3);
      SplitMix64 rng(static_cast<std::uint64_t>(100 + p));
      for (int t = 0; t < 50; ++t) {
        testing::randomize(s.state, rng);
        CHECK(s.op.energy_form(s.state) >= -1e-12);
      }
    }
  }
}
