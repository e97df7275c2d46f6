#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cutdg/equations.hpp"
#include "cutdg/errors.hpp"
#include "cutdg/mesh.hpp"
#include "support.hpp"

using namespace cutdg;
using cutdg::testing::scalar;
using cutdg::testing::vec;

namespace {

// Central differences of u_t + f(u)_x - g at (x, t).
Vector manufactured_residual(const ManufacturedCase& c, double x, double t, double step = 1e-5) {
  const Vector ut = (c.exact(x, t + step) - c.exact(x, t - step)) / (2.0 * step);
  const Vector fx = (c.equation->flux(c.exact(x + step, t)) -
                     c.equation->flux(c.exact(x - step, t))) /
                    (2.0 * step);
  return ut + fx - c.source(x, t);
}

Matrix fd_jacobian(const EquationSystem& eq, const Vector& u, double eps = 1e-6) {
  Matrix j(u.size(), u.size());
  for (Eigen::Index c = 0; c < u.size(); ++c) {
    Vector up = u, um = u;
    up(c) += eps;
    um(c) -= eps;
    j.col(c) = (eq.flux(up) - eq.flux(um)) / (2.0 * eps);
  }
  return j;
}

Vector random_euler_state(const EulerEquations& e, SplitMix64& rng) {
  const double rho = 0.1 + 2.0 * rng.uniform();
  const double v = -2.0 + 4.0 * rng.uniform();
  const double p = 0.1 + 2.0 * rng.uniform();
  return e.conserved(rho, v, p);
}

}  // namespace

TEST_CASE("euler flux, pressure and equation of state") {
  const EulerEquations e;
  const Vector u = e.conserved(2.0, 0.0, 3.0);
  CHECK(u(0) == doctest::Approx(2.0));
  CHECK(u(1) == doctest::Approx(0.0));
  CHECK(u(2) == doctest::Approx(7.5));
  const Vector f = e.flux(e.conserved(1.0, 2.0, 1.0));
  CHECK(f(0) == doctest::Approx(2.0));
  CHECK(f(1) == doctest::Approx(5.0));
  // E = 1/0.4 + 2 = 4.5, (E + p) v = 11
  CHECK(f(2) == doctest::Approx(11.0));
  CHECK_THROWS_AS(euler_flux(vec({-1.0, 0.0, 1.0})), AdmissibilityError);
  CHECK_THROWS_AS(euler_flux(vec({1.0, 0.0, -1.0})), AdmissibilityError);
  CHECK_THROWS_WITH_AS(e.check_admissible(vec({1.0, 0.0, -1.0})), doctest::Contains("pressure"),
                       AdmissibilityError);
}

TEST_CASE("jacobians agree with finite differences of the flux") {
  SplitMix64 rng(7);
  const EulerEquations euler;
  const BurgersEquation burgers;
  const LinearSystem lin(coupled_wave_matrix());
  for (int s = 0; s < 50; ++s) {
    const Vector ue = random_euler_state(euler, rng);
    CHECK((fd_jacobian(euler, ue) - euler.jacobian(ue)).cwiseAbs().maxCoeff() < 1e-6);
    const Vector ub = scalar(-3.0 + 6.0 * rng.uniform());
    CHECK((fd_jacobian(burgers, ub) - burgers.jacobian(ub)).cwiseAbs().maxCoeff() < 1e-8);
    const Vector ul = vec({rng.uniform(), rng.uniform(), rng.uniform()});
    CHECK((fd_jacobian(lin, ul) - lin.jacobian(ul)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("eigensystems reconstruct the jacobian") {
  SplitMix64 rng(11);
  const EulerEquations euler;
  for (int s = 0; s < 100; ++s) {
    const Vector u = random_euler_state(euler, rng);
    const auto eig = euler.eigen(u);
    const Matrix a = euler.jacobian(u);
    const Matrix rebuilt = eig.q * eig.lambda.asDiagonal() * eig.q_inv;
    CHECK((rebuilt - a).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + a.cwiseAbs().maxCoeff()));
    CHECK(eig.lambda(0) <= eig.lambda(1));
    CHECK(eig.lambda(1) <= eig.lambda(2));
    CHECK(euler.max_wave_speed(u) == doctest::Approx(eig.lambda.cwiseAbs().maxCoeff()).epsilon(1e-12));
  }
  const auto lin = linear_system_eigen(coupled_wave_matrix());
  CHECK(lin.lambda(0) == doctest::Approx(-2.0));
  CHECK(lin.lambda(1) == doctest::Approx(3.0));
  CHECK(lin.lambda(2) == doctest::Approx(5.0));
  CHECK((lin.q * lin.lambda.asDiagonal() * lin.q_inv - coupled_wave_matrix()).cwiseAbs().maxCoeff() <
        1e-10);

  Matrix id = Matrix::Identity(2, 2);
  const auto e1 = linear_system_eigen(id);
  CHECK(e1.lambda(0) == 1.0);
  CHECK(e1.lambda(1) == 1.0);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  const auto e2 = linear_system_eigen(d);
  CHECK(e2.lambda(0) == doctest::Approx(-1.0));
  CHECK(e2.lambda(1) == doctest::Approx(3.0));

  Matrix rot = Matrix::Zero(2, 2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  CHECK_THROWS_AS(linear_system_eigen(rot), HyperbolicityError);
}

TEST_CASE("roe averages") {
  const EulerEquations standard;
  const EulerEquations literal(1.4, RoeAverageMode::literal);
  const Vector u = standard.conserved(1.3, 0.4, 0.9);
  const auto [v, hh] = standard.roe_average(u, u);
  CHECK(v == doctest::Approx(0.4));
  const double enthalpy = (u(2) + standard.pressure(u)) / u(0);
  CHECK(hh == doctest::Approx(enthalpy));
  // The literal half-sums are not consistent: (sqrt(rho), sqrt(rho) v, sqrt(rho) H).
  const auto [lv, lh] = literal.roe_average(u, u);
  CHECK(lv == doctest::Approx(std::sqrt(1.3) * 0.4));
  CHECK(lh == doctest::Approx(std::sqrt(1.3) * enthalpy));
}

TEST_CASE("manufactured solutions satisfy the balance law") {
  const auto burgers = manufactured_burgers();
  CHECK(burgers.exact(0.25, 0.0)(0) == doctest::Approx(0.0).epsilon(1e-14));
  for (const double x : {0.1, 0.37, 0.8}) {
    CHECK(burgers.exact(x, 1.0)(0) == doctest::Approx(burgers.exact(x, 0.0)(0)).epsilon(1e-12));
  }
  const auto euler = manufactured_euler();
  const auto* e = dynamic_cast<const EulerEquations*>(euler.equation.get());
  REQUIRE(e != nullptr);
  const Vector prim = e->primitive(euler.exact(0.0, 0.0));
  CHECK(prim(0) == doctest::Approx(2.0));
  CHECK(prim(1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(prim(2) == doctest::Approx(3.0));

  CHECK(manufactured_residual(burgers, 0.3, 0.2).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(manufactured_residual(euler, 0.3, 0.2).cwiseAbs().maxCoeff() < 1e-6);
  SplitMix64 rng(3);
  for (int s = 0; s < 100; ++s) {
    const double x = rng.uniform();
    const double t = rng.uniform();
    CHECK(manufactured_residual(burgers, x, t).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(manufactured_residual(euler, x, t).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("linear system exact solution") {
  const auto c = linear_system_case();
  const auto* lin = dynamic_cast<const LinearSystem*>(c.equation.get());
  REQUIRE(lin != nullptr);
  const Vector u0 = c.exact(0.2, 0.0);
  CHECK(u0(0) == doctest::Approx(std::sin(0.4 * std::numbers::pi)));
  CHECK(u0(1) == doctest::Approx(-std::cos(0.4 * std::numbers::pi) / 3.0));
  CHECK(u0(2) == doctest::Approx(0.5 * std::sin(0.4 * std::numbers::pi)));
  // Integer speeds and unit period: the solution returns at t = 1.
  for (const double x : {0.05, 0.5, 0.93}) {
    CHECK((c.exact(x, 1.0) - c.exact(x, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SplitMix64 rng(5);
  const double step = 1e-5;
  for (int s = 0; s < 20; ++s) {
    const double x = rng.uniform(), t = rng.uniform();
    const Vector ut = (c.exact(x, t + step) - c.exact(x, t - step)) / (2.0 * step);
    const Vector ux = (c.exact(x + step, t) - c.exact(x - step, t)) / (2.0 * step);
    CHECK((ut + lin->matrix() * ux).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("equation keys") {
  CHECK(make_equation("advection")->key() == "advection");
  CHECK(make_equation("burgers")->components() == 1);
  CHECK(make_equation("linsys")->components() == 3);
  CHECK(make_equation("euler")->components() == 3);
  CHECK_THROWS(make_equation("shallow-water"));
}
