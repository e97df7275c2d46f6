#include "cutdg/riemann.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cutdg/errors.hpp"

namespace cutdg {

namespace {

Vector scalar(double v) {
  Vector out(1);
  out(0) = v;
  return out;
}

Matrix scalar_matrix(double v) {
  Matrix out(1, 1);
  out(0, 0) = v;
  return out;
}

}  // namespace

UpwindFlux::UpwindFlux(std::shared_ptr<const AdvectionEquation> equation)
    : NumericalFlux(equation), beta_(equation->beta()) {}

Vector UpwindFlux::evaluate(const Vector& left, const Vector& right) const {
  if (beta_ > 0.0) return scalar(beta_ * left(0));
  if (beta_ < 0.0) return scalar(beta_ * right(0));
  return scalar(0.0);
}

std::pair<Matrix, Matrix> UpwindFlux::jacobians(const Vector&, const Vector&) const {
  return {scalar_matrix(beta_ > 0.0 ? beta_ : 0.0), scalar_matrix(beta_ < 0.0 ? beta_ : 0.0)};
}

GodunovBurgersFlux::GodunovBurgersFlux() : NumericalFlux(std::make_shared<BurgersEquation>()) {}

Vector GodunovBurgersFlux::evaluate(const Vector& left, const Vector& right) const {
  const double a = std::max(left(0), 0.0);
  const double b = std::min(right(0), 0.0);
  return scalar(std::max(0.5 * a * a, 0.5 * b * b));
}

std::pair<Matrix, Matrix> GodunovBurgersFlux::jacobians(const Vector& left,
                                                        const Vector& right) const {
  const double a = std::max(left(0), 0.0);
  const double b = std::min(right(0), 0.0);
  const double fa = 0.5 * a * a;
  const double fb = 0.5 * b * b;
  bool left_branch;
  if (fa != fb) {
    left_branch = fa > fb;
  } else {
    left_branch = left(0) + right(0) >= 0.0;
  }
  if (left_branch) return {scalar_matrix(a), scalar_matrix(0.0)};
  return {scalar_matrix(0.0), scalar_matrix(b)};
}

LinearSystemFlux::LinearSystemFlux(std::shared_ptr<const LinearSystem> equation)
    : NumericalFlux(equation) {
  const auto& eig = equation->eigensystem();
  const int m = equation->components();
  Matrix lp = Matrix::Zero(m, m);
  Matrix lm = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    lp(i, i) = std::max(eig.lambda(i), 0.0);
    lm(i, i) = std::min(eig.lambda(i), 0.0);
  }
  a_plus_ = eig.q * lp * eig.q_inv;
  a_minus_ = eig.q * lm * eig.q_inv;
}

Vector LinearSystemFlux::evaluate(const Vector& left, const Vector& right) const {
  return a_plus_ * left + a_minus_ * right;
}

RoeFlux::RoeFlux(std::shared_ptr<const EulerEquations> equation, RoeJacobianMode mode,
                 bool entropy_fix)
    : NumericalFlux(equation), euler_(*equation), mode_(mode), entropy_fix_(entropy_fix) {}

Matrix RoeFlux::dissipation_matrix(const Vector& left, const Vector& right) const {
  const auto [v, enthalpy] = euler_.roe_average(left, right);
  const Eigensystem eig = euler_.eigen_from_velocity_enthalpy(v, enthalpy);
  Matrix abs_lambda = Matrix::Zero(3, 3);
  const double delta = 0.1 * eig.lambda.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) {
    double l = std::abs(eig.lambda(i));
    if (entropy_fix_ && l < delta) l = (l * l + delta * delta) / (2.0 * delta);
    abs_lambda(i, i) = l;
  }
  return eig.q * abs_lambda * eig.q_inv;
}

Vector RoeFlux::evaluate(const Vector& left, const Vector& right) const {
  const Vector fl = euler_.flux(left);
  const Vector fr = euler_.flux(right);
  return 0.5 * (fl + fr) - 0.5 * dissipation_matrix(left, right) * (right - left);
}

std::pair<Matrix, Matrix> RoeFlux::jacobians(const Vector& left, const Vector& right) const {
  if (mode_ == RoeJacobianMode::finite_difference) {
    return finite_difference_jacobians(*this, left, right);
  }
  const Matrix abs_a = dissipation_matrix(left, right);
  return {0.5 * euler_.jacobian(left) + 0.5 * abs_a, 0.5 * euler_.jacobian(right) - 0.5 * abs_a};
}

std::pair<Matrix, Matrix> finite_difference_jacobians(const NumericalFlux& flux,
                                                      const Vector& left, const Vector& right) {
  const int m = static_cast<int>(left.size());
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  Matrix jl(m, m), jr(m, m);
  for (int j = 0; j < m; ++j) {
    const double hl = root_eps * (1.0 + std::abs(left(j)));
    Vector lp = left, lm = left;
    lp(j) += hl;
    lm(j) -= hl;
    jl.col(j) = (flux.evaluate(lp, right) - flux.evaluate(lm, right)) / (2.0 * hl);

    const double hr = root_eps * (1.0 + std::abs(right(j)));
    Vector rp = right, rm = right;
    rp(j) += hr;
    rm(j) -= hr;
    jr.col(j) = (flux.evaluate(left, rp) - flux.evaluate(left, rm)) / (2.0 * hr);
  }
  return {jl, jr};
}

std::shared_ptr<const NumericalFlux> make_flux(std::string_view key,
                                               std::shared_ptr<const EquationSystem> equation,
                                               const FluxOptions& options) {
  auto mismatch = [&] {
    return UnsupportedError("flux '" + std::string(key) + "' does not apply to equation '" +
                            std::string(equation->key()) + "'");
  };
  if (key == "upwind") {
    auto adv = std::dynamic_pointer_cast<const AdvectionEquation>(equation);
    if (!adv) throw mismatch();
    return std::make_shared<UpwindFlux>(adv);
  }
  if (key == "godunov") {
    if (equation->kind() != EquationKind::burgers) throw mismatch();
    return std::make_shared<GodunovBurgersFlux>();
  }
  if (key == "linsys-exact") {
    auto sys = std::dynamic_pointer_cast<const LinearSystem>(equation);
    if (!sys) throw mismatch();
    return std::make_shared<LinearSystemFlux>(sys);
  }
  if (key == "roe") {
    auto euler = std::dynamic_pointer_cast<const EulerEquations>(equation);
    if (!euler) throw mismatch();
    return std::make_shared<RoeFlux>(euler, options.roe_jacobian, options.entropy_fix);
  }
  throw UnsupportedError("unknown flux '" + std::string(key) + "'");
}

std::string_view default_flux_key(const EquationSystem& equation) {
  switch (equation.kind()) {
    case EquationKind::advection: return "upwind";
    case EquationKind::burgers: return "godunov";
    case EquationKind::linear_system: return "linsys-exact";
    case EquationKind::euler: return "roe";
  }
  return "upwind";
}

}  // namespace cutdg
