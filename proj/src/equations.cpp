#include "cutdg/equations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "cutdg/errors.hpp"

namespace cutdg {

namespace {

Vector scalar(double value) {
  Vector v(1);
  v(0) = value;
  return v;
}

Matrix scalar_matrix(double value) {
  Matrix m(1, 1);
  m(0, 0) = value;
  return m;
}

Eigensystem scalar_eigen(double lambda) {
  return {scalar_matrix(1.0), scalar(lambda), scalar_matrix(1.0)};
}

}  // namespace

double EquationSystem::max_wave_speed(const Vector& u) const {
  return eigen(u).lambda.cwiseAbs().maxCoeff();
}

void EquationSystem::check_admissible(const Vector&) const {}

bool EquationSystem::is_admissible(const Vector&) const { return true; }

Eigensystem EquationSystem::averaged_eigen(const Vector& left, const Vector& right) const {
  return eigen(0.5 * (left + right));
}

// ---------------------------------------------------------------------------
// Scalar laws

Vector AdvectionEquation::flux(const Vector& u) const { return beta_ * u; }
Matrix AdvectionEquation::jacobian(const Vector&) const { return scalar_matrix(beta_); }
Eigensystem AdvectionEquation::eigen(const Vector&) const { return scalar_eigen(beta_); }

Vector BurgersEquation::flux(const Vector& u) const { return scalar(0.5 * u(0) * u(0)); }
Matrix BurgersEquation::jacobian(const Vector& u) const { return scalar_matrix(u(0)); }
Eigensystem BurgersEquation::eigen(const Vector& u) const { return scalar_eigen(u(0)); }

// ---------------------------------------------------------------------------
// Linear systems

Eigensystem linear_system_eigen(const Matrix& a) {
  const auto m = a.rows();
  if (m == 0 || a.cols() != m) {
    throw HyperbolicityError("linear_system_eigen: matrix must be square and non-empty");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(a), true);
  if (solver.info() != Eigen::Success) {
    throw HyperbolicityError("linear_system_eigen: eigenvalue iteration failed");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(values(i).imag()) > 1e-10 * scale) {
      std::ostringstream msg;
      msg << "linear_system_eigen: complex eigenvalue " << values(i).real() << " + "
          << values(i).imag() << "i";
      throw HyperbolicityError(msg.str());
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return values(i).real() < values(j).real();
  });

  Eigensystem eig;
  eig.q.resize(m, m);
  eig.lambda.resize(m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto src = order[static_cast<std::size_t>(c)];
    eig.lambda(c) = values(src).real();
    Vector column = vectors.col(src).real();
    column /= column.norm();
    eig.q.col(c) = column;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd(eig.q));
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) {
    throw HyperbolicityError("linear_system_eigen: matrix is defective (no eigenvector basis)");
  }
  eig.q_inv = lu.inverse();

  const Matrix rebuilt = eig.q * eig.lambda.asDiagonal() * eig.q_inv;
  if ((rebuilt - a).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw HyperbolicityError("linear_system_eigen: ill-conditioned eigenvector basis");
  }
  return eig;
}

Matrix coupled_wave_matrix() {
  Matrix a(3, 3);
  a << 4.0, 2.5, -7.0,
      -1.0, 0.5, 7.0,
      -0.5, 1.25, 1.5;
  return a;
}

LinearSystem::LinearSystem(Matrix a) : a_(std::move(a)), eig_(linear_system_eigen(a_)) {}

// ---------------------------------------------------------------------------
// Euler

double EulerEquations::pressure(const Vector& u) const {
  return (gamma_ - 1.0) * (u(2) - 0.5 * u(1) * u(1) / u(0));
}

Vector EulerEquations::primitive(const Vector& u) const {
  Vector w(3);
  w << u(0), u(1) / u(0), pressure(u);
  return w;
}

Vector EulerEquations::conserved(double rho, double v, double p) const {
  Vector u(3);
  u << rho, rho * v, p / (gamma_ - 1.0) + 0.5 * rho * v * v;
  return u;
}

bool EulerEquations::is_admissible(const Vector& u) const {
  return std::isfinite(u(0)) && std::isfinite(u(1)) && std::isfinite(u(2)) &&
         u(0) > kAdmissibilityFloor && pressure(u) > kAdmissibilityFloor;
}

void EulerEquations::check_admissible(const Vector& u) const {
  if (!(u(0) > kAdmissibilityFloor)) {
    std::ostringstream msg;
    msg << "inadmissible Euler state: density " << u(0);
    throw AdmissibilityError(msg.str());
  }
  const double p = pressure(u);
  if (!(p > kAdmissibilityFloor)) {
    std::ostringstream msg;
    msg << "inadmissible Euler state: pressure " << p << " (rho=" << u(0) << ", m=" << u(1)
        << ", E=" << u(2) << ")";
    throw AdmissibilityError(msg.str());
  }
}

Vector EulerEquations::flux(const Vector& u) const {
  const double v = u(1) / u(0);
  const double p = pressure(u);
  Vector f(3);
  f << u(1), u(1) * v + p, (u(2) + p) * v;
  return f;
}

Matrix EulerEquations::jacobian(const Vector& u) const {
  const double g = gamma_;
  const double v = u(1) / u(0);
  const double e = u(2) / u(0);
  Matrix a(3, 3);
  a << 0.0, 1.0, 0.0,
      0.5 * (g - 3.0) * v * v, (3.0 - g) * v, g - 1.0,
      (g - 1.0) * v * v * v - g * e * v, g * e - 1.5 * (g - 1.0) * v * v, g * v;
  return a;
}

Eigensystem EulerEquations::eigen_from_velocity_enthalpy(double v, double enthalpy) const {
  const double c2 = (gamma_ - 1.0) * (enthalpy - 0.5 * v * v);
  if (!(c2 > 0.0)) {
    std::ostringstream msg;
    msg << "inadmissible Euler state: squared sound speed " << c2;
    throw AdmissibilityError(msg.str());
  }
  const double c = std::sqrt(c2);
  Eigensystem eig;
  eig.lambda.resize(3);
  eig.lambda << v - c, v, v + c;
  eig.q.resize(3, 3);
  eig.q << 1.0, 1.0, 1.0,
      v - c, v, v + c,
      enthalpy - v * c, 0.5 * v * v, enthalpy + v * c;
  // Closed-form left eigenvectors.
  const double b2 = (gamma_ - 1.0) / c2;
  const double b1 = 0.5 * v * v * b2;
  eig.q_inv.resize(3, 3);
  eig.q_inv << 0.5 * (b1 + v / c), -0.5 * (b2 * v + 1.0 / c), 0.5 * b2,
      1.0 - b1, b2 * v, -b2,
      0.5 * (b1 - v / c), -0.5 * (b2 * v - 1.0 / c), 0.5 * b2;
  return eig;
}

Eigensystem EulerEquations::eigen(const Vector& u) const {
  check_admissible(u);
  const double v = u(1) / u(0);
  const double enthalpy = (u(2) + pressure(u)) / u(0);
  return eigen_from_velocity_enthalpy(v, enthalpy);
}

double EulerEquations::max_wave_speed(const Vector& u) const {
  check_admissible(u);
  const double c = std::sqrt(gamma_ * pressure(u) / u(0));
  return std::abs(u(1) / u(0)) + c;
}

std::pair<double, double> EulerEquations::roe_average(const Vector& left,
                                                      const Vector& right) const {
  check_admissible(left);
  check_admissible(right);
  const double sl = std::sqrt(left(0));
  const double sr = std::sqrt(right(0));
  const double vl = left(1) / left(0);
  const double vr = right(1) / right(0);
  const double hl = (left(2) + pressure(left)) / left(0);
  const double hr = (right(2) + pressure(right)) / right(0);
  if (roe_mode_ == RoeAverageMode::literal) {
    return {0.5 * (sl * vl + sr * vr), 0.5 * (sl * hl + sr * hr)};
  }
  return {(sl * vl + sr * vr) / (sl + sr), (sl * hl + sr * hr) / (sl + sr)};
}

Eigensystem EulerEquations::averaged_eigen(const Vector& left, const Vector& right) const {
  const auto [v, enthalpy] = roe_average(left, right);
  return eigen_from_velocity_enthalpy(v, enthalpy);
}

Vector euler_flux(const Vector& u) {
  static const EulerEquations euler;
  euler.check_admissible(u);
  return euler.flux(u);
}

// ---------------------------------------------------------------------------
// Manufactured and exact solutions

ManufacturedCase manufactured_burgers() {
  constexpr double k = 4.0 * std::numbers::pi;
  ManufacturedCase c;
  c.name = "burgers-manufactured";
  c.equation = std::make_shared<BurgersEquation>();
  c.exact = [](double x, double t) { return scalar(std::sin(k * (x - t))); };
  c.source = [](double x, double t) {
    const double phase = k * (x - t);
    return scalar(k * std::cos(phase) * (std::sin(phase) - 1.0));
  };
  return c;
}

ManufacturedCase manufactured_euler() {
  constexpr double k = 2.0 * std::numbers::pi;
  auto euler = std::make_shared<EulerEquations>();
  ManufacturedCase c;
  c.name = "euler-manufactured";
  c.equation = euler;
  c.exact = [euler](double x, double t) {
    const double s = std::sin(k * (x - t));
    const double co = std::cos(k * (x - t));
    return euler->conserved(2.0 + s, s, 2.0 + co);
  };
  // The profile depends on x - t only, so g = d/dx [f(u) - u].
  c.source = [euler](double x, double t) {
    const double gm1 = euler->gamma() - 1.0;
    const double s = std::sin(k * (x - t));
    const double co = std::cos(k * (x - t));
    const double rho = 2.0 + s, v = s, p = 2.0 + co;
    const double drho = k * co, dv = k * co, dp = -k * s;
    const double energy = p / gm1 + 0.5 * rho * v * v;
    const double denergy = dp / gm1 + 0.5 * drho * v * v + rho * v * dv;
    Vector g(3);
    g(0) = drho * (v - 1.0) + rho * dv;
    g(1) = drho * v * (v - 1.0) + rho * dv * (2.0 * v - 1.0) + dp;
    g(2) = (denergy + dp) * v + (energy + p) * dv - denergy;
    return g;
  };
  return c;
}

Profile linear_system_exact(Profile u0, const Eigensystem& eig, double t, double x_left,
                            double length) {
  return [u0 = std::move(u0), eig, t, x_left, length](double x) {
    const auto m = eig.lambda.size();
    Vector w(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      double xi = x - eig.lambda(i) * t;
      xi = x_left + (xi - x_left) - length * std::floor((xi - x_left) / length);
      w(i) = eig.q_inv.row(i).dot(u0(xi));
    }
    return Vector(eig.q * w);
  };
}

ManufacturedCase linear_system_case() {
  constexpr double k = 2.0 * std::numbers::pi;
  auto system = std::make_shared<LinearSystem>(coupled_wave_matrix());
  Profile u0 = [](double x) {
    Vector u(3);
    u << std::sin(k * x), -std::cos(k * x) / 3.0, 0.5 * std::sin(k * x);
    return u;
  };
  ManufacturedCase c;
  c.name = "linsys";
  c.equation = system;
  c.exact = [u0, eig = system->eigensystem()](double x, double t) {
    return linear_system_exact(u0, eig, t)(x);
  };
  return c;
}

std::shared_ptr<const EquationSystem> make_equation(std::string_view key) {
  if (key == "advection") return std::make_shared<AdvectionEquation>(1.0);
  if (key == "burgers") return std::make_shared<BurgersEquation>();
  if (key == "linsys") return std::make_shared<LinearSystem>(coupled_wave_matrix());
  if (key == "euler") return std::make_shared<EulerEquations>();
  throw DomainError("unknown equation key '" + std::string(key) + "'");
}

}  // namespace cutdg
