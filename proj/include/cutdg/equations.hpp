#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "cutdg/types.hpp"

namespace cutdg {

enum class EquationKind { advection, burgers, linear_system, euler };

/// A one-dimensional conservation law u_t + f(u)_x = 0 with m components.
class EquationSystem {
 public:
  virtual ~EquationSystem() = default;

  virtual EquationKind kind() const = 0;
  /// Key used in configuration files ("advection", "burgers", ...).
  virtual std::string_view key() const = 0;
  virtual int components() const = 0;

  virtual Vector flux(const Vector& u) const = 0;
  virtual Matrix jacobian(const Vector& u) const = 0;
  /// Eigendecomposition of the flux Jacobian, eigenvalues ascending.
  virtual Eigensystem eigen(const Vector& u) const = 0;
  virtual double max_wave_speed(const Vector& u) const;

  /// Throws AdmissibilityError naming the offending quantity.
  virtual void check_admissible(const Vector& u) const;
  virtual bool is_admissible(const Vector& u) const;

  /// Eigensystem at an average of two states, used to decide flow directions
  /// around a small cut cell. Default: arithmetic mean.
  virtual Eigensystem averaged_eigen(const Vector& left, const Vector& right) const;

  /// True when f is linear in u (the semi-discrete operator is then a matrix).
  virtual bool is_linear() const { return false; }
};

class AdvectionEquation final : public EquationSystem {
 public:
  explicit AdvectionEquation(double beta = 1.0) : beta_(beta) {}
  EquationKind kind() const override { return EquationKind::advection; }
  std::string_view key() const override { return "advection"; }
  int components() const override { return 1; }
  Vector flux(const Vector& u) const override;
  Matrix jacobian(const Vector& u) const override;
  Eigensystem eigen(const Vector& u) const override;
  bool is_linear() const override { return true; }
  double beta() const { return beta_; }

 private:
  double beta_;
};

class BurgersEquation final : public EquationSystem {
 public:
  EquationKind kind() const override { return EquationKind::burgers; }
  std::string_view key() const override { return "burgers"; }
  int components() const override { return 1; }
  Vector flux(const Vector& u) const override;
  Matrix jacobian(const Vector& u) const override;
  Eigensystem eigen(const Vector& u) const override;
};

/// u_t + A u_x = 0 with constant, diagonalizable A.
class LinearSystem final : public EquationSystem {
 public:
  explicit LinearSystem(Matrix a);
  EquationKind kind() const override { return EquationKind::linear_system; }
  std::string_view key() const override { return "linsys"; }
  int components() const override { return static_cast<int>(a_.rows()); }
  Vector flux(const Vector& u) const override { return a_ * u; }
  Matrix jacobian(const Vector&) const override { return a_; }
  Eigensystem eigen(const Vector&) const override { return eig_; }
  bool is_linear() const override { return true; }
  const Matrix& matrix() const { return a_; }
  const Eigensystem& eigensystem() const { return eig_; }

 private:
  Matrix a_;
  Eigensystem eig_;
};

/// How the averaged state for the direction matrices is formed.
enum class RoeAverageMode {
  /// Density-weighted velocity and enthalpy (consistent: avg(u,u) = u).
  standard,
  /// Half-sums of sqrt(rho), sqrt(rho) v, sqrt(rho) H taken as (rho, v, H).
  literal,
};

/// Ideal-gas compressible Euler equations in conserved variables (rho, rho v, E).
class EulerEquations final : public EquationSystem {
 public:
  explicit EulerEquations(double gamma = 1.4, RoeAverageMode mode = RoeAverageMode::standard)
      : gamma_(gamma), roe_mode_(mode) {}
  EquationKind kind() const override { return EquationKind::euler; }
  std::string_view key() const override { return "euler"; }
  int components() const override { return 3; }
  Vector flux(const Vector& u) const override;
  Matrix jacobian(const Vector& u) const override;
  Eigensystem eigen(const Vector& u) const override;
  double max_wave_speed(const Vector& u) const override;
  void check_admissible(const Vector& u) const override;
  bool is_admissible(const Vector& u) const override;
  Eigensystem averaged_eigen(const Vector& left, const Vector& right) const override;

  double gamma() const { return gamma_; }
  double pressure(const Vector& u) const;
  /// (rho, v, p) from conserved variables.
  Vector primitive(const Vector& u) const;
  Vector conserved(double rho, double v, double p) const;
  /// Eigensystem of the Jacobian written in terms of velocity and total enthalpy.
  Eigensystem eigen_from_velocity_enthalpy(double v, double enthalpy) const;
  /// Roe-averaged (v, H) of two admissible states.
  std::pair<double, double> roe_average(const Vector& left, const Vector& right) const;

 private:
  double gamma_;
  RoeAverageMode roe_mode_;
};

/// Positivity floor for density and pressure.
inline constexpr double kAdmissibilityFloor = 1e-12;

/// Flux of the Euler system with gamma = 1.4; throws on inadmissible input.
Vector euler_flux(const Vector& u);

/// Real eigendecomposition of a hyperbolic matrix, eigenvalues ascending.
/// Throws HyperbolicityError for complex or defective spectra.
Eigensystem linear_system_eigen(const Matrix& a);

/// The 3x3 matrix with eigenvalues {-2, 3, 5} used in the linear-system tests.
Matrix coupled_wave_matrix();

using Profile = std::function<Vector(double x)>;
using SpaceTimeField = std::function<Vector(double x, double t)>;

/// Manufactured problem: exact solution and the source that makes it exact.
struct ManufacturedCase {
  std::string name;
  std::shared_ptr<const EquationSystem> equation;
  SpaceTimeField exact;
  SpaceTimeField source;  // empty when g = 0
  double x_left = 0.0;
  double x_right = 1.0;
  double final_time = 1.0;
};

ManufacturedCase manufactured_burgers();
ManufacturedCase manufactured_euler();
/// Linear system with A = coupled_wave_matrix() and periodic sine/cosine data.
ManufacturedCase linear_system_case();

/// Exact periodic solution of u_t + A u_x = 0: each characteristic variable of
/// u0 is shifted by lambda_i t, wrapped into [x_left, x_left + length).
Profile linear_system_exact(Profile u0, const Eigensystem& eig, double t, double x_left = 0.0,
                            double length = 1.0);

std::shared_ptr<const EquationSystem> make_equation(std::string_view key);

}  // namespace cutdg
