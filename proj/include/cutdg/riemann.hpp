#pragma once

#include <memory>
#include <string_view>
#include <utility>

#include "cutdg/equations.hpp"
#include "cutdg/types.hpp"

namespace cutdg {

/// Two-point numerical flux H(u-, u+) with its Jacobians in both arguments.
class NumericalFlux {
 public:
  explicit NumericalFlux(std::shared_ptr<const EquationSystem> equation)
      : equation_(std::move(equation)) {}
  virtual ~NumericalFlux() = default;

  virtual std::string_view key() const = 0;
  virtual Vector evaluate(const Vector& left, const Vector& right) const = 0;
  /// (dH/du-, dH/du+).
  virtual std::pair<Matrix, Matrix> jacobians(const Vector& left, const Vector& right) const = 0;

  const EquationSystem& equation() const { return *equation_; }
  const std::shared_ptr<const EquationSystem>& equation_ptr() const { return equation_; }

 private:
  std::shared_ptr<const EquationSystem> equation_;
};

/// Upwind flux for u_t + beta u_x = 0.
class UpwindFlux final : public NumericalFlux {
 public:
  explicit UpwindFlux(std::shared_ptr<const AdvectionEquation> equation);
  std::string_view key() const override { return "upwind"; }
  Vector evaluate(const Vector& left, const Vector& right) const override;
  std::pair<Matrix, Matrix> jacobians(const Vector& left, const Vector& right) const override;

 private:
  double beta_;
};

/// Exact Riemann solver flux for Burgers' equation.
class GodunovBurgersFlux final : public NumericalFlux {
 public:
  GodunovBurgersFlux();
  std::string_view key() const override { return "godunov"; }
  Vector evaluate(const Vector& left, const Vector& right) const override;
  /// One-sided derivative of the active branch; at a tie the branch on the
  /// upwind side of the mean state is used.
  std::pair<Matrix, Matrix> jacobians(const Vector& left, const Vector& right) const override;
};

/// Exact flux A+ u- + A- u+ of a constant-coefficient hyperbolic system.
class LinearSystemFlux final : public NumericalFlux {
 public:
  explicit LinearSystemFlux(std::shared_ptr<const LinearSystem> equation);
  std::string_view key() const override { return "linsys-exact"; }
  Vector evaluate(const Vector& left, const Vector& right) const override;
  std::pair<Matrix, Matrix> jacobians(const Vector&, const Vector&) const override {
    return {a_plus_, a_minus_};
  }
  const Matrix& a_plus() const { return a_plus_; }
  const Matrix& a_minus() const { return a_minus_; }

 private:
  Matrix a_plus_;
  Matrix a_minus_;
};

enum class RoeJacobianMode {
  /// 1/2 f_u(u-) + 1/2 |A|, 1/2 f_u(u+) - 1/2 |A| with |A| held fixed.
  frozen,
  /// Central finite differences of the full flux.
  finite_difference,
};

/// Roe's approximate Riemann solver for the Euler equations.
class RoeFlux final : public NumericalFlux {
 public:
  explicit RoeFlux(std::shared_ptr<const EulerEquations> equation,
                   RoeJacobianMode mode = RoeJacobianMode::frozen, bool entropy_fix = false);
  std::string_view key() const override { return "roe"; }
  Vector evaluate(const Vector& left, const Vector& right) const override;
  std::pair<Matrix, Matrix> jacobians(const Vector& left, const Vector& right) const override;

  /// |A| = Q |Lambda| Q^-1 at the Roe average, with the optional Harten fix.
  Matrix dissipation_matrix(const Vector& left, const Vector& right) const;

 private:
  const EulerEquations& euler_;
  RoeJacobianMode mode_;
  bool entropy_fix_;
};

/// Central finite-difference Jacobians with step sqrt(eps) (1 + |u_i|).
std::pair<Matrix, Matrix> finite_difference_jacobians(const NumericalFlux& flux,
                                                      const Vector& left, const Vector& right);

struct FluxOptions {
  RoeJacobianMode roe_jacobian = RoeJacobianMode::frozen;
  bool entropy_fix = false;
};

/// Flux by key: "upwind", "godunov", "linsys-exact", "roe". Throws
/// UnsupportedError when the key does not match the equation.
std::shared_ptr<const NumericalFlux> make_flux(std::string_view key,
                                               std::shared_ptr<const EquationSystem> equation,
                                               const FluxOptions& options = {});

/// Default flux of an equation (upwind, godunov, linsys-exact, roe).
std::string_view default_flux_key(const EquationSystem& equation);

}  // namespace cutdg
