#pragma once

namespace cutdg {

struct PrimitiveState {
  double rho = 0.0;
  double v = 0.0;
  double p = 0.0;
};

/// Exact solution of the Riemann problem for the ideal-gas Euler equations
/// (Newton iteration for the star-region pressure). Used as a reference
/// solution for shock-tube runs.
class ExactEulerRiemann {
 public:
  ExactEulerRiemann(PrimitiveState left, PrimitiveState right, double gamma = 1.4);

  double p_star() const { return p_star_; }
  double v_star() const { return v_star_; }
  int iterations() const { return iterations_; }

  /// Solution on the ray x / t = s.
  PrimitiveState sample(double s) const;

 private:
  /// Pressure function f_K(p) and its derivative for one side.
  void pressure_function(double p, const PrimitiveState& side, double c, double& f,
                         double& df) const;

  PrimitiveState left_, right_;
  double gamma_;
  double c_left_, c_right_;
  double p_star_ = 0.0;
  double v_star_ = 0.0;
  int iterations_ = 0;
};

}  // namespace cutdg
