#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/limiter.hpp"
#include "cutdg/spatial.hpp"

namespace cutdg {

/// Delta t = nu h / ((2p + 1) lambda_max); throws NumericalError for lambda_max <= 0.
double timestep_length(int p, double nu, double h, double lambda_max);

/// Explicit strong-stability-preserving Runge-Kutta scheme in Shu-Osher form:
/// u(i) = sum_k a_ik u(k) + dt sum_k b_ik L(u(k)), k < i.
class TimeIntegrator {
 public:
  using Rhs = std::function<void(const std::vector<double>& u, double t, std::vector<double>& out)>;
  using StageHook = std::function<void(std::vector<double>& u)>;

  /// Order 1: explicit Euler; 2, 3: the standard SSP schemes; 4: SSP-RK(5,4).
  explicit TimeIntegrator(int order);

  int order() const { return order_; }
  int stages() const { return static_cast<int>(stages_.size()); }

  /// One step from (u, t) to t + dt; `hook` runs after every stage.
  void step(std::vector<double>& u, double t, double dt, const Rhs& rhs,
            const StageHook& hook = {}) const;

  struct Stage {
    std::vector<std::pair<int, double>> a;  // (k, a_ik)
    std::vector<std::pair<int, double>> b;  // (k, b_ik)
  };
  const std::vector<Stage>& coefficients() const { return stages_; }

 private:
  int order_;
  std::vector<Stage> stages_;
};

struct MarchOptions {
  /// Integrator order; 0 selects p + 1.
  int order = 0;
  /// Fixed step length; 0 selects the CFL rule with lambda_max from the state.
  double fixed_dt = 0.0;
  /// Called after every accepted step with (state, t, step).
  std::function<void(const DGState&, double, std::size_t)> observer;
};

struct MarchReport {
  std::size_t steps = 0;
  std::size_t stages = 0;
  std::size_t limited_cells = 0;
  double final_time = 0.0;
  double last_dt = 0.0;
};

/// Advances state from t to t_end. The last step is clipped to end exactly at
/// t_end. NaN/Inf or admissibility failures abort with the step number.
MarchReport advance(DGState& state, const SpatialOperator& op, double t, double t_end,
                    const Limiter* limiter = nullptr, const MarchOptions& options = {});

}  // namespace cutdg
