#pragma once

#include <cstddef>
#include <span>

#include "cutdg/basis.hpp"
#include "cutdg/dod.hpp"
#include "cutdg/spatial.hpp"

namespace cutdg {

struct LimiterConfig {
  bool enabled = false;
  /// Clamp the extended neighbor values next to stabilized cut cells.
  bool cut_postprocess = true;
  /// Flatten Euler cells with non-positive density or pressure (Euler only).
  bool positivity = false;
};

/// s * min|a_i| if all a_i share the sign s (zero breaks agreement), else 0.
double minmod(std::span<const double> values);
double minmod(double a, double b, double c);

/// Generalized slope limiter for one cell, applied per component. Returns
/// true when the cell was modified (reduced to P1 with a rescaled slope).
bool limit_cell(DGState& state, std::size_t cell, BoundaryKind boundary);

/// Keeps u_{k-1}(x_cut) and u_{k2}(x_{k-1/2}) inside the range of the three
/// cell averages of the pair. Returns true when a polynomial was changed.
bool postprocess_cut_neighbors(DGState& state, const StabilizationRecord& record);

/// Replaces Euler cells with an inadmissible point value by their average.
/// Throws AdmissibilityError if an average itself is inadmissible. Returns
/// the number of flattened cells.
std::size_t positivity_guard(DGState& state, const EulerEquations& euler, const Quadrature& quad);

/// Everything applied after each Runge-Kutta stage.
class Limiter {
 public:
  Limiter(LimiterConfig config, const SpatialOperator& op);
  const LimiterConfig& config() const { return config_; }
  bool active() const { return config_.enabled || positivity_active(); }
  /// Returns the number of modified cells.
  std::size_t apply(DGState& state) const;

 private:
  bool positivity_active() const { return config_.positivity && euler_ != nullptr; }

  LimiterConfig config_;
  const SpatialOperator& op_;
  const EulerEquations* euler_;
};

}  // namespace cutdg
