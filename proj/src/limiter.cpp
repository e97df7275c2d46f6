#include "cutdg/limiter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cutdg/errors.hpp"

namespace cutdg {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

int sign(double a) { return a > 0.0 ? 1 : (a < 0.0 ? -1 : 0); }

bool same(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(scale));
}

void truncate_to_linear(DGState& state, std::size_t cell, int component) {
  for (int i = 2; i <= state.degree(); ++i) state.coeff(cell, component, i) = 0.0;
}

}  // namespace

double minmod(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const int s = sign(values[0]);
  if (s == 0) return 0.0;
  double smallest = std::abs(values[0]);
  for (const double v : values.subspan(1)) {
    if (sign(v) != s) return 0.0;
    smallest = std::min(smallest, std::abs(v));
  }
  return s * smallest;
}

double minmod(double a, double b, double c) {
  const double values[] = {a, b, c};
  return minmod(values);
}

bool limit_cell(DGState& state, std::size_t cell, BoundaryKind boundary) {
  if (state.degree() == 0) return false;
  const auto n = state.cells();
  const bool periodic = boundary == BoundaryKind::periodic;
  const bool has_left = cell > 0 || periodic;
  const bool has_right = cell + 1 < n || periodic;
  const std::size_t left = cell > 0 ? cell - 1 : n - 1;
  const std::size_t right = cell + 1 < n ? cell + 1 : 0;

  const Vector lo = state.left_trace(cell);
  const Vector hi = state.right_trace(cell);
  bool changed = false;
  for (int l = 0; l < state.components(); ++l) {
    const double avg = state.coeff(cell, l, 0);
    const double fwd = has_right ? state.coeff(right, l, 0) - avg : 0.0;
    const double bwd = has_left ? avg - state.coeff(left, l, 0) : 0.0;
    const double d_right = minmod(hi(l) - avg, fwd, bwd);
    const double d_left = minmod(avg - lo(l), fwd, bwd);
    if (same(avg + d_right, hi(l), avg) && same(avg - d_left, lo(l), avg)) continue;
    truncate_to_linear(state, cell, l);
    state.coeff(cell, l, 1) = minmod(std::array{d_right, d_left}) / kSqrt3;
    changed = true;
  }
  return changed;
}

namespace {

/// Clamps the extended value of `cell` at reference coordinate xi into
/// [lower, upper] for one component.
bool clamp_extension(DGState& state, std::size_t cell, int l, double xi, double lower,
                     double upper) {
  auto value = [&] {
    double v = 0.0;
    const auto phi = legendre_values(state.degree(), xi);
    for (int i = 0; i <= state.degree(); ++i) v += state.coeff(cell, l, i) * phi[static_cast<std::size_t>(i)];
    return v;
  };
  const double tol = 1e-12 * (1.0 + std::max(std::abs(lower), std::abs(upper)));
  const double v0 = value();
  if (v0 >= lower - tol && v0 <= upper + tol) return false;
  truncate_to_linear(state, cell, l);
  const double v1 = value();
  if (v1 >= lower - tol && v1 <= upper + tol) return true;
  const double bound = v1 > upper ? upper : lower;
  state.coeff(cell, l, 1) = (bound - state.coeff(cell, l, 0)) / (kSqrt3 * xi);
  return true;
}

}  // namespace

bool postprocess_cut_neighbors(DGState& state, const StabilizationRecord& record) {
  if (state.degree() == 0 || !record.active()) return false;
  const auto& mesh = state.mesh();
  const double len_s = mesh.cell(record.small).length;
  const double xi_left = 1.0 + 2.0 * len_s / mesh.cell(record.left).length;
  const double xi_right = -1.0 - 2.0 * len_s / mesh.cell(record.right).length;
  bool changed = false;
  for (int l = 0; l < state.components(); ++l) {
    const double a = state.coeff(record.left, l, 0);
    const double b = state.coeff(record.small, l, 0);
    const double c = state.coeff(record.right, l, 0);
    const double lower = std::min({a, b, c});
    const double upper = std::max({a, b, c});
    changed |= clamp_extension(state, record.left, l, xi_left, lower, upper);
    changed |= clamp_extension(state, record.right, l, xi_right, lower, upper);
  }
  return changed;
}

std::size_t positivity_guard(DGState& state, const EulerEquations& euler, const Quadrature& quad) {
  std::size_t flattened = 0;
  for (std::size_t j = 0; j < state.cells(); ++j) {
    if (state.degree() == 0) {
      if (!euler.is_admissible(state.average(j))) {
        std::ostringstream msg;
        msg << "cell " << j << " has an inadmissible average";
        throw AdmissibilityError(msg.str());
      }
      continue;
    }
    bool ok = euler.is_admissible(state.left_trace(j)) && euler.is_admissible(state.right_trace(j));
    for (int q = 0; ok && q < quad.size(); ++q) {
      ok = euler.is_admissible(state.evaluate_reference(j, quad.nodes()[static_cast<std::size_t>(q)]));
    }
    if (ok) continue;
    const Vector avg = state.average(j);
    if (!euler.is_admissible(avg)) {
      std::ostringstream msg;
      msg << "cell " << j << " has an inadmissible average (rho=" << avg(0)
          << ", p=" << euler.pressure(avg) << ")";
      throw AdmissibilityError(msg.str());
    }
    for (int l = 0; l < state.components(); ++l) {
      for (int i = 1; i <= state.degree(); ++i) state.coeff(j, l, i) = 0.0;
    }
    ++flattened;
  }
  return flattened;
}

Limiter::Limiter(LimiterConfig config, const SpatialOperator& op)
    : config_(config), op_(op), euler_(dynamic_cast<const EulerEquations*>(&op.equation())) {}

std::size_t Limiter::apply(DGState& state) const {
  std::size_t modified = 0;
  if (config_.enabled && state.degree() > 0) {
    for (std::size_t j = 0; j < state.cells(); ++j) {
      modified += limit_cell(state, j, op_.options().boundary) ? 1 : 0;
    }
    if (config_.cut_postprocess) {
      for (const auto& pair : op_.mesh().cut_pairs()) {
        StabilizationRecord rec;
        rec.left = pair.left_neighbor;
        rec.small = pair.small;
        rec.right = pair.large;
        rec.alpha = pair.alpha;
        rec.eta = compute_eta(pair.alpha, op_.options().nu);
        rec.eta_complement = eta_complement(pair.alpha, op_.options().nu);
        modified += postprocess_cut_neighbors(state, rec) ? 1 : 0;
      }
    }
  }
  if (positivity_active()) modified += positivity_guard(state, *euler_, op_.quadrature());
  return modified;
}

}  // namespace cutdg
