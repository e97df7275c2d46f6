#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/mesh.hpp"
#include "cutdg/spatial.hpp"
#include "cutdg/types.hpp"

namespace cutdg::testing {

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) v(i++) = x;
  return v;
}

inline Vector scalar(double x) { return vec({x}); }

inline std::shared_ptr<const CutCellMesh> share(CutCellMesh mesh) {
  return std::make_shared<const CutCellMesh>(std::move(mesh));
}

/// Fills every coefficient with a uniform value in [lo, hi).
inline void randomize(DGState& state, SplitMix64& rng, double lo = -1.0, double hi = 1.0) {
  for (auto& c : state.data()) c = lo + (hi - lo) * rng.uniform();
}

/// Fills only the cell averages; higher modes are zero.
inline void randomize_averages(DGState& state, SplitMix64& rng, double lo, double hi) {
  std::fill(state.data().begin(), state.data().end(), 0.0);
  for (std::size_t j = 0; j < state.cells(); ++j) {
    for (int c = 0; c < state.components(); ++c) state.coeff(j, c, 0) = lo + (hi - lo) * rng.uniform();
  }
}

/// One explicit Euler step through the spatial operator.
inline DGState euler_step(const SpatialOperator& op, const DGState& u, double dt) {
  DGState next = u;
  const DGState k = op.rhs(u, 0.0);
  for (std::size_t i = 0; i < next.data().size(); ++i) next.data()[i] += dt * k.data()[i];
  return next;
}

using ScalarFlux = std::function<double(double, double)>;

/// Finite-volume update of piecewise constants on a mesh with one cut pair
/// (small cell k1, large cell k2, left neighbor k-1), written directly from
/// the neighbourhood update formulae; periodic wrap-around.
inline std::vector<double> p0_formula_step(const CutCellMesh& mesh, const std::vector<double>& u,
                                           const ScalarFlux& h, double dt, double nu) {
  const std::size_t n = u.size();
  const auto& pair = mesh.cut_pairs().front();
  const std::size_t km1 = pair.left_neighbor, k1 = pair.small, k2 = pair.large;
  const double alpha = pair.alpha;
  const double keep = alpha < nu ? alpha / nu : 1.0;
  const double eta = 1.0 - keep;
  const double hh = mesh.h();
  auto at = [&](std::size_t j, int offset) {
    return u[(j + n + static_cast<std::size_t>(static_cast<long>(n) + offset)) % n];
  };
  std::vector<double> next(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double uj = u[j];
    if (j == km1) {
      next[j] = uj - dt / hh *
                         (keep * h(uj, u[k1]) + eta * h(uj, u[k2]) - h(at(j, -1), uj));
    } else if (j == k1) {
      next[j] = uj - dt / (alpha * hh) * keep * (h(uj, u[k2]) - h(u[km1], uj));
    } else if (j == k2) {
      next[j] = uj - dt / ((1.0 - alpha) * hh) *
                         (h(uj, at(j, 1)) - keep * h(u[k1], uj) - eta * h(u[km1], uj));
    } else {
      next[j] = uj - dt / hh * (h(uj, at(j, 1)) - h(at(j, -1), uj));
    }
  }
  return next;
}

/// Scalar Godunov flux for Burgers written from the exact Riemann solution.
inline double godunov_reference(double a, double b) {
  if (a <= b) {
    if (a >= 0.0) return 0.5 * a * a;
    if (b <= 0.0) return 0.5 * b * b;
    return 0.0;
  }
  const double s = 0.5 * (a + b);
  return s >= 0.0 ? 0.5 * a * a : 0.5 * b * b;
}

}  // namespace cutdg::testing
