#include "cutdg/basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cutdg/errors.hpp"

namespace cutdg {

Quadrature::Quadrature(int points) {
  if (points < 1) throw DomainError("quadrature needs at least one point");
  nodes_.resize(static_cast<std::size_t>(points));
  weights_.resize(static_cast<std::size_t>(points));
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes_[lo] = -x;
    nodes_[hi] = x;
    weights_[lo] = w;
    weights_[hi] = w;
  }
  if (n % 2 == 1) nodes_[static_cast<std::size_t>(n / 2)] = 0.0;
}

BasisValues legendre_values(int p, double xi) {
  BasisValues out{};
  double p0 = 1.0, p1 = xi;
  out[0] = 1.0;
  if (p >= 1) out[1] = std::sqrt(3.0) * xi;
  for (int k = 2; k <= p; ++k) {
    const double pk = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
    out[static_cast<std::size_t>(k)] = std::sqrt(2.0 * k + 1.0) * pk;
  }
  return out;
}

BasisValues legendre_derivatives(int p, double xi) {
  // P'_k = (2k-1) P_{k-1} + P'_{k-2}
  BasisValues raw{};
  BasisValues draw{};
  raw[0] = 1.0;
  if (p >= 1) raw[1] = xi;
  for (int k = 2; k <= p; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    raw[ku] = ((2.0 * k - 1.0) * xi * raw[ku - 1] - (k - 1.0) * raw[ku - 2]) / k;
  }
  if (p >= 1) draw[1] = 1.0;
  for (int k = 2; k <= p; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    draw[ku] = (2.0 * k - 1.0) * raw[ku - 1] + draw[ku - 2];
  }
  BasisValues out{};
  for (int k = 0; k <= p; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    out[ku] = std::sqrt(2.0 * k + 1.0) * draw[ku];
  }
  return out;
}

DGState::DGState(std::shared_ptr<const CutCellMesh> mesh, int components, int degree)
    : mesh_(std::move(mesh)), components_(components), degree_(degree) {
  if (!mesh_) throw DomainError("DGState requires a mesh");
  if (components < 1 || components > kMaxComponents) {
    throw DomainError("DGState: unsupported component count");
  }
  if (degree < 0 || degree > kMaxDegree) {
    std::ostringstream msg;
    msg << "DGState: polynomial degree " << degree << " outside [0, " << kMaxDegree << "]";
    throw DomainError(msg.str());
  }
  coeffs_.assign(mesh_->size() * static_cast<std::size_t>(components * modes()), 0.0);
}

std::span<double> DGState::cell_coeffs(std::size_t cell) {
  const auto n = static_cast<std::size_t>(components_ * modes());
  return std::span<double>(coeffs_).subspan(cell * n, n);
}

std::span<const double> DGState::cell_coeffs(std::size_t cell) const {
  const auto n = static_cast<std::size_t>(components_ * modes());
  return std::span<const double>(coeffs_).subspan(cell * n, n);
}

Vector DGState::average(std::size_t cell) const {
  Vector v(components_);
  for (int l = 0; l < components_; ++l) v(l) = coeff(cell, l, 0);
  return v;
}

Vector DGState::evaluate_reference(std::size_t cell, double xi) const {
  const auto phi = legendre_values(degree_, xi);
  Vector v(components_);
  for (int l = 0; l < components_; ++l) {
    double sum = 0.0;
    for (int i = 0; i <= degree_; ++i) sum += coeff(cell, l, i) * phi[static_cast<std::size_t>(i)];
    v(l) = sum;
  }
  return v;
}

Vector DGState::derivative_reference(std::size_t cell, double xi) const {
  const auto dphi = legendre_derivatives(degree_, xi);
  const double scale = 2.0 / mesh_->cell(cell).length;
  Vector v(components_);
  for (int l = 0; l < components_; ++l) {
    double sum = 0.0;
    for (int i = 1; i <= degree_; ++i) sum += coeff(cell, l, i) * dphi[static_cast<std::size_t>(i)];
    v(l) = scale * sum;
  }
  return v;
}

Vector evaluate(const DGState& state, std::size_t cell, double x) {
  return state.evaluate_reference(cell, reference_coordinate(state.mesh().cell(cell), x));
}

Vector evaluate_deriv(const DGState& state, std::size_t cell, double x) {
  return state.derivative_reference(cell, reference_coordinate(state.mesh().cell(cell), x));
}

Vector jump(const DGState& state, std::size_t edge) {
  const auto n = state.cells();
  if (edge == 0) return -state.left_trace(0);
  if (edge == n) return state.right_trace(n - 1);
  return state.right_trace(edge - 1) - state.left_trace(edge);
}

DGState project(const Profile& function, std::shared_ptr<const CutCellMesh> mesh, int components,
                int degree, int quadrature_points) {
  DGState state(std::move(mesh), components, degree);
  const int nq = quadrature_points > 0 ? quadrature_points : std::max(degree + 2, 8);
  const Quadrature quad(nq);
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const auto& c = state.mesh().cell(j);
    for (int q = 0; q < quad.size(); ++q) {
      const double xi = quad.nodes()[static_cast<std::size_t>(q)];
      const double w = 0.5 * quad.weights()[static_cast<std::size_t>(q)];
      const Vector value = function(c.center() + 0.5 * c.length * xi);
      const auto phi = legendre_values(degree, xi);
      for (int l = 0; l < components; ++l) {
        for (int i = 0; i <= degree; ++i) {
          state.coeff(j, l, i) += w * value(l) * phi[static_cast<std::size_t>(i)];
        }
      }
    }
  }
  return state;
}

Vector total_mass(const DGState& state) {
  Vector mass = Vector::Zero(state.components());
  for (std::size_t j = 0; j < state.cells(); ++j) {
    mass += state.mesh().cell(j).length * state.average(j);
  }
  return mass;
}

}  // namespace cutdg
