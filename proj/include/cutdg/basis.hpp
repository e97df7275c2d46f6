#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cutdg/equations.hpp"
#include "cutdg/mesh.hpp"
#include "cutdg/types.hpp"

namespace cutdg {

/// Gauss-Legendre rule on [-1, 1].
class Quadrature {
 public:
  explicit Quadrature(int points);
  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Values phi_0..phi_p of the scaled Legendre basis phi_i = sqrt(2i+1) P_i(xi).
/// With this scaling the mass matrix of a cell is |I_j| times the identity and
/// the zeroth coefficient is the cell average.
using BasisValues = std::array<double, kMaxDegree + 1>;
BasisValues legendre_values(int p, double xi);
/// d phi_i / d xi.
BasisValues legendre_derivatives(int p, double xi);

/// Reference coordinate of x in the affine map of cell c (unbounded outside c).
inline double reference_coordinate(const Cell& c, double x) {
  return 2.0 * (x - c.center()) / c.length;
}

/// Modal coefficients: per cell, per component, p+1 Legendre modes.
class DGState {
 public:
  DGState(std::shared_ptr<const CutCellMesh> mesh, int components, int degree);

  const CutCellMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const CutCellMesh>& mesh_ptr() const { return mesh_; }
  int components() const { return components_; }
  int degree() const { return degree_; }
  int modes() const { return degree_ + 1; }
  std::size_t cells() const { return mesh_->size(); }

  std::size_t index(std::size_t cell, int component, int mode) const {
    return (cell * static_cast<std::size_t>(components_) + static_cast<std::size_t>(component)) *
               static_cast<std::size_t>(modes()) +
           static_cast<std::size_t>(mode);
  }
  double& coeff(std::size_t cell, int component, int mode) {
    return coeffs_[index(cell, component, mode)];
  }
  double coeff(std::size_t cell, int component, int mode) const {
    return coeffs_[index(cell, component, mode)];
  }

  /// All coefficients of one cell (components x modes).
  std::span<double> cell_coeffs(std::size_t cell);
  std::span<const double> cell_coeffs(std::size_t cell) const;

  std::vector<double>& data() { return coeffs_; }
  const std::vector<double>& data() const { return coeffs_; }

  /// Cell average of every component.
  Vector average(std::size_t cell) const;

  /// Polynomial of `cell` at reference coordinate xi.
  Vector evaluate_reference(std::size_t cell, double xi) const;
  /// d/dx of the polynomial of `cell` at reference coordinate xi.
  Vector derivative_reference(std::size_t cell, double xi) const;

  /// Trace of cell's own polynomial at its left (xi = -1) or right (xi = +1) edge.
  Vector left_trace(std::size_t cell) const { return evaluate_reference(cell, -1.0); }
  Vector right_trace(std::size_t cell) const { return evaluate_reference(cell, 1.0); }

 private:
  std::shared_ptr<const CutCellMesh> mesh_;
  int components_;
  int degree_;
  std::vector<double> coeffs_;
};

/// Extension operator: the polynomial of `cell` evaluated at any x in the domain.
Vector evaluate(const DGState& state, std::size_t cell, double x);
/// Spatial derivative of the extended polynomial of `cell` at x.
Vector evaluate_deriv(const DGState& state, std::size_t cell, double x);

/// Jump at mesh edge e (0..cells): left trace minus right trace; at the
/// boundaries -u(x+) on the left and u(x-) on the right.
Vector jump(const DGState& state, std::size_t edge);

/// Per-cell L2 projection with an n-point Gauss rule (default p + 2, at least 8).
DGState project(const Profile& function, std::shared_ptr<const CutCellMesh> mesh, int components,
                int degree, int quadrature_points = 0);

/// Integral over the domain of each component.
Vector total_mass(const DGState& state);

}  // namespace cutdg
