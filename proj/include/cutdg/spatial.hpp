#pragma once

#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/dod.hpp"
#include "cutdg/riemann.hpp"

namespace cutdg {

enum class BoundaryKind { periodic, transmissive };

BoundaryKind parse_boundary(std::string_view key);
std::string_view to_string(BoundaryKind kind);

struct SpatialOptions {
  BoundaryKind boundary = BoundaryKind::periodic;
  StabilizationMode stabilization = StabilizationMode::full;
  double nu = 0.4;
  /// Gauss points per cell; 0 selects p + 2.
  int quadrature_points = 0;
};

/// Semi-discrete operator: residual = a_h + J_h - S_h in test space, and
/// rhs = -M^-1 residual.
class SpatialOperator {
 public:
  SpatialOperator(std::shared_ptr<const CutCellMesh> mesh, std::shared_ptr<const NumericalFlux> flux,
                  int degree, SpatialOptions options = {}, SpaceTimeField source = {});

  const CutCellMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const CutCellMesh>& mesh_ptr() const { return mesh_; }
  const NumericalFlux& flux() const { return *flux_; }
  const EquationSystem& equation() const { return flux_->equation(); }
  int degree() const { return degree_; }
  int components() const { return flux_->equation().components(); }
  const SpatialOptions& options() const { return options_; }
  const Quadrature& quadrature() const { return quad_; }
  bool has_source() const { return static_cast<bool>(source_); }

  DGState zero_state() const { return DGState(mesh_, components(), degree_); }

  /// Ghost traces (u_0 at the left boundary, u_{N+1} at the right boundary).
  std::pair<Vector, Vector> apply_bc(const DGState& state) const;

  /// Stabilization records (one per cut pair) for the given state.
  std::vector<StabilizationRecord> records(const DGState& state) const;

  /// Test-space residual a_h + J_h - S_h.
  std::vector<double> residual(const DGState& state, double t, bool with_source = true) const;

  /// Time derivative of the coefficients.
  DGState rhs(const DGState& state, double t) const;
  void rhs(const DGState& state, double t, DGState& out) const;

  /// a_h(u, u) + J_h(u, u).
  double energy_form(const DGState& state) const;

  /// Largest wave speed over all edge traces and quadrature points.
  double max_wave_speed(const DGState& state) const;

 private:
  std::shared_ptr<const CutCellMesh> mesh_;
  std::shared_ptr<const NumericalFlux> flux_;
  int degree_;
  SpatialOptions options_;
  SpaceTimeField source_;
  Quadrature quad_;
  // Basis tables at quadrature nodes and at the reference edges.
  std::vector<BasisValues> phi_q_;
  std::vector<BasisValues> dphi_q_;
  BasisValues phi_plus_;
  BasisValues phi_minus_;
};

}  // namespace cutdg
