#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/riemann.hpp"

namespace cutdg {

/// Penalty factor eta = max(1 - alpha/nu, 0).
double compute_eta(double alpha, double nu);
/// 1 - eta, evaluated as min(alpha/nu, 1) so that it keeps full relative
/// precision for tiny alpha.
double eta_complement(double alpha, double nu);

/// (L, R) = (Q I+ Q^-1, Q I- Q^-1) from the averaged eigensystem of the two
/// neighbor states at the small cell's centroid; zero eigenvalues split 1/2-1/2.
std::pair<Matrix, Matrix> direction_matrices(const EquationSystem& equation,
                                             const Vector& left_state, const Vector& right_state);

/// Stabilization data of one small cut cell for the current state.
struct StabilizationRecord {
  std::size_t left = 0;   // k-1
  std::size_t small = 0;  // k1
  std::size_t right = 0;  // k2
  double alpha = 0.0;
  double eta = 0.0;
  double eta_complement = 1.0;
  Matrix l;
  Matrix r;

  bool active() const { return eta > 0.0; }
};

/// Builds the record of a cut pair; L and R use the extended neighbor
/// polynomials evaluated at the centroid of the small cell.
StabilizationRecord make_record(const DGState& state, const CutPair& pair,
                                const EquationSystem& equation, double nu);

/// Test-space rows (component-major, m * (p+1) each) of the three cells
/// touched by one stabilized pair.
struct PairRows {
  std::vector<double> left;
  std::vector<double> small;
  std::vector<double> right;
};

/// Edge penalty at the left edge of the small cell and at the cut.
PairRows j0_edge_penalty(const DGState& state, const StabilizationRecord& record,
                         const NumericalFlux& flux);

/// Volume penalty over the small cell (all three term groups).
PairRows j1_volume_penalty(const DGState& state, const StabilizationRecord& record,
                           const NumericalFlux& flux, const Quadrature& quad);

/// Older volume penalty for linear advection: only the small-cell rows
/// -beta eta int (u_{k-1} - u_{k1}) d_x w_{k1}. Throws UnsupportedError for
/// any other equation.
PairRows legacy_j1_advection(const DGState& state, const StabilizationRecord& record,
                             const NumericalFlux& flux, const Quadrature& quad);

/// Rows of the small cell built from the neighbor flux G = H(u_{k-1}, u_{k2}):
/// G(x_cut) w(x_cut) - G(x_{k-1/2}) w(x_{k-1/2}) - int G d_x w.
/// J0 + J1 on these rows equals eta times (this minus the standard a_h rows).
std::vector<double> extended_small_rows(const DGState& state, const StabilizationRecord& record,
                                        const NumericalFlux& flux, const Quadrature& quad);

enum class StabilizationMode { off, full, legacy };

/// Adds the stabilization of one pair to a full residual vector. The small
/// cell rows must already hold the standard a_h rows; they are replaced by
/// (1 - eta) a_h + eta * extended rows, which is algebraically a_h + J_h.
void apply_stabilization(const DGState& state, const StabilizationRecord& record,
                         const NumericalFlux& flux, const Quadrature& quad, StabilizationMode mode,
                         std::vector<double>& residual);

}  // namespace cutdg
