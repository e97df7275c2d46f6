#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string_view>

#include <Eigen/Dense>

#include "cutdg/spatial.hpp"

namespace cutdg {

enum class SpectralVariant { full, legacy };

SpectralVariant parse_variant(std::string_view key);
std::string_view to_string(SpectralVariant variant);

/// Dense matrix of the linear semi-discrete operator d/dt U = A U.
struct OperatorMatrix {
  Eigen::MatrixXd matrix;
  int degree = 0;
  SpectralVariant variant = SpectralVariant::full;
};

/// Column j is the right-hand side of the j-th unit coefficient state.
/// Throws UnsupportedError for nonlinear equations.
OperatorMatrix assemble_matrix(const SpatialOperator& op);

/// Linear advection with beta = 1, upwind flux, periodic boundaries.
OperatorMatrix assemble_matrix(std::shared_ptr<const CutCellMesh> mesh, int degree,
                               SpectralVariant variant, double nu = 0.4);

/// 100 background cells on (0, 1) with every cell in (0.1, 0.9) split at alpha.
std::shared_ptr<const CutCellMesh> spectral_study_mesh(double alpha);

/// Parlett-Reinsch balancing by powers of two; returns the diagonal scaling d
/// with the balanced matrix D^-1 A D written back into `a`.
Eigen::VectorXd balance(Eigen::MatrixXd& a);

/// All eigenvalues of a real square matrix (balancing + Hessenberg QR).
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& a);

/// max Re(lambda).
double spectral_abscissa(const Eigen::VectorXcd& eigenvalues);
double spectral_abscissa(const Eigen::MatrixXd& a);

/// CSV with columns index,real,imag.
void write_spectrum_csv(std::ostream& out, const Eigen::VectorXcd& eigenvalues);

}  // namespace cutdg
