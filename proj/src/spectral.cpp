#include "cutdg/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "cutdg/errors.hpp"

namespace cutdg {

SpectralVariant parse_variant(std::string_view key) {
  if (key == "full") return SpectralVariant::full;
  if (key == "legacy") return SpectralVariant::legacy;
  throw DomainError("unknown spectral variant '" + std::string(key) + "'");
}

std::string_view to_string(SpectralVariant variant) {
  return variant == SpectralVariant::full ? "full" : "legacy";
}

OperatorMatrix assemble_matrix(const SpatialOperator& op) {
  if (!op.equation().is_linear()) {
    throw UnsupportedError("operator matrix requires a linear equation");
  }
  DGState probe = op.zero_state();
  const auto n = static_cast<Eigen::Index>(probe.data().size());
  OperatorMatrix out;
  out.degree = op.degree();
  out.variant = op.options().stabilization == StabilizationMode::legacy ? SpectralVariant::legacy
                                                                         : SpectralVariant::full;
  out.matrix.resize(n, n);
  DGState column = op.zero_state();
  for (Eigen::Index j = 0; j < n; ++j) {
    probe.data()[static_cast<std::size_t>(j)] = 1.0;
    op.rhs(probe, 0.0, column);
    probe.data()[static_cast<std::size_t>(j)] = 0.0;
    out.matrix.col(j) = Eigen::Map<const Eigen::VectorXd>(column.data().data(), n);
  }
  return out;
}

OperatorMatrix assemble_matrix(std::shared_ptr<const CutCellMesh> mesh, int degree,
                               SpectralVariant variant, double nu) {
  auto equation = std::make_shared<AdvectionEquation>(1.0);
  SpatialOptions options;
  options.boundary = BoundaryKind::periodic;
  options.nu = nu;
  options.stabilization =
      variant == SpectralVariant::full ? StabilizationMode::full : StabilizationMode::legacy;
  const SpatialOperator op(std::move(mesh), std::make_shared<UpwindFlux>(equation), degree, options);
  return assemble_matrix(op);
}

std::shared_ptr<const CutCellMesh> spectral_study_mesh(double alpha) {
  return std::make_shared<const CutCellMesh>(banded_mesh(100, {0.1, 0.9}, alpha));
}

Eigen::VectorXd balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("eigenvalues need a square matrix");
  Eigen::MatrixXd balanced = a;
  balance(balanced);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(balanced, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hessenberg QR iteration did not converge");
  }
  return solver.eigenvalues();
}

double spectral_abscissa(const Eigen::VectorXcd& values) {
  double mu = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) mu = std::max(mu, values(i).real());
  return mu;
}

double spectral_abscissa(const Eigen::MatrixXd& a) { return spectral_abscissa(eigenvalues(a)); }

void write_spectrum_csv(std::ostream& out, const Eigen::VectorXcd& values) {
  out << "index,real,imag\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out << i << ',' << values(i).real() << ',' << values(i).imag() << '\n';
  }
}

}  // namespace cutdg
