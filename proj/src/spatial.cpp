#include "cutdg/spatial.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cutdg/errors.hpp"

namespace cutdg {

BoundaryKind parse_boundary(std::string_view key) {
  if (key == "periodic") return BoundaryKind::periodic;
  if (key == "transmissive") return BoundaryKind::transmissive;
  throw DomainError("unknown boundary condition '" + std::string(key) + "'");
}

std::string_view to_string(BoundaryKind kind) {
  return kind == BoundaryKind::periodic ? "periodic" : "transmissive";
}

SpatialOperator::SpatialOperator(std::shared_ptr<const CutCellMesh> mesh,
                                 std::shared_ptr<const NumericalFlux> flux, int degree,
                                 SpatialOptions options, SpaceTimeField source)
    : mesh_(std::move(mesh)),
      flux_(std::move(flux)),
      degree_(degree),
      options_(options),
      source_(std::move(source)),
      quad_(options.quadrature_points > 0 ? options.quadrature_points : degree + 2) {
  if (!mesh_ || !flux_) throw DomainError("SpatialOperator needs a mesh and a flux");
  if (degree < 0 || degree > kMaxDegree) throw DomainError("unsupported polynomial degree");
  if (!(options_.nu > 0.0 && options_.nu < 1.0)) throw DomainError("CFL number must lie in (0, 1)");
  for (int q = 0; q < quad_.size(); ++q) {
    const double xi = quad_.nodes()[static_cast<std::size_t>(q)];
    phi_q_.push_back(legendre_values(degree, xi));
    dphi_q_.push_back(legendre_derivatives(degree, xi));
  }
  phi_plus_ = legendre_values(degree, 1.0);
  phi_minus_ = legendre_values(degree, -1.0);
}

std::pair<Vector, Vector> SpatialOperator::apply_bc(const DGState& state) const {
  const auto n = state.cells();
  if (options_.boundary == BoundaryKind::periodic) {
    return {state.right_trace(n - 1), state.left_trace(0)};
  }
  return {state.left_trace(0), state.right_trace(n - 1)};
}

std::vector<StabilizationRecord> SpatialOperator::records(const DGState& state) const {
  std::vector<StabilizationRecord> out;
  for (const auto& pair : mesh_->cut_pairs()) {
    out.push_back(make_record(state, pair, equation(), options_.nu));
  }
  return out;
}

std::vector<double> SpatialOperator::residual(const DGState& state, double t,
                                              bool with_source) const {
  const auto& eq = equation();
  const auto n = state.cells();
  const int m = state.components();
  const int modes = state.modes();
  std::vector<double> res(state.data().size(), 0.0);

  auto add = [&](std::size_t cell, const Vector& v, const BasisValues& values, double scale) {
    double* row = res.data() + state.index(cell, 0, 0);
    for (int l = 0; l < m; ++l) {
      const double a = scale * v(l);
      for (int i = 0; i < modes; ++i) row[l * modes + i] += a * values[static_cast<std::size_t>(i)];
    }
  };

  std::size_t cell = 0;
  try {
    // Edges, left to right.
    const auto [ghost_left, ghost_right] = apply_bc(state);
    for (std::size_t e = 0; e <= n; ++e) {
      cell = e < n ? e : n - 1;
      const Vector ul = e == 0 ? ghost_left : state.right_trace(e - 1);
      const Vector ur = e == n ? ghost_right : state.left_trace(e);
      eq.check_admissible(ul);
      eq.check_admissible(ur);
      const Vector f = flux_->evaluate(ul, ur);
      if (e > 0) add(e - 1, f, phi_plus_, 1.0);
      if (e < n) add(e, f, phi_minus_, -1.0);
    }
    // Volumes.
    if (degree_ > 0) {
      for (cell = 0; cell < n; ++cell) {
        for (int q = 0; q < quad_.size(); ++q) {
          const auto qi = static_cast<std::size_t>(q);
          const Vector u = state.evaluate_reference(cell, quad_.nodes()[qi]);
          eq.check_admissible(u);
          add(cell, eq.flux(u), dphi_q_[qi], -quad_.weights()[qi]);
        }
      }
    }
    // Stabilization.
    if (options_.stabilization != StabilizationMode::off) {
      for (const auto& pair : mesh_->cut_pairs()) {
        cell = pair.small;
        const auto rec = make_record(state, pair, eq, options_.nu);
        apply_stabilization(state, rec, *flux_, quad_, options_.stabilization, res);
      }
    }
  } catch (const AdmissibilityError& err) {
    std::ostringstream msg;
    msg << err.what() << " [cell " << cell << ", t=" << t << "]";
    throw AdmissibilityError(msg.str());
  }
  // Source.
  if (with_source && source_) {
    for (cell = 0; cell < n; ++cell) {
      const auto& c = mesh_->cell(cell);
      for (int q = 0; q < quad_.size(); ++q) {
        const auto qi = static_cast<std::size_t>(q);
        const Vector g = source_(c.center() + 0.5 * c.length * quad_.nodes()[qi], t);
        add(cell, g, phi_q_[qi], -0.5 * c.length * quad_.weights()[qi]);
      }
    }
  }
  return res;
}

void SpatialOperator::rhs(const DGState& state, double t, DGState& out) const {
  const auto res = residual(state, t, true);
  auto& data = out.data();
  const auto per_cell = static_cast<std::size_t>(state.components() * state.modes());
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const double inv = -1.0 / mesh_->cell(j).length;
    for (std::size_t k = 0; k < per_cell; ++k) {
      data[j * per_cell + k] = inv * res[j * per_cell + k];
    }
  }
}

DGState SpatialOperator::rhs(const DGState& state, double t) const {
  DGState out = zero_state();
  rhs(state, t, out);
  return out;
}

double SpatialOperator::energy_form(const DGState& state) const {
  const auto res = residual(state, 0.0, false);
  double sum = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) sum += state.data()[i] * res[i];
  return sum;
}

double SpatialOperator::max_wave_speed(const DGState& state) const {
  const auto& eq = equation();
  double lambda = 0.0;
  for (std::size_t j = 0; j < state.cells(); ++j) {
    lambda = std::max(lambda, eq.max_wave_speed(state.left_trace(j)));
    lambda = std::max(lambda, eq.max_wave_speed(state.right_trace(j)));
    if (degree_ > 0) {
      for (int q = 0; q < quad_.size(); ++q) {
        const Vector u = state.evaluate_reference(j, quad_.nodes()[static_cast<std::size_t>(q)]);
        lambda = std::max(lambda, eq.max_wave_speed(u));
      }
    }
  }
  return lambda;
}

}  // namespace cutdg
