#include "cutdg/dod.hpp"

#include <algorithm>

#include "cutdg/errors.hpp"

namespace cutdg {

double compute_eta(double alpha, double nu) { return std::max(1.0 - alpha / nu, 0.0); }

double eta_complement(double alpha, double nu) { return std::min(alpha / nu, 1.0); }

std::pair<Matrix, Matrix> direction_matrices(const EquationSystem& equation,
                                             const Vector& left_state,
                                             const Vector& right_state) {
  const Eigensystem eig = equation.averaged_eigen(left_state, right_state);
  const auto m = eig.lambda.size();
  Matrix ip = Matrix::Zero(m, m);
  Matrix im = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double lambda = eig.lambda(i);
    if (lambda > 0.0) {
      ip(i, i) = 1.0;
    } else if (lambda < 0.0) {
      im(i, i) = 1.0;
    } else {
      ip(i, i) = 0.5;
      im(i, i) = 0.5;
    }
  }
  return {eig.q * ip * eig.q_inv, eig.q * im * eig.q_inv};
}

StabilizationRecord make_record(const DGState& state, const CutPair& pair,
                                const EquationSystem& equation, double nu) {
  StabilizationRecord rec;
  rec.left = pair.left_neighbor;
  rec.small = pair.small;
  rec.right = pair.large;
  rec.alpha = pair.alpha;
  rec.eta = compute_eta(pair.alpha, nu);
  rec.eta_complement = eta_complement(pair.alpha, nu);
  const auto& mesh = state.mesh();
  const double len_s = mesh.cell(rec.small).length;
  const Vector ul = state.evaluate_reference(rec.left, 1.0 + len_s / mesh.cell(rec.left).length);
  const Vector ur =
      state.evaluate_reference(rec.right, -1.0 - len_s / mesh.cell(rec.right).length);
  std::tie(rec.l, rec.r) = direction_matrices(equation, ul, ur);
  return rec;
}

namespace {

/// Everything the penalty terms of one pair need, sampled once.
struct PairSamples {
  int m = 0;
  int p = 0;
  Vector g_left, h_left, g_cut, h_cut;
  struct Point {
    double weight;  // reference weight w_q
    double xi_small, xi_left, xi_right;
    Vector u_left, u_small, u_right, g;
  };
  std::vector<Point> points;
  double ratio_left = 0.0;   // len(k1) / len(k-1)
  double ratio_right = 0.0;  // len(k1) / len(k2)
};

PairSamples sample_pair(const DGState& state, const StabilizationRecord& rec,
                        const NumericalFlux& flux, const Quadrature* quad) {
  const auto& mesh = state.mesh();
  PairSamples s;
  s.m = state.components();
  s.p = state.degree();
  const double len_s = mesh.cell(rec.small).length;
  s.ratio_left = len_s / mesh.cell(rec.left).length;
  s.ratio_right = len_s / mesh.cell(rec.right).length;

  const Vector ul_at_left = state.right_trace(rec.left);
  const Vector us_at_left = state.left_trace(rec.small);
  const Vector ur_at_left = state.evaluate_reference(rec.right, -1.0 - 2.0 * s.ratio_right);
  const Vector ul_at_cut = state.evaluate_reference(rec.left, 1.0 + 2.0 * s.ratio_left);
  const Vector us_at_cut = state.right_trace(rec.small);
  const Vector ur_at_cut = state.left_trace(rec.right);
  s.g_left = flux.evaluate(ul_at_left, ur_at_left);
  s.h_left = flux.evaluate(ul_at_left, us_at_left);
  s.g_cut = flux.evaluate(ul_at_cut, ur_at_cut);
  s.h_cut = flux.evaluate(us_at_cut, ur_at_cut);

  if (quad != nullptr && s.p > 0) {
    for (int q = 0; q < quad->size(); ++q) {
      const double xi = quad->nodes()[static_cast<std::size_t>(q)];
      PairSamples::Point pt;
      pt.weight = quad->weights()[static_cast<std::size_t>(q)];
      pt.xi_small = xi;
      pt.xi_left = 1.0 + s.ratio_left * (1.0 + xi);
      pt.xi_right = -1.0 - s.ratio_right * (1.0 - xi);
      pt.u_left = state.evaluate_reference(rec.left, pt.xi_left);
      pt.u_small = state.evaluate_reference(rec.small, xi);
      pt.u_right = state.evaluate_reference(rec.right, pt.xi_right);
      pt.g = flux.evaluate(pt.u_left, pt.u_right);
      s.points.push_back(std::move(pt));
    }
  }
  return s;
}

std::vector<double> zeros(const PairSamples& s) {
  return std::vector<double>(static_cast<std::size_t>(s.m * (s.p + 1)), 0.0);
}

/// rows[l*(p+1) + i] += scale * v(l) * values[i]
void add_rows(std::vector<double>& rows, int p, const Vector& v, const BasisValues& values,
              double scale) {
  const int modes = p + 1;
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    const double a = scale * v(l);
    for (int i = 0; i < modes; ++i) {
      rows[static_cast<std::size_t>(l * modes + i)] += a * values[static_cast<std::size_t>(i)];
    }
  }
}

PairRows j0_rows(const PairSamples& s, const StabilizationRecord& rec) {
  PairRows out{zeros(s), zeros(s), zeros(s)};
  const auto plus = legendre_values(s.p, 1.0);
  const auto minus = legendre_values(s.p, -1.0);
  const Vector d_left = rec.eta * (s.g_left - s.h_left);
  const Vector d_cut = rec.eta * (s.g_cut - s.h_cut);
  add_rows(out.left, s.p, d_left, plus, 1.0);
  add_rows(out.small, s.p, d_left, minus, -1.0);
  add_rows(out.small, s.p, d_cut, plus, 1.0);
  add_rows(out.right, s.p, d_cut, minus, -1.0);
  return out;
}

/// Neighbor rows of J1 (left and right cells); optionally the small-cell rows.
PairRows j1_rows(const PairSamples& s, const StabilizationRecord& rec, const NumericalFlux& flux,
                 bool small_rows) {
  PairRows out{zeros(s), zeros(s), zeros(s)};
  if (s.p == 0) return out;
  const auto& eq = flux.equation();
  for (const auto& pt : s.points) {
    const auto [ha, hb] = flux.jacobians(pt.u_left, pt.u_right);
    const Vector ha_l = ha * pt.u_left, ha_s = ha * pt.u_small, ha_r = ha * pt.u_right;
    const Vector hb_l = hb * pt.u_left, hb_s = hb * pt.u_small, hb_r = hb * pt.u_right;
    const Vector left_term =
        rec.l * (pt.g - eq.flux(pt.u_left)) + rec.l * ha_l - ha_s + rec.r * ha_r;
    const Vector right_term =
        rec.r * (pt.g - eq.flux(pt.u_right)) + rec.l * hb_l - hb_s + rec.r * hb_r;
    // d_x w_j over the small cell: (2/len_j) phi'(xi_j); times the physical
    // weight len_s w_q / 2 gives w_q (len_s/len_j) phi'(xi_j).
    add_rows(out.left, s.p, left_term, legendre_derivatives(s.p, pt.xi_left),
             rec.eta * pt.weight * s.ratio_left);
    add_rows(out.right, s.p, right_term, legendre_derivatives(s.p, pt.xi_right),
             rec.eta * pt.weight * s.ratio_right);
    if (small_rows) {
      const Vector small_term = pt.g - eq.flux(pt.u_small);
      add_rows(out.small, s.p, small_term, legendre_derivatives(s.p, pt.xi_small),
               -rec.eta * pt.weight);
    }
  }
  return out;
}

std::vector<double> extended_rows(const PairSamples& s) {
  auto rows = zeros(s);
  add_rows(rows, s.p, s.g_cut, legendre_values(s.p, 1.0), 1.0);
  add_rows(rows, s.p, s.g_left, legendre_values(s.p, -1.0), -1.0);
  for (const auto& pt : s.points) {
    add_rows(rows, s.p, pt.g, legendre_derivatives(s.p, pt.xi_small), -pt.weight);
  }
  return rows;
}

void require_legacy_capable(const NumericalFlux& flux) {
  const auto* adv = dynamic_cast<const AdvectionEquation*>(&flux.equation());
  if (adv == nullptr) {
    throw UnsupportedError("legacy volume penalty is defined for linear advection only");
  }
  if (!(adv->beta() > 0.0)) {
    throw UnsupportedError("legacy volume penalty requires beta > 0");
  }
}

void add_to(std::vector<double>& residual, std::size_t offset, const std::vector<double>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) residual[offset + i] += rows[i];
}

}  // namespace

PairRows j0_edge_penalty(const DGState& state, const StabilizationRecord& record,
                         const NumericalFlux& flux) {
  const auto s = sample_pair(state, record, flux, nullptr);
  return j0_rows(s, record);
}

PairRows j1_volume_penalty(const DGState& state, const StabilizationRecord& record,
                           const NumericalFlux& flux, const Quadrature& quad) {
  const auto s = sample_pair(state, record, flux, &quad);
  return j1_rows(s, record, flux, true);
}

PairRows legacy_j1_advection(const DGState& state, const StabilizationRecord& record,
                             const NumericalFlux& flux, const Quadrature& quad) {
  require_legacy_capable(flux);
  const double beta = static_cast<const AdvectionEquation&>(flux.equation()).beta();
  const auto s = sample_pair(state, record, flux, &quad);
  PairRows out{zeros(s), zeros(s), zeros(s)};
  for (const auto& pt : s.points) {
    add_rows(out.small, s.p, pt.u_left - pt.u_small, legendre_derivatives(s.p, pt.xi_small),
             -beta * record.eta * pt.weight);
  }
  return out;
}

std::vector<double> extended_small_rows(const DGState& state, const StabilizationRecord& record,
                                        const NumericalFlux& flux, const Quadrature& quad) {
  const auto s = sample_pair(state, record, flux, &quad);
  return extended_rows(s);
}

void apply_stabilization(const DGState& state, const StabilizationRecord& record,
                         const NumericalFlux& flux, const Quadrature& quad, StabilizationMode mode,
                         std::vector<double>& residual) {
  if (mode == StabilizationMode::off || !record.active()) return;
  if (mode == StabilizationMode::legacy) require_legacy_capable(flux);
  const auto s = sample_pair(state, record, flux, &quad);
  const auto j0 = j0_rows(s, record);
  add_to(residual, state.index(record.left, 0, 0), j0.left);
  add_to(residual, state.index(record.right, 0, 0), j0.right);
  if (mode == StabilizationMode::full) {
    const auto j1 = j1_rows(s, record, flux, false);
    add_to(residual, state.index(record.left, 0, 0), j1.left);
    add_to(residual, state.index(record.right, 0, 0), j1.right);
  }
  // For upwind advection the legacy small-cell rows coincide with the full ones.
  const auto ext = extended_rows(s);
  const std::size_t offset = state.index(record.small, 0, 0);
  for (std::size_t i = 0; i < ext.size(); ++i) {
    residual[offset + i] = record.eta_complement * residual[offset + i] + record.eta * ext[i];
  }
}

}  // namespace cutdg
