#include "cutdg/marching.hpp"

#include <cmath>
#include <sstream>

#include "cutdg/errors.hpp"

namespace cutdg {

double timestep_length(int p, double nu, double h, double lambda_max) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    std::ostringstream msg;
    msg << "degenerate maximal wave speed " << lambda_max;
    throw NumericalError(msg.str());
  }
  return nu * h / ((2.0 * p + 1.0) * lambda_max);
}

TimeIntegrator::TimeIntegrator(int order) : order_(order) {
  switch (order) {
    case 1:
      stages_ = {{{{0, 1.0}}, {{0, 1.0}}}};
      break;
    case 2:
      stages_ = {{{{0, 1.0}}, {{0, 1.0}}}, {{{0, 0.5}, {1, 0.5}}, {{1, 0.5}}}};
      break;
    case 3:
      stages_ = {{{{0, 1.0}}, {{0, 1.0}}},
                 {{{0, 0.75}, {1, 0.25}}, {{1, 0.25}}},
                 {{{0, 1.0 / 3.0}, {2, 2.0 / 3.0}}, {{2, 2.0 / 3.0}}}};
      break;
    case 4:
      stages_ = {
          {{{0, 1.0}}, {{0, 0.391752226571890}}},
          {{{0, 0.444370493651235}, {1, 0.555629506348765}}, {{1, 0.368410593050371}}},
          {{{0, 0.620101851488403}, {2, 0.379898148511597}}, {{2, 0.251891774271694}}},
          {{{0, 0.178079954393132}, {3, 0.821920045606868}}, {{3, 0.544974750228521}}},
          {{{2, 0.517231671970585}, {3, 0.096059710526147}, {4, 0.386708617503269}},
           {{3, 0.063692468666290}, {4, 0.226007483236906}}},
      };
      break;
    default:
      throw DomainError("SSP Runge-Kutta order must be 1, 2, 3 or 4");
  }
}

void TimeIntegrator::step(std::vector<double>& u, double t, double dt, const Rhs& rhs,
                          const StageHook& hook) const {
  const std::size_t n = u.size();
  const std::size_t count = stages_.size();
  std::vector<std::vector<double>> values(count + 1);
  std::vector<std::vector<double>> derivs(count);
  std::vector<double> times(count + 1, t);
  values[0] = u;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& st = stages_[i];
    for (const auto& [k, b] : st.b) {
      const auto ku = static_cast<std::size_t>(k);
      if (derivs[ku].empty()) {
        derivs[ku].resize(n);
        rhs(values[ku], times[ku], derivs[ku]);
      }
    }
    std::vector<double> next(n, 0.0);
    double tn = 0.0;
    for (const auto& [k, a] : st.a) {
      const auto& v = values[static_cast<std::size_t>(k)];
      for (std::size_t r = 0; r < n; ++r) next[r] += a * v[r];
      tn += a * times[static_cast<std::size_t>(k)];
    }
    for (const auto& [k, b] : st.b) {
      const auto& d = derivs[static_cast<std::size_t>(k)];
      const double s = b * dt;
      for (std::size_t r = 0; r < n; ++r) next[r] += s * d[r];
      tn += s;
    }
    if (hook) hook(next);
    values[i + 1] = std::move(next);
    times[i + 1] = tn;
  }
  u = std::move(values[count]);
}

MarchReport advance(DGState& state, const SpatialOperator& op, double t, double t_end,
                    const Limiter* limiter, const MarchOptions& options) {
  MarchReport report;
  report.final_time = t;
  if (!(t_end > t)) return report;
  const int p = state.degree();
  const TimeIntegrator integrator(options.order > 0 ? options.order : std::min(p + 1, 4));
  const bool limit = limiter != nullptr && limiter->active();
  DGState scratch = op.zero_state();
  DGState out = op.zero_state();

  const TimeIntegrator::Rhs rhs = [&](const std::vector<double>& u, double time,
                                      std::vector<double>& du) {
    scratch.data() = u;
    op.rhs(scratch, time, out);
    du = out.data();
  };
  const TimeIntegrator::StageHook hook = [&](std::vector<double>& u) {
    if (!limit) return;
    scratch.data() = u;
    report.limited_cells += limiter->apply(scratch);
    u = scratch.data();
  };

  while (t < t_end) {
    double dt = options.fixed_dt;
    try {
      if (!(dt > 0.0)) {
        dt = timestep_length(p, op.options().nu, op.mesh().h(), op.max_wave_speed(state));
      }
      bool last = false;
      if (t + dt >= t_end) {
        dt = t_end - t;
        last = true;
      }
      integrator.step(state.data(), t, dt, rhs, limit ? hook : TimeIntegrator::StageHook{});
      t = last ? t_end : t + dt;
    } catch (const std::runtime_error& err) {
      std::ostringstream msg;
      msg << err.what() << " (step " << report.steps + 1 << ", t=" << t << ")";
      if (dynamic_cast<const AdmissibilityError*>(&err) != nullptr) {
        throw AdmissibilityError(msg.str());
      }
      throw NumericalError(msg.str());
    }
    ++report.steps;
    report.stages += static_cast<std::size_t>(integrator.stages());
    report.last_dt = dt;
    for (const double v : state.data()) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite coefficient after step " << report.steps << " (t=" << t << ")";
        throw NumericalError(msg.str());
      }
    }
    if (options.observer) options.observer(state, t, report.steps);
  }
  report.final_time = t;
  return report;
}

}  // namespace cutdg
