#include "cutdg/harness.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cutdg/errors.hpp"
#include "cutdg/euler_riemann.hpp"

namespace cutdg {

std::shared_ptr<const CutCellMesh> build_mesh(const MeshSpec& spec) {
  if (spec.kind == "uniform") {
    return std::make_shared<const CutCellMesh>(spec.x_left, spec.x_right, spec.n,
                                               std::vector<CutCellMesh::Split>{});
  }
  if (spec.kind == "band") {
    return std::make_shared<const CutCellMesh>(
        banded_mesh(spec.n, spec.band, spec.alpha, spec.x_left, spec.x_right));
  }
  if (spec.kind == "model") {
    const auto* alpha = std::get_if<double>(&spec.alpha);
    if (alpha == nullptr) throw MeshError("model mesh needs a constant alpha");
    return std::make_shared<const CutCellMesh>(
        model_mesh(spec.n, spec.split_index, *alpha, spec.x_left, spec.x_right));
  }
  if (spec.kind == "sod") {
    return std::make_shared<const CutCellMesh>(sod_mesh(spec.n, spec.band, spec.seed));
  }
  throw MeshError("unknown mesh kind '" + spec.kind + "'");
}

std::string describe(const AlphaSpec& alpha) {
  std::ostringstream out;
  if (const auto* constant = std::get_if<double>(&alpha)) {
    out << "alpha=" << std::setprecision(3) << *constant;
  } else if (const auto* random = std::get_if<RandomAlpha>(&alpha)) {
    out << "random(seed=" << random->seed << ")";
  } else {
    out << "alpha-list";
  }
  return out.str();
}

ErrorNorms error_norms(const DGState& state, const SpaceTimeField& exact, double t, int points) {
  const Quadrature quad(points);
  ErrorNorms norms;
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const auto& c = state.mesh().cell(j);
    for (int q = 0; q < quad.size(); ++q) {
      const double xi = quad.nodes()[static_cast<std::size_t>(q)];
      const Vector diff =
          state.evaluate_reference(j, xi) - exact(c.center() + 0.5 * c.length * xi, t);
      norms.l1 += 0.5 * c.length * quad.weights()[static_cast<std::size_t>(q)] * diff.cwiseAbs().sum();
      norms.linf = std::max(norms.linf, diff.cwiseAbs().maxCoeff());
    }
    const Vector dl = state.left_trace(j) - exact(c.left, t);
    const Vector dr = state.right_trace(j) - exact(c.left + c.length, t);
    norms.linf = std::max({norms.linf, dl.cwiseAbs().maxCoeff(), dr.cwiseAbs().maxCoeff()});
  }
  return norms;
}

ManufacturedCase manufactured_case(std::string_view key, RoeAverageMode roe_average) {
  if (key == "burgers") return manufactured_burgers();
  if (key == "linsys") return linear_system_case();
  if (key == "euler") {
    auto c = manufactured_euler();
    c.equation = std::make_shared<EulerEquations>(1.4, roe_average);
    return c;
  }
  throw DomainError("unknown manufactured case '" + std::string(key) + "'");
}

namespace {

std::shared_ptr<const NumericalFlux> flux_for(const std::shared_ptr<const EquationSystem>& eq,
                                              const SolverSettings& settings) {
  const std::string key =
      settings.flux.empty() ? std::string(default_flux_key(*eq)) : settings.flux;
  return make_flux(key, eq, settings.flux_options);
}

SpatialOptions spatial_options(const SolverSettings& settings) {
  SpatialOptions opt;
  opt.boundary = settings.boundary;
  opt.stabilization = settings.stabilization;
  opt.nu = settings.nu;
  opt.quadrature_points = settings.quadrature_points;
  return opt;
}

}  // namespace

ErrorReport run_convergence(const ManufacturedCase& problem, const SolverSettings& settings,
                            const std::vector<int>& ns, const AlphaSpec& alpha, Band band) {
  const auto start = std::chrono::steady_clock::now();
  ErrorReport report;
  report.case_name = problem.name;
  report.mesh_label = describe(alpha);
  report.p = settings.p;
  const auto flux = flux_for(problem.equation, settings);
  const int m = problem.equation->components();
  for (const int n : ns) {
    ConvergenceRow row;
    row.n = n;
    try {
      auto mesh = std::make_shared<const CutCellMesh>(
          banded_mesh(n, band, alpha, problem.x_left, problem.x_right));
      row.cells = mesh->size();
      const SpatialOperator op(mesh, flux, settings.p, spatial_options(settings), problem.source);
      const auto exact = problem.exact;
      DGState state = project([&](double x) { return exact(x, 0.0); }, mesh, m, settings.p);
      const Limiter limiter(settings.limiter, op);
      if (limiter.active()) limiter.apply(state);
      const auto march = advance(state, op, 0.0, problem.final_time, &limiter);
      row.steps = march.steps;
      const auto norms = error_norms(state, exact, problem.final_time);
      row.l1 = norms.l1;
      row.linf = norms.linf;
    } catch (const std::exception& err) {
      row.failure = err.what();
    }
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.eoc_l1 = std::log2(prev.l1 / row.l1);
      row.eoc_linf = std::log2(prev.linf / row.linf);
    }
    report.rows.push_back(row);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolveResult solve_manufactured(const ManufacturedCase& problem, const SolverSettings& settings,
                               std::shared_ptr<const CutCellMesh> mesh, double t_final,
                               const MarchOptions& march) {
  const SpatialOperator op(mesh, flux_for(problem.equation, settings), settings.p,
                           spatial_options(settings), problem.source);
  const auto exact = problem.exact;
  SolveResult result{project([&](double x) { return exact(x, 0.0); }, mesh,
                             problem.equation->components(), settings.p),
                     {}, {}};
  const Limiter limiter(settings.limiter, op);
  if (limiter.active()) limiter.apply(result.state);
  result.march = advance(result.state, op, 0.0, t_final, &limiter, march);
  result.errors = error_norms(result.state, exact, t_final);
  return result;
}

void write_errors_csv(std::ostream& out, const std::vector<ErrorReport>& reports) {
  out << "case,mesh,p,N,cells,steps,l1,linf,eoc_l1,eoc_linf,failure\n";
  out << std::setprecision(10);
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out << r.case_name << ',' << r.mesh_label << ',' << r.p << ',' << row.n << ',' << row.cells
          << ',' << row.steps << ',' << row.l1 << ',' << row.linf << ',' << row.eoc_l1 << ','
          << row.eoc_linf << ',' << '"' << row.failure << '"' << '\n';
    }
  }
}

void print_eoc_table(std::ostream& out, const ErrorReport& report) {
  out << report.case_name << "  p=" << report.p << "  " << report.mesh_label << "  ("
      << std::fixed << std::setprecision(1) << report.seconds << " s)\n";
  out << "      N   cells   steps        L1  EOC        Linf  EOC\n";
  for (const auto& row : report.rows) {
    out << std::setw(7) << row.n << std::setw(8) << row.cells << std::setw(8) << row.steps;
    if (!row.failure.empty()) {
      out << "  failed: " << row.failure << '\n';
      continue;
    }
    out << std::scientific << std::setprecision(3) << std::setw(10) << row.l1 << std::fixed
        << std::setprecision(2) << std::setw(5) << (std::isnan(row.eoc_l1) ? 0.0 : row.eoc_l1)
        << std::scientific << std::setprecision(3) << std::setw(12) << row.linf << std::fixed
        << std::setprecision(2) << std::setw(5) << (std::isnan(row.eoc_linf) ? 0.0 : row.eoc_linf)
        << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_snapshot_csv(std::ostream& out, const DGState& state, const EquationSystem& equation) {
  const auto* euler = dynamic_cast<const EulerEquations*>(&equation);
  const int m = state.components();
  out << "cell,kind,x";
  for (int l = 0; l < m; ++l) out << ",u" << l;
  if (euler != nullptr) out << ",rho,v,p";
  out << '\n' << std::setprecision(15);
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const auto& c = state.mesh().cell(j);
    const double xs[] = {c.left, c.center(), c.left + c.length};
    const double xis[] = {-1.0, 0.0, 1.0};
    for (int s = 0; s < 3; ++s) {
      const Vector u = state.evaluate_reference(j, xis[s]);
      out << j << ',' << to_string(c.kind) << ',' << xs[s];
      for (int l = 0; l < m; ++l) out << ',' << u(l);
      if (euler != nullptr) {
        const Vector w = euler->primitive(u);
        out << ',' << w(0) << ',' << w(1) << ',' << w(2);
      }
      out << '\n';
    }
  }
}

SodResult run_sod(const SodOptions& options) {
  auto euler = std::make_shared<EulerEquations>();
  auto mesh = std::make_shared<const CutCellMesh>(sod_mesh(options.n, options.band, options.seed));
  SpatialOptions sopt;
  sopt.boundary = BoundaryKind::transmissive;
  sopt.nu = options.nu;
  const SpatialOperator op(mesh, make_flux("roe", euler), options.p, sopt);
  const Vector left = euler->conserved(1.0, 0.0, 1.0);
  const Vector right = euler->conserved(0.125, 0.0, 0.1);
  DGState state = project([&](double x) { return x < 0.0 ? left : right; }, mesh, 3, options.p);
  LimiterConfig lcfg;
  lcfg.enabled = options.limiter;
  lcfg.positivity = options.positivity;
  const Limiter limiter(lcfg, op);
  if (limiter.active()) limiter.apply(state);

  SodResult result{state, {}, 0.0, 0.0, 0.0, 0.0, true};
  result.march = advance(state, op, 0.0, options.t_final, &limiter);
  result.state = state;

  result.min_rho = std::numeric_limits<double>::infinity();
  result.min_p = std::numeric_limits<double>::infinity();
  const Quadrature quad(std::max(options.p + 2, 4));
  for (std::size_t j = 0; j < state.cells(); ++j) {
    auto check = [&](const Vector& u) {
      result.finite = result.finite && u.allFinite();
      result.min_rho = std::min(result.min_rho, u(0));
      result.min_p = std::min(result.min_p, euler->pressure(u));
    };
    check(state.left_trace(j));
    check(state.right_trace(j));
    for (int q = 0; q < quad.size(); ++q) {
      check(state.evaluate_reference(j, quad.nodes()[static_cast<std::size_t>(q)]));
    }
    if (j > 0) result.total_variation += std::abs(state.coeff(j, 0, 0) - state.coeff(j - 1, 0, 0));
  }

  // L1 density error with composite sub-cell quadrature (the reference is discontinuous).
  const ExactEulerRiemann exact({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, euler->gamma());
  const Quadrature fine(5);
  constexpr int pieces = 16;
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const auto& c = state.mesh().cell(j);
    for (int s = 0; s < pieces; ++s) {
      for (int q = 0; q < fine.size(); ++q) {
        const double local = (s + 0.5 * (1.0 + fine.nodes()[static_cast<std::size_t>(q)])) / pieces;
        const double xi = -1.0 + 2.0 * local;
        const double x = c.left + local * c.length;
        const double w = fine.weights()[static_cast<std::size_t>(q)] * 0.5 * c.length / pieces;
        const double rho_exact = exact.sample(x / options.t_final).rho;
        result.l1_rho += w * std::abs(state.evaluate_reference(j, xi)(0) - rho_exact);
      }
    }
  }
  return result;
}

BurgersShockResult run_burgers_shock(const BurgersShockOptions& options) {
  auto burgers = std::make_shared<BurgersEquation>();
  auto mesh = std::make_shared<const CutCellMesh>(
      banded_mesh(options.n, {0.1, 0.9}, RandomAlpha{options.seed, 1e-2}));
  SpatialOptions sopt;
  sopt.boundary = BoundaryKind::periodic;
  sopt.nu = options.nu;
  const SpatialOperator op(mesh, make_flux("godunov", burgers), options.p, sopt);
  const auto initial = [](double x) {
    Vector u(1);
    u(0) = std::sin(4.0 * std::numbers::pi * (x + 0.5));
    return u;
  };
  DGState state = project(initial, mesh, 1, options.p);
  LimiterConfig lcfg;
  lcfg.enabled = options.limiter;
  const Limiter limiter(lcfg, op);
  if (limiter.active()) limiter.apply(state);

  BurgersShockResult result{state, {}, 0.0, 0.0, 0.0, true};
  result.march = advance(state, op, 0.0, options.t_final, &limiter);
  result.state = state;
  result.min_average = std::numeric_limits<double>::infinity();
  result.max_average = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < state.cells(); ++j) {
    const double avg = state.coeff(j, 0, 0);
    result.finite = result.finite && std::isfinite(avg);
    result.min_average = std::min(result.min_average, avg);
    result.max_average = std::max(result.max_average, avg);
  }
  result.overshoot =
      std::max({result.max_average - 1.0, -1.0 - result.min_average, 0.0});
  return result;
}

}  // namespace cutdg
