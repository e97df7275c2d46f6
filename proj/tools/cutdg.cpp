#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "cutdg/config.hpp"
#include "cutdg/errors.hpp"
#include "cutdg/harness.hpp"
#include "cutdg/spectral.hpp"

namespace fs = std::filesystem;
using cutdg::RunConfig;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> p;
  std::optional<int> n;
  std::optional<double> nu;
  std::optional<double> t_final;
  std::optional<double> alpha;
  std::optional<std::string> limiter;
  std::optional<std::string> positivity;
  std::optional<std::string> variant;
  std::optional<std::string> output_dir;
  std::optional<std::string> flux;
  std::optional<std::string> equation;
  std::size_t snapshot_every = 0;
  bool dump_mesh = false;
};

RunConfig resolve(const std::string& problem, const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : cutdg::load_config(o.config_path);
  c.problem = problem;
  if (o.p) {
    c.p = *o.p;
    c.p_list = {*o.p};
  }
  if (o.n) c.mesh.n = *o.n;
  if (o.nu) c.nu = *o.nu;
  if (o.t_final) c.t_final = *o.t_final;
  if (o.alpha) {
    c.mesh.alpha = *o.alpha;
    c.spectrum_alphas = {*o.alpha};
    c.alpha_modes = {*o.alpha};
  }
  if (o.limiter) c.limiter.enabled = *o.limiter == "tvdm";
  if (o.positivity) c.limiter.positivity = *o.positivity == "on";
  if (o.variant) c.variant = *o.variant;
  if (o.output_dir) c.output_dir = *o.output_dir;
  if (o.flux) c.flux = *o.flux;
  if (o.equation) c.equation = *o.equation;
  return c;
}

fs::path output_path(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  return fs::path(c.output_dir) / name;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw cutdg::DomainError("cannot write " + path.string());
  return out;
}

void warn_cfl(const cutdg::CutCellMesh& mesh, double nu) {
  for (const auto& pair : mesh.cut_pairs()) {
    if (!(pair.alpha < nu && nu < 1.0 - pair.alpha)) {
      std::cerr << "warning: nu=" << nu << " outside (alpha, 1-alpha) for alpha=" << pair.alpha
                << "; the P0 scheme is not guaranteed monotone\n";
      return;
    }
  }
}

void maybe_dump_mesh(const RunConfig& c, const cutdg::CutCellMesh& mesh, bool enabled) {
  if (!enabled) return;
  auto out = open_output(output_path(c, "mesh.csv"));
  mesh.write_csv(out);
}

void write_metadata(const RunConfig& c, double seconds, const json& diagnostics) {
  json meta;
  meta["config"] = cutdg::to_json(c);
  meta["git"] = cutdg::build_revision();
  meta["seconds"] = seconds;
  meta["diagnostics"] = diagnostics;
  auto out = open_output(output_path(c, c.metadata_file));
  out << meta.dump(2) << '\n';
}

json run_converge(const RunConfig& c) {
  const auto problem = cutdg::manufactured_case(c.equation, c.roe_average);
  std::vector<cutdg::ErrorReport> reports;
  json summary = json::array();
  for (const int p : c.p_list) {
    auto settings = c.solver_settings();
    settings.p = p;
    for (const auto& alpha : c.alpha_modes) {
      reports.push_back(cutdg::run_convergence(problem, settings, c.n_list, alpha, c.mesh.band));
      const auto& r = reports.back();
      cutdg::print_eoc_table(std::cout, r);
      summary.push_back({{"p", p},
                         {"mesh", r.mesh_label},
                         {"eoc_l1", r.finest().eoc_l1},
                         {"eoc_linf", r.finest().eoc_linf},
                         {"seconds", r.seconds}});
    }
  }
  auto out = open_output(output_path(c, c.errors_file));
  cutdg::write_errors_csv(out, reports);
  return summary;
}

json run_solve(const RunConfig& c, const Overrides& o) {
  const auto problem = cutdg::manufactured_case(c.equation, c.roe_average);
  auto mesh_spec = c.mesh;
  mesh_spec.x_left = problem.x_left;
  mesh_spec.x_right = problem.x_right;
  const auto mesh = cutdg::build_mesh(mesh_spec);
  warn_cfl(*mesh, c.nu);
  maybe_dump_mesh(c, *mesh, o.dump_mesh);
  cutdg::MarchOptions march;
  if (o.snapshot_every > 0) {
    march.observer = [&](const cutdg::DGState& state, double, std::size_t step) {
      if (step % o.snapshot_every != 0) return;
      std::ostringstream name;
      name << "snapshot_" << std::setw(6) << std::setfill('0') << step << ".csv";
      auto out = open_output(output_path(c, name.str()));
      cutdg::write_snapshot_csv(out, state, *problem.equation);
    };
  }
  const auto result = cutdg::solve_manufactured(problem, c.solver_settings(), mesh, c.t_final, march);
  auto out = open_output(output_path(c, c.snapshot_file));
  cutdg::write_snapshot_csv(out, result.state, *problem.equation);
  std::cout << problem.name << "  cells=" << mesh->size() << "  steps=" << result.march.steps
            << std::scientific << std::setprecision(4) << "  L1=" << result.errors.l1
            << "  Linf=" << result.errors.linf << '\n';
  return {{"cells", mesh->size()},
          {"steps", result.march.steps},
          {"l1", result.errors.l1},
          {"linf", result.errors.linf},
          {"limited_cells", result.march.limited_cells}};
}

json run_sod(const RunConfig& c, const Overrides& o) {
  cutdg::SodOptions opt;
  opt.n = c.mesh.n;
  opt.p = c.p;
  opt.limiter = c.limiter.enabled;
  opt.positivity = c.limiter.positivity;
  opt.seed = c.mesh.seed;
  opt.nu = c.nu;
  opt.t_final = c.t_final;
  opt.band = c.mesh.band;
  const auto mesh = cutdg::sod_mesh(opt.n, opt.band, opt.seed);
  warn_cfl(mesh, c.nu);
  maybe_dump_mesh(c, mesh, o.dump_mesh);
  const auto result = cutdg::run_sod(opt);
  auto out = open_output(output_path(c, c.snapshot_file));
  cutdg::write_snapshot_csv(out, result.state, cutdg::EulerEquations{});
  std::cout << "sod  p=" << c.p << "  limiter=" << (opt.limiter ? "tvdm" : "off")
            << std::scientific << std::setprecision(4) << "  min rho=" << result.min_rho
            << "  min p=" << result.min_p << "  TV(rho)=" << result.total_variation
            << "  L1(rho)=" << result.l1_rho << '\n';
  return {{"min_rho", result.min_rho},
          {"min_p", result.min_p},
          {"total_variation", result.total_variation},
          {"l1_rho", result.l1_rho},
          {"steps", result.march.steps}};
}

json run_burgers_shock(const RunConfig& c) {
  cutdg::BurgersShockOptions opt;
  opt.n = c.mesh.n;
  opt.p = c.p;
  opt.limiter = c.limiter.enabled;
  opt.seed = c.mesh.seed;
  opt.nu = c.nu;
  opt.t_final = c.t_final;
  const auto result = cutdg::run_burgers_shock(opt);
  auto out = open_output(output_path(c, c.snapshot_file));
  cutdg::write_snapshot_csv(out, result.state, cutdg::BurgersEquation{});
  std::cout << "burgers shock  p=" << c.p << "  limiter=" << (opt.limiter ? "tvdm" : "off")
            << std::scientific << std::setprecision(4) << "  min=" << result.min_average
            << "  max=" << result.max_average << "  overshoot=" << result.overshoot << '\n';
  return {{"min_average", result.min_average},
          {"max_average", result.max_average},
          {"overshoot", result.overshoot},
          {"steps", result.march.steps}};
}

json run_spectrum(const RunConfig& c, const Overrides& o) {
  const auto variant = cutdg::parse_variant(c.variant);
  json rows = json::array();
  for (std::size_t i = 0; i < c.spectrum_alphas.size(); ++i) {
    const double alpha = c.spectrum_alphas[i];
    const auto mesh = cutdg::spectral_study_mesh(alpha);
    maybe_dump_mesh(c, *mesh, o.dump_mesh);
    const auto op = cutdg::assemble_matrix(mesh, c.p, variant, c.nu);
    const auto values = cutdg::eigenvalues(op.matrix);
    const double mu = cutdg::spectral_abscissa(values);
    std::cout << "spectrum  p=" << c.p << "  alpha=" << alpha << "  variant=" << c.variant
              << std::scientific << std::setprecision(3) << "  mu=" << mu << std::defaultfloat
              << '\n';
    std::string name = c.spectrum_file;
    if (c.spectrum_alphas.size() > 1) {
      std::ostringstream tag;
      tag << "alpha" << alpha << '_';
      name = tag.str() + name;
    }
    auto out = open_output(output_path(c, name));
    cutdg::write_spectrum_csv(out, values);
    rows.push_back({{"alpha", alpha}, {"mu", mu}, {"dimension", op.matrix.rows()}});
  }
  return rows;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--p", o.p, "polynomial degree")->check(CLI::Range(0, 3));
  sub->add_option("--n", o.n, "background cells");
  sub->add_option("--nu", o.nu, "CFL number");
  sub->add_option("--t-final", o.t_final, "final time");
  sub->add_option("--alpha", o.alpha, "constant cut fraction");
  sub->add_option("--limiter", o.limiter, "slope limiter")->check(CLI::IsMember({"off", "tvdm"}));
  sub->add_option("--positivity", o.positivity, "positivity guard")
      ->check(CLI::IsMember({"on", "off"}));
  sub->add_option("--out", o.output_dir, "output directory");
  sub->add_flag("--dump-mesh", o.dump_mesh, "write mesh.csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-cell DG solver with domain-of-dependence stabilization"};
  app.require_subcommand(1);
  Overrides o;

  auto* converge = app.add_subcommand("converge", "manufactured-solution convergence sweep");
  auto* solve = app.add_subcommand("solve", "single manufactured-solution run");
  auto* sod = app.add_subcommand("sod", "Sod shock tube");
  auto* shock = app.add_subcommand("burgers-shock", "Burgers sine wave steepening into shocks");
  auto* spectrum = app.add_subcommand("spectrum", "spectral abscissa of the advection operator");
  for (auto* sub : {converge, solve, sod, shock, spectrum}) add_common(sub, o);
  for (auto* sub : {converge, solve}) {
    sub->add_option("--equation", o.equation, "burgers, linsys or euler")
        ->check(CLI::IsMember({"burgers", "linsys", "euler"}));
    sub->add_option("--flux", o.flux, "numerical flux key");
  }
  solve->add_option("--snapshot-every", o.snapshot_every, "write a snapshot every k steps");
  spectrum->add_option("--variant", o.variant, "stabilization variant")
      ->check(CLI::IsMember({"full", "legacy"}));

  CLI11_PARSE(app, argc, argv);

  try {
    const auto* sub = app.get_subcommands().front();
    const RunConfig c = resolve(sub->get_name(), o);
    const auto start = std::chrono::steady_clock::now();
    json diagnostics;
    if (sub == converge) {
      diagnostics = run_converge(c);
    } else if (sub == solve) {
      diagnostics = run_solve(c, o);
    } else if (sub == sod) {
      diagnostics = run_sod(c, o);
    } else if (sub == shock) {
      diagnostics = run_burgers_shock(c);
    } else {
      diagnostics = run_spectrum(c, o);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_metadata(c, seconds, diagnostics);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
