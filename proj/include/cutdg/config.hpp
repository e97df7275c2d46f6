#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cutdg/harness.hpp"

namespace cutdg {

/// Everything that determines a run; parsed from one JSON file.
struct RunConfig {
  /// "converge", "solve", "sod", "burgers-shock" or "spectrum".
  std::string problem = "solve";
  /// Equation key; for converge/solve also the manufactured case key.
  std::string equation = "burgers";
  std::string flux;  // empty: default flux of the equation
  MeshSpec mesh;
  int p = 1;
  double nu = 0.4;
  double t_final = 1.0;
  BoundaryKind boundary = BoundaryKind::periodic;
  StabilizationMode stabilization = StabilizationMode::full;
  LimiterConfig limiter;
  RoeAverageMode roe_average = RoeAverageMode::standard;
  RoeJacobianMode roe_jacobian = RoeJacobianMode::frozen;
  bool entropy_fix = false;

  // Convergence sweep.
  std::vector<int> n_list{20, 40, 80, 160};
  std::vector<int> p_list{0, 1, 2, 3};
  std::vector<AlphaSpec> alpha_modes{1e-1, 1e-6, RandomAlpha{42, 1e-2}};

  // Spectrum.
  std::vector<double> spectrum_alphas{1e-1, 1e-6};
  std::string variant = "full";

  // Outputs (relative to output_dir).
  std::string output_dir = "out";
  std::string errors_file = "errors.csv";
  std::string snapshot_file = "snapshot.csv";
  std::string spectrum_file = "spectrum.csv";
  std::string metadata_file = "metadata.json";

  SolverSettings solver_settings() const;
};

/// Throws DomainError on unknown keys or malformed values.
RunConfig parse_config(const nlohmann::json& json);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);

/// Git revision the library was built from.
std::string build_revision();

}  // namespace cutdg
