#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cutdg/basis.hpp"
#include "cutdg/equations.hpp"
#include "cutdg/limiter.hpp"
#include "cutdg/marching.hpp"
#include "cutdg/mesh.hpp"
#include "cutdg/riemann.hpp"
#include "cutdg/spatial.hpp"

namespace cutdg {

/// Mesh description: "uniform", "band", "model" or "sod".
struct MeshSpec {
  std::string kind = "band";
  int n = 100;
  double x_left = 0.0;
  double x_right = 1.0;
  Band band{0.1, 0.9};
  AlphaSpec alpha = 1e-3;
  int split_index = 50;
  std::uint64_t seed = 42;
};

std::shared_ptr<const CutCellMesh> build_mesh(const MeshSpec& spec);

/// Short label such as "alpha=1e-06" or "random(seed=42)".
std::string describe(const AlphaSpec& alpha);

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 by per-cell Gauss quadrature of |u_h - u| summed over components; L-inf
/// over the quadrature points and both edge traces of every cell.
ErrorNorms error_norms(const DGState& state, const SpaceTimeField& exact, double t,
                       int points = 10);

/// Discretization choices shared by all drivers.
struct SolverSettings {
  std::string flux;  // empty: default flux of the equation
  int p = 1;
  double nu = 0.4;
  BoundaryKind boundary = BoundaryKind::periodic;
  StabilizationMode stabilization = StabilizationMode::full;
  LimiterConfig limiter;
  FluxOptions flux_options;
  int quadrature_points = 0;
};

/// Manufactured case by key: "burgers", "linsys", "euler".
ManufacturedCase manufactured_case(std::string_view key,
                                   RoeAverageMode roe_average = RoeAverageMode::standard);

struct ConvergenceRow {
  int n = 0;
  std::size_t cells = 0;
  std::size_t steps = 0;
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double linf = std::numeric_limits<double>::quiet_NaN();
  double eoc_l1 = std::numeric_limits<double>::quiet_NaN();
  double eoc_linf = std::numeric_limits<double>::quiet_NaN();
  std::string failure;
};

struct ErrorReport {
  std::string case_name;
  std::string mesh_label;
  int p = 0;
  std::vector<ConvergenceRow> rows;
  double seconds = 0.0;

  const ConvergenceRow& finest() const { return rows.back(); }
};

/// Solves the case on band meshes for every N (halving h) and records errors
/// at the final time with EOC = log2(e_{i-1} / e_i). Failures are recorded
/// per row; the sweep continues.
ErrorReport run_convergence(const ManufacturedCase& problem, const SolverSettings& settings,
                            const std::vector<int>& ns, const AlphaSpec& alpha,
                            Band band = {0.1, 0.9});

struct SolveResult {
  DGState state;
  MarchReport march;
  ErrorNorms errors;
};

/// One manufactured-solution run on the given mesh up to t_final.
SolveResult solve_manufactured(const ManufacturedCase& problem, const SolverSettings& settings,
                               std::shared_ptr<const CutCellMesh> mesh, double t_final,
                               const MarchOptions& march = {});

void write_errors_csv(std::ostream& out, const std::vector<ErrorReport>& reports);
void print_eoc_table(std::ostream& out, const ErrorReport& report);

/// Writes x, component values for every cell at its left edge, centroid and
/// right edge (primitive variables appended for Euler).
void write_snapshot_csv(std::ostream& out, const DGState& state, const EquationSystem& equation);

struct SodOptions {
  int n = 100;
  int p = 0;
  bool limiter = false;
  bool positivity = false;
  std::uint64_t seed = 42;
  double nu = 0.4;
  double t_final = 0.4;
  Band band{-0.75, 0.75};
};

struct SodResult {
  DGState state;
  MarchReport march;
  double min_rho = 0.0;
  double min_p = 0.0;
  double total_variation = 0.0;  // of the density cell averages
  double l1_rho = 0.0;           // distance to the exact Riemann solution
  bool finite = true;
};

SodResult run_sod(const SodOptions& options);

struct BurgersShockOptions {
  int n = 100;
  int p = 0;
  bool limiter = false;
  std::uint64_t seed = 42;
  double nu = 0.4;
  double t_final = 0.1;
};

struct BurgersShockResult {
  DGState state;
  MarchReport march;
  double min_average = 0.0;
  double max_average = 0.0;
  /// max(max_average - 1, -1 - min_average, 0).
  double overshoot = 0.0;
  bool finite = true;
};

BurgersShockResult run_burgers_shock(const BurgersShockOptions& options);

}  // namespace cutdg
