#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace cutdg {

enum class CellKind { regular, cut_small, cut_large };

std::string_view to_string(CellKind kind);

/// One mesh cell. The length is stored separately from the edge coordinates
/// so that tiny cut cells keep their exact size alpha * h.
struct Cell {
  double left = 0.0;
  double right = 0.0;
  double length = 0.0;
  CellKind kind = CellKind::regular;

  double center() const { return left + 0.5 * length; }
};

/// A background cell split into a small cell of length alpha*h followed by a
/// large cell of length (1-alpha)*h.
struct CutPair {
  std::size_t small = 0;          // I_{k1}
  std::size_t large = 0;          // I_{k2}
  std::size_t left_neighbor = 0;  // I_{k-1}
  double alpha = 0.0;

  /// Stencil {k-1, k1, k2} of the stabilization.
  std::array<std::size_t, 3> neighborhood() const { return {left_neighbor, small, large}; }
};

/// Background spacing h with a set of split background cells.
class CutCellMesh {
 public:
  struct Split {
    int background_index;  // 0-based index of the background cell
    double alpha;
  };

  /// Throws DomainError for alpha outside (0, 1/2], MeshError for a split of
  /// the first background cell (it needs a left neighbor) or duplicated splits.
  CutCellMesh(double x_left, double x_right, int background_cells, std::vector<Split> splits);

  std::size_t size() const { return cells_.size(); }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  std::span<const Cell> cells() const { return cells_; }
  /// size() + 1 coordinates, strictly increasing.
  std::span<const double> edges() const { return edges_; }
  std::span<const CutPair> cut_pairs() const { return pairs_; }

  double h() const { return h_; }
  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  double domain_length() const { return x_right_ - x_left_; }
  int background_cells() const { return background_cells_; }

  /// Indices of all cells of length h.
  std::vector<std::size_t> regular_cells() const;

  /// Cell containing x (left-closed); x == x_right maps to the last cell.
  std::size_t locate(double x) const;

  /// CSV dump: index,x_left,x_right,length,kind,alpha.
  void write_csv(std::ostream& out) const;

 private:
  double x_left_;
  double x_right_;
  int background_cells_;
  double h_;
  std::vector<Cell> cells_;
  std::vector<double> edges_;
  std::vector<CutPair> pairs_;
};

/// Portable 64-bit generator (SplitMix64); identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// alpha_k = scale * X_k with X_k uniform in (0,1); draws below 1e-14 are redrawn.
std::vector<double> random_alphas(std::size_t count, std::uint64_t seed, double scale = 1e-2);

struct RandomAlpha {
  std::uint64_t seed = 42;
  double scale = 1e-2;
};

/// Constant alpha, seeded random alphas, or one explicit value per split cell.
using AlphaSpec = std::variant<double, RandomAlpha, std::vector<double>>;

struct Band {
  double lower;
  double upper;
};

/// N background cells on (x_left, x_right) with background cell k split.
CutCellMesh model_mesh(int n, int split_index, double alpha, double x_left = 0.0,
                       double x_right = 1.0);

/// Splits every background cell inside the band. The band must coincide with
/// background edges (MeshError otherwise).
CutCellMesh banded_mesh(int n, Band band, const AlphaSpec& alphas, double x_left = 0.0,
                        double x_right = 1.0);

/// Shock-tube mesh on (-1, 1): splits every background cell whose centroid
/// lies in [band.lower, band.upper), alphas drawn from the seed.
CutCellMesh sod_mesh(int n, Band band = {-0.75, 0.75}, std::uint64_t seed = 42);

}  // namespace cutdg
