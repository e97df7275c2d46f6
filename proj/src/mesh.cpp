#include "cutdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cutdg/errors.hpp"

namespace cutdg {

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::regular: return "equi";
    case CellKind::cut_small: return "cut_small";
    case CellKind::cut_large: return "cut_large";
  }
  return "unknown";
}

CutCellMesh::CutCellMesh(double x_left, double x_right, int background_cells,
                         std::vector<Split> splits)
    : x_left_(x_left), x_right_(x_right), background_cells_(background_cells) {
  if (background_cells < 1) throw MeshError("mesh needs at least one background cell");
  if (!(x_right > x_left)) throw MeshError("mesh domain must satisfy x_left < x_right");
  h_ = (x_right - x_left) / background_cells;

  std::sort(splits.begin(), splits.end(),
            [](const Split& a, const Split& b) { return a.background_index < b.background_index; });
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const auto& split = splits[s];
    if (!(split.alpha > 0.0 && split.alpha <= 0.5)) {
      std::ostringstream msg;
      msg << "cut fraction alpha=" << split.alpha << " outside (0, 1/2]";
      throw DomainError(msg.str());
    }
    if (split.background_index < 1 || split.background_index >= background_cells) {
      std::ostringstream msg;
      msg << "cannot split background cell " << split.background_index
          << ": index must lie in [1, " << background_cells - 1 << "]";
      throw MeshError(msg.str());
    }
    if (s > 0 && splits[s - 1].background_index == split.background_index) {
      throw MeshError("background cell split twice");
    }
  }

  auto background_edge = [&](int i) {
    return i == background_cells ? x_right : x_left + i * h_;
  };

  edges_.push_back(x_left);
  std::size_t next_split = 0;
  for (int i = 0; i < background_cells; ++i) {
    const double left = background_edge(i);
    const double right = background_edge(i + 1);
    if (next_split < splits.size() && splits[next_split].background_index == i) {
      const double alpha = splits[next_split].alpha;
      const double cut = left + alpha * h_;
      CutPair pair;
      pair.left_neighbor = cells_.size() - 1;
      pair.small = cells_.size();
      cells_.push_back({left, cut, alpha * h_, CellKind::cut_small});
      edges_.push_back(cut);
      pair.large = cells_.size();
      cells_.push_back({cut, right, (1.0 - alpha) * h_, CellKind::cut_large});
      edges_.push_back(right);
      pair.alpha = alpha;
      pairs_.push_back(pair);
      ++next_split;
    } else {
      cells_.push_back({left, right, h_, CellKind::regular});
      edges_.push_back(right);
    }
  }
  for (std::size_t e = 1; e < edges_.size(); ++e) {
    if (!(edges_[e] > edges_[e - 1])) {
      throw MeshError("cut position collapsed onto a background edge (alpha too small)");
    }
  }
}

std::vector<std::size_t> CutCellMesh::regular_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].kind == CellKind::regular) out.push_back(i);
  }
  return out;
}

std::size_t CutCellMesh::locate(double x) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  if (it == edges_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(std::distance(edges_.begin(), it)) - 1;
  return std::min(idx, cells_.size() - 1);
}

void CutCellMesh::write_csv(std::ostream& out) const {
  std::vector<double> alpha_of(cells_.size(), 0.0);
  for (const auto& pair : pairs_) {
    alpha_of[pair.small] = pair.alpha;
    alpha_of[pair.large] = pair.alpha;
  }
  out << "index,x_left,x_right,length,kind,alpha\n" << std::setprecision(17);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    out << i << ',' << c.left << ',' << c.right << ',' << c.length << ',' << to_string(c.kind)
        << ',' << alpha_of[i] << '\n';
  }
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<double> random_alphas(std::size_t count, std::uint64_t seed, double scale) {
  SplitMix64 rng(seed);
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    const double alpha = scale * rng.uniform();
    if (alpha >= 1e-14) out.push_back(alpha);
  }
  return out;
}

namespace {

std::vector<double> resolve_alphas(const AlphaSpec& spec, std::size_t count) {
  if (const auto* constant = std::get_if<double>(&spec)) {
    return std::vector<double>(count, *constant);
  }
  if (const auto* random = std::get_if<RandomAlpha>(&spec)) {
    return random_alphas(count, random->seed, random->scale);
  }
  const auto& list = std::get<std::vector<double>>(spec);
  if (list.size() != count) {
    std::ostringstream msg;
    msg << "expected " << count << " alpha values, got " << list.size();
    throw MeshError(msg.str());
  }
  return list;
}

CutCellMesh split_range(int n, int first, int last, const AlphaSpec& alphas, double x_left,
                        double x_right) {
  const auto count = static_cast<std::size_t>(std::max(0, last - first));
  const auto values = resolve_alphas(alphas, count);
  std::vector<CutCellMesh::Split> splits;
  for (std::size_t s = 0; s < count; ++s) {
    splits.push_back({first + static_cast<int>(s), values[s]});
  }
  return CutCellMesh(x_left, x_right, n, std::move(splits));
}

}  // namespace

CutCellMesh model_mesh(int n, int split_index, double alpha, double x_left, double x_right) {
  return CutCellMesh(x_left, x_right, n, {{split_index, alpha}});
}

CutCellMesh banded_mesh(int n, Band band, const AlphaSpec& alphas, double x_left,
                        double x_right) {
  if (n < 1) throw MeshError("banded_mesh: need at least one background cell");
  const double h = (x_right - x_left) / n;
  auto aligned_index = [&](double x) {
    const double pos = (x - x_left) / h;
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) > 1e-9 || rounded < 0 || rounded > n) {
      std::ostringstream msg;
      msg << "band edge " << x << " is not a background edge (h=" << h << ")";
      throw MeshError(msg.str());
    }
    return static_cast<int>(rounded);
  };
  const int first = aligned_index(band.lower);
  const int last = aligned_index(band.upper);
  if (last < first) throw MeshError("banded_mesh: band lower bound exceeds upper bound");
  return split_range(n, first, last, alphas, x_left, x_right);
}

CutCellMesh sod_mesh(int n, Band band, std::uint64_t seed) {
  constexpr double x_left = -1.0, x_right = 1.0;
  if (n < 1) throw MeshError("sod_mesh: need at least one background cell");
  const double h = (x_right - x_left) / n;
  int first = n, last = 0;
  for (int i = 0; i < n; ++i) {
    const double centroid = x_left + (i + 0.5) * h;
    if (centroid >= band.lower && centroid < band.upper) {
      first = std::min(first, i);
      last = std::max(last, i + 1);
    }
  }
  if (last <= first) return CutCellMesh(x_left, x_right, n, {});
  return split_range(n, first, last, RandomAlpha{seed, 1e-2}, x_left, x_right);
}

}  // namespace cutdg
