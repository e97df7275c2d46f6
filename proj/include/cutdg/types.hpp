#pragma once

#include <Eigen/Dense>

namespace cutdg {

/// Largest system handled (Euler has three conserved components).
inline constexpr int kMaxComponents = 3;

/// Largest supported polynomial degree.
inline constexpr int kMaxDegree = 8;

// Dynamic size with a fixed upper bound: no heap traffic in the inner loops.
using Vector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxComponents, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                             kMaxComponents, kMaxComponents>;

/// Right eigenvectors (columns of q), eigenvalues, and the inverse of q.
struct Eigensystem {
  Matrix q;
  Vector lambda;
  Matrix q_inv;
};

}  // namespace cutdg
