#pragma once

#include <stdexcept>
#include <string>

namespace cutdg {

/// State outside the physically admissible set (e.g. negative density).
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flux Jacobian without a real, complete eigensystem.
class HyperbolicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside its admissible range.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation requested for an equation/flux it does not support.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Iteration failure, NaN/Inf, or a degenerate quantity (zero wave speed).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutdg
