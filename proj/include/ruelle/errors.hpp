#pragma once

#include <stdexcept>
#include <string>

namespace ruelle {

// Bad input: parameters, configs, surfaces or groups that violate an invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation failed on valid input (no convergence, near a pole, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ruelle
