#pragma once

#include <stdexcept>
#include <string>

namespace dgft {

// Shape mismatch between operands (non-square input, signal/graph size mismatch).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a documented precondition (negative weight, asymmetric matrix, bad spec).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A decomposition or post-condition check failed numerically.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Reading or writing a file failed, or the file is malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dgft
