#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace dgft {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Tolerance scaling and size limits shared by every validating operation.
///
/// Each check in the library has a base tolerance; the effective tolerance is
/// `base * scale`. The strict profile halves all of them.
struct NumericPolicy {
  double scale = 1.0;
  std::size_t max_dimension = 2000;

  double tol(double base) const { return base * scale; }

  static NumericPolicy standard() { return {}; }
  static NumericPolicy strict() { return {0.5, 2000}; }
};

}  // namespace dgft
