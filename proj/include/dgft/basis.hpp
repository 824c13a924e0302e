#pragma once

#include <string_view>

#include "dgft/types.hpp"

namespace dgft {

enum class BasisKind { CommonInLink, CommonOutLink, InFlow, Schur, Adjacency };

std::string_view to_string(BasisKind kind);

/// Ordered graph Fourier basis. Column k of `vectors` is the k-th basis
/// vector; columns run from lowest to highest variation so `frequencies` is
/// nondecreasing. `eigenvalues` holds the operator eigenvalue of each column.
struct GftBasis {
  BasisKind kind = BasisKind::Schur;
  CMatrix vectors;
  Vector frequencies;
  CVector eigenvalues;

  Index size() const { return vectors.cols(); }
  bool is_real() const { return kind == BasisKind::CommonInLink || kind == BasisKind::CommonOutLink; }

  // Spectrum of a real signal: V^H x.
  CVector analyze(const Vector& x) const { return vectors.adjoint() * x.cast<Complex>(); }
};

}  // namespace dgft
