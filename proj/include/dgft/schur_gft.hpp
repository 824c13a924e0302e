#pragma once

// Graph Schur Transform: the unitary factor of a frequency-ordered complex
// Schur decomposition A = U T U^H used as a Fourier basis. It exists for
// every adjacency matrix, including defective ones where no eigenbasis does.

#include "dgft/basis.hpp"
#include "dgft/graph.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

struct GstTransform {
  ComplexSchurFactors factors;
  GftBasis basis;          // kind Schur, columns = factors.unitary
  Digraph source;
  Vector tv_scores;        // ||u - A u / rho||_1 per column
  double spectral_radius = 0.0;
  bool unnormalized_tv = false;  // set when rho == 0 and TV uses A itself
  EigenOrder order = EigenOrder::ByFrequency;
};

GstTransform gst_build(const Digraph& g, EigenOrder order = EigenOrder::ByFrequency,
                       const NumericPolicy& policy = {});

// x_hat = U^H x
CVector gst_forward(const GstTransform& t, const GraphSignal& x);

struct InverseResult {
  GraphSignal signal;
  double imag_residual;  // ||Im(U x_hat)||_inf
};

InverseResult gst_inverse(const GstTransform& t, const CVector& spectrum);

// U^H A U evaluated explicitly, so the strictly lower part measures how well
// the stored basis triangularizes the graph shift.
CMatrix shift_in_gst_domain(const GstTransform& t);

}  // namespace dgft
