#pragma once

// Left/right polar decompositions A = P Q = Q F built from one SVD, and the
// three graph Fourier bases they induce:
//
//   common in-link  : eigenvectors of P, smooth = large v^T P v
//   common out-link : eigenvectors of F, smooth = large v^T F v
//   in-flow         : eigenvectors of Q, smooth = small ||v - Q v||_1

#include <utility>
#include <vector>

#include "dgft/basis.hpp"
#include "dgft/graph.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

struct PolarFactors {
  Matrix p;  // U S U^T
  Matrix q;  // U V^T
  Matrix f;  // V S V^T
  SvdFactors svd;
};

PolarFactors polar_decompose(const Digraph& g, const NumericPolicy& policy = {});

GftBasis common_inlink_basis(const PolarFactors& pf);
GftBasis common_outlink_basis(const PolarFactors& pf);
GftBasis inflow_basis(const PolarFactors& pf, const NumericPolicy& policy = {});

struct CorrespondenceReport {
  bool normal = false;
  double normality_residual = 0.0;  // ||A A^T - A^T A||_max
  CVector adjacency_eigenvalues;
  // Worst |(|lambda_a|) - lambda_p| over the sorted multisets.
  double modulus_residual = 0.0;
  // Worst |e^{i theta_a} - lambda_q| over the matched nonzero lambda_a.
  double phase_residual = 0.0;
  bool modulus_matches = false;
  bool phase_matches = false;
  // (adjacency eigenvalue index, P / Q eigen index) pairs.
  std::vector<std::pair<Index, Index>> modulus_pairing;
  std::vector<std::pair<Index, Index>> phase_pairing;
};

// For normal A, |lambda_a| pairs with an eigenvalue of P and the phase of
// every nonzero lambda_a with an eigenvalue of Q. For non-normal A the
// residuals are reported as diagnostics only.
CorrespondenceReport eigenvalue_correspondence(const Digraph& g, const PolarFactors& pf,
                                               const NumericPolicy& policy = {});

}  // namespace dgft
