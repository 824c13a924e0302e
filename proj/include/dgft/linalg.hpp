#pragma once

// Dense decompositions consumed by the graph Fourier bases: SVD, symmetric
// eigendecomposition, complex Schur with eigenvalue reordering, and the PSD
// square root.
//
// All factor records use a fixed sign/phase convention: every singular,
// eigen or Schur vector is scaled so that its largest-magnitude entry is real
// and positive (near-ties resolve to the lowest index). Identical inputs
// therefore produce identical factor bytes.

#include <string_view>
#include <vector>

#include "dgft/types.hpp"

namespace dgft {

struct SvdFactors {
  Matrix left_vectors;    // U
  Vector singular_values; // nonincreasing, >= 0
  Matrix right_vectors;   // V

  Matrix reconstruct() const;
};

struct SymEigFactors {
  Matrix vectors;
  Vector values;  // nonincreasing
};

struct ComplexSchurFactors {
  CMatrix unitary;     // U
  CMatrix triangular;  // T, upper triangular
  CVector eigenvalues; // diag(T)

  CMatrix reconstruct() const;
};

enum class EigenOrder {
  ByFrequency,       // ascending | rho - lambda |, rho = spectral radius
  ByModulusDesc,     // descending |lambda|
  None,              // whatever the QR iteration produced
};

std::string_view to_string(EigenOrder order);
EigenOrder parse_eigen_order(std::string_view name);

SvdFactors svd(const Matrix& a, const NumericPolicy& policy = {});

SymEigFactors sym_eig(const Matrix& s, const NumericPolicy& policy = {});

// Computes A = U T U^H. Nodes are first permuted into strongly-connected-
// component order so that DAG parts of the pattern are triangular exactly;
// each diagonal block is then reduced by the complex QR algorithm and the
// diagonal is reordered with adjacent unitary swaps.
ComplexSchurFactors schur_complex(const Matrix& a, EigenOrder order,
                                  const NumericPolicy& policy = {});

// Reorders an existing Schur form in place by adjacent Givens swaps. The key
// function must induce the desired ascending order.
void reorder_schur(ComplexSchurFactors& f, EigenOrder order);

Matrix psd_sqrt(const Matrix& s, const NumericPolicy& policy = {});

// Scales v in place so its largest-magnitude entry is real and positive.
void fix_sign(Eigen::Ref<Vector> v);
// Returns the unit phase d such that d * v has a real positive pivot entry.
Complex pivot_phase(const Eigen::Ref<const CVector>& v);

// Helpers shared by tests and validation.
double max_abs(const Matrix& m);
double max_abs(const CMatrix& m);
double orthogonality_error(const Matrix& q);   // ||Q^T Q - I||_max
double unitarity_error(const CMatrix& u);      // ||U^H U - I||_max
double strictly_lower_max(const CMatrix& t);   // max |t_ij|, i > j
double off_diagonal_norm(const CMatrix& t);    // ||T - diag(T)||_F
bool is_finite(const Matrix& m);

// Spectral radius from the Schur eigenvalues.
double spectral_radius(const Matrix& a, const NumericPolicy& policy = {});

}  // namespace dgft
