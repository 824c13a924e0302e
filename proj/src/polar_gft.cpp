#include "dgft/polar_gft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dgft/errors.hpp"

namespace dgft {

namespace {

GftBasis psd_basis(BasisKind kind, const Matrix& vectors, const Vector& sigma) {
  GftBasis b;
  b.kind = kind;
  b.vectors = vectors.cast<Complex>();
  b.eigenvalues = sigma.cast<Complex>();
  const double top = sigma.size() ? sigma(0) : 0.0;
  b.frequencies = (Vector::Constant(sigma.size(), top) - sigma).cwiseMax(0.0);
  return b;
}

}  // namespace

PolarFactors polar_decompose(const Digraph& g, const NumericPolicy& policy) {
  const Matrix& a = g.adjacency();
  PolarFactors pf;
  pf.svd = svd(a, policy);
  const Matrix& u = pf.svd.left_vectors;
  const Matrix& v = pf.svd.right_vectors;
  const auto s = pf.svd.singular_values.asDiagonal();

  const Matrix p = u * s * u.transpose();
  const Matrix f = v * s * v.transpose();
  pf.p = 0.5 * (p + p.transpose());
  pf.f = 0.5 * (f + f.transpose());
  pf.q = u * v.transpose();

  const double scale = std::max(1.0, a.norm());
  const double left = (pf.p * pf.q - a).norm() / scale;
  const double right = (pf.q * pf.f - a).norm() / scale;
  if (std::max(left, right) > policy.tol(1e-9)) {
    throw NumericalError("polar_decompose: A = PQ = QF check failed", std::max(left, right));
  }
  const double orth = orthogonality_error(pf.q);
  if (orth > policy.tol(1e-10)) {
    throw NumericalError("polar_decompose: Q is not orthogonal", orth);
  }
  return pf;
}

// Columns of U are the eigenvectors of P = U S U^T, already in descending
// eigenvalue order with the sign convention applied.
GftBasis common_inlink_basis(const PolarFactors& pf) {
  return psd_basis(BasisKind::CommonInLink, pf.svd.left_vectors, pf.svd.singular_values);
}

GftBasis common_outlink_basis(const PolarFactors& pf) {
  return psd_basis(BasisKind::CommonOutLink, pf.svd.right_vectors, pf.svd.singular_values);
}

GftBasis inflow_basis(const PolarFactors& pf, const NumericPolicy& policy) {
  const ComplexSchurFactors schur = schur_complex(pf.q, EigenOrder::None, policy);
  const double off = off_diagonal_norm(schur.triangular);
  const double qnorm = pf.q.norm();
  if (off > policy.tol(1e-8) * qnorm) {
    throw NumericalError("inflow_basis: Schur form of Q is not diagonal", off / qnorm);
  }

  const Index n = schur.unitary.cols();
  const CMatrix qv = pf.q.cast<Complex>() * schur.unitary;
  Vector freq(n);
  for (Index k = 0; k < n; ++k) freq(k) = (schur.unitary.col(k) - qv.col(k)).cwiseAbs().sum();

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const CVector& lam = schur.eigenvalues;
  auto before = [&](Index a, Index b) {
    const double tie = 1e-10 * std::max(1.0, std::max(freq(a), freq(b)));
    if (freq(a) < freq(b) - tie) return true;
    if (freq(b) < freq(a) - tie) return false;
    if (lam(a).imag() > lam(b).imag() + 1e-10) return true;
    if (lam(a).imag() < lam(b).imag() - 1e-10) return false;
    return lam(a).real() > lam(b).real() + 1e-10;
  };
  // Insertion sort: the tolerance-aware comparison is not a strict weak order.
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t j = i; j > 0 && before(order[j], order[j - 1]); --j) {
      std::swap(order[j], order[j - 1]);
    }
  }

  GftBasis b;
  b.kind = BasisKind::InFlow;
  b.vectors.resize(n, n);
  b.eigenvalues.resize(n);
  b.frequencies.resize(n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[k];
    b.vectors.col(k) = schur.unitary.col(src);
    b.eigenvalues(k) = lam(src);
    b.frequencies(k) = freq(src);
  }
  return b;
}

CorrespondenceReport eigenvalue_correspondence(const Digraph& g, const PolarFactors& pf,
                                               const NumericPolicy& policy) {
  CorrespondenceReport r;
  const Matrix& a = g.adjacency();
  const double anorm = a.norm();
  r.normality_residual = g.normality_residual();
  r.normal = r.normality_residual <= policy.tol(1e-10) * anorm * anorm;

  r.adjacency_eigenvalues = schur_complex(a, EigenOrder::None, policy).eigenvalues;
  const CVector& lam = r.adjacency_eigenvalues;
  const Index n = lam.size();
  const Vector& sigma = pf.svd.singular_values;

  std::vector<Index> by_modulus(static_cast<std::size_t>(n));
  std::iota(by_modulus.begin(), by_modulus.end(), Index{0});
  std::stable_sort(by_modulus.begin(), by_modulus.end(),
                   [&](Index x, Index y) { return std::abs(lam(x)) > std::abs(lam(y)); });
  for (Index k = 0; k < n; ++k) {
    const Index ai = by_modulus[k];
    r.modulus_residual = std::max(r.modulus_residual, std::abs(std::abs(lam(ai)) - sigma(k)));
    r.modulus_pairing.emplace_back(ai, k);
  }

  const CVector lam_q = schur_complex(pf.q, EigenOrder::None, policy).eigenvalues;
  const double rho = lam.cwiseAbs().maxCoeff();
  const double zero_bar = 1e-8 * std::max(1.0, rho);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(lam(i));
    if (mag <= zero_bar) continue;
    const Complex phase = lam(i) / mag;
    Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(lam_q(j) - phase);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0) break;
    used[best] = true;
    r.phase_pairing.emplace_back(i, best);
    r.phase_residual = std::max(r.phase_residual, best_dist);
  }

  r.modulus_matches = r.normal && r.modulus_residual <= policy.tol(1e-8);
  r.phase_matches = r.normal && r.phase_residual <= policy.tol(1e-8);
  return r;
}

}  // namespace dgft
