#include "dgft/schur_gft.hpp"

#include <string>

#include "dgft/errors.hpp"

namespace dgft {

GstTransform gst_build(const Digraph& g, EigenOrder order, const NumericPolicy& policy) {
  GstTransform t{schur_complex(g.adjacency(), order, policy), {}, g, {}, 0.0, false, order};
  const CVector& lam = t.factors.eigenvalues;
  const Index n = lam.size();
  t.spectral_radius = lam.cwiseAbs().maxCoeff();

  t.basis.kind = BasisKind::Schur;
  t.basis.vectors = t.factors.unitary;
  t.basis.eigenvalues = lam;
  t.basis.frequencies.resize(n);
  for (Index k = 0; k < n; ++k) t.basis.frequencies(k) = std::abs(t.spectral_radius - lam(k));

  const CMatrix au = g.adjacency().cast<Complex>() * t.factors.unitary;
  t.unnormalized_tv = t.spectral_radius == 0.0;
  const double inv = t.unnormalized_tv ? 1.0 : 1.0 / t.spectral_radius;
  t.tv_scores.resize(n);
  for (Index k = 0; k < n; ++k) {
    t.tv_scores(k) = (t.factors.unitary.col(k) - inv * au.col(k)).cwiseAbs().sum();
  }
  return t;
}

CVector gst_forward(const GstTransform& t, const GraphSignal& x) {
  require_same_size(t.source, x);
  return t.basis.analyze(x.values());
}

InverseResult gst_inverse(const GstTransform& t, const CVector& spectrum) {
  if (spectrum.size() != t.basis.size()) {
    throw DimensionError("gst_inverse: spectrum length " + std::to_string(spectrum.size()) +
                         " does not match basis size " + std::to_string(t.basis.size()));
  }
  const CVector x = t.factors.unitary * spectrum;
  const double imag = x.size() ? x.imag().cwiseAbs().maxCoeff() : 0.0;
  return {GraphSignal(x.real()), imag};
}

CMatrix shift_in_gst_domain(const GstTransform& t) {
  const CMatrix& u = t.factors.unitary;
  return u.adjoint() * t.source.adjacency().cast<Complex>() * u;
}

}  // namespace dgft
