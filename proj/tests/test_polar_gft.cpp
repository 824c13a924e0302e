#include "doctest.h"
#include "dgft/errors.hpp"
#include "dgft/polar_gft.hpp"
#include "dgft/symmetrize.hpp"
#include "test_support.hpp"

using namespace dgft;
using namespace dgft::testing;

namespace {

void check_frequencies_nondecreasing(const GftBasis& b) {
  for (Index k = 1; k < b.size(); ++k) CHECK(b.frequencies(k) >= b.frequencies(k - 1) - 1e-10);
}

Digraph psd_nonnegative(Index n, std::uint64_t seed) {
  const Matrix b = random_matrix(n, n, seed, 0.0, 1.0);
  const Matrix a = b * b.transpose();
  return Digraph(Matrix(0.5 * (a + a.transpose())));
}

}  // namespace

TEST_CASE("polar factors of the directed cycle") {
  const Digraph g = gen_directed_cycle(6);
  const PolarFactors pf = polar_decompose(g);
  CHECK(max_abs(Matrix(pf.p - Matrix::Identity(6, 6))) <= 1e-14);
  CHECK(max_abs(Matrix(pf.f - Matrix::Identity(6, 6))) <= 1e-14);
  CHECK(max_abs(Matrix(pf.q - g.adjacency())) <= 1e-14);
}

TEST_CASE("polar factors of a symmetric PSD adjacency") {
  const Digraph g = psd_nonnegative(5, 3);
  const PolarFactors pf = polar_decompose(g);
  CHECK(max_abs(Matrix(pf.q - Matrix::Identity(5, 5))) <= 1e-10);
  CHECK(max_abs(Matrix(pf.p - g.adjacency())) <= 1e-10);
  CHECK(max_abs(Matrix(pf.f - g.adjacency())) <= 1e-10);
}

TEST_CASE("P is the square root of A A^T") {
  const Digraph g(random_matrix(5, 5, 2024, 0.0, 1.0));
  const PolarFactors pf = polar_decompose(g);
  const Matrix& a = g.adjacency();
  CHECK(max_abs(Matrix(pf.p - psd_sqrt(a * a.transpose()))) <= 1e-9);
  CHECK(max_abs(Matrix(pf.f - psd_sqrt(a.transpose() * a))) <= 1e-9);
}

TEST_CASE("polar invariants on random digraphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Digraph g = gen_random(12 + static_cast<Index>(seed), 0.3, seed);
    const PolarFactors pf = polar_decompose(g);
    const Matrix& a = g.adjacency();
    const double scale = std::max(1.0, a.norm());
    CHECK((pf.p * pf.q - a).norm() <= 1e-9 * scale);
    CHECK((pf.q * pf.f - a).norm() <= 1e-9 * scale);
    CHECK(orthogonality_error(pf.q) <= 1e-10);
    const auto& s = pf.svd;
    CHECK(max_abs(Matrix(pf.p - s.left_vectors * s.singular_values.asDiagonal() *
                                    s.left_vectors.transpose())) <= 1e-12);
    CHECK(max_abs(Matrix(pf.f - s.right_vectors * s.singular_values.asDiagonal() *
                                    s.right_vectors.transpose())) <= 1e-12);
  }
}

TEST_CASE("rank-deficient adjacency still has an orthogonal Q") {
  const Digraph g = gen_directed_path(6);
  const PolarFactors pf = polar_decompose(g);
  CHECK(orthogonality_error(pf.q) <= 1e-12);
  CHECK((pf.p * pf.q - g.adjacency()).norm() <= 1e-12);
  CHECK(pf.svd.singular_values(5) == 0.0);
}

TEST_CASE("P and F share the singular values as spectrum") {
  const Digraph g = gen_random(20, 0.3, 77);
  const PolarFactors pf = polar_decompose(g);
  const Vector lp = sym_eig(pf.p).values;
  const Vector lf = sym_eig(pf.f).values;
  CHECK(max_abs(Matrix(lp - lf)) <= 1e-10);
  CHECK(max_abs(Matrix(lp - pf.svd.singular_values)) <= 1e-10);
}

TEST_CASE("square-root coherence with the coupling matrix") {
  const Digraph g = gen_random(25, 0.3, 8);
  const PolarFactors pf = polar_decompose(g);
  const SymEigFactors bp = sym_eig(pf.p);
  const SymEigFactors bb = sym_eig(bibliographic_coupling(g).matrix);
  CHECK(max_abs(Matrix(bp.values.cwiseAbs2() - bb.values)) <= 1e-8);
}

TEST_CASE("Q is the closest orthogonal matrix") {
  const Digraph g = gen_random(8, 0.4, 5);
  const PolarFactors pf = polar_decompose(g);
  const Matrix& a = g.adjacency();
  const double dq = (a - pf.q).norm();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(dq <= (a - random_orthogonal(8, seed)).norm() + 1e-12);
  }
}

TEST_CASE("Q preserves the signal norm") {
  const PolarFactors pf = polar_decompose(gen_random(30, 0.2, 6));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Vector x = random_vector(30, seed);
    CHECK(std::abs((pf.q * x).norm() - x.norm()) <= 1e-12 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("common in-link and out-link bases") {
  SUBCASE("cycle: total degeneracy") {
    const PolarFactors pf = polar_decompose(gen_directed_cycle(5));
    const GftBasis b = common_inlink_basis(pf);
    CHECK(b.frequencies.cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(unitarity_error(b.vectors) <= 1e-10);
  }
  SUBCASE("random: Rayleigh identity and ordering") {
    const PolarFactors pf = polar_decompose(gen_random(15, 0.3, 3));
    for (const GftBasis& b : {common_inlink_basis(pf), common_outlink_basis(pf)}) {
      const Matrix& op = b.kind == BasisKind::CommonInLink ? pf.p : pf.f;
      CHECK(b.is_real());
      CHECK(orthogonality_error(Matrix(b.vectors.real())) <= 1e-10);
      CHECK(b.vectors.imag().cwiseAbs().maxCoeff() == 0.0);
      for (Index k = 0; k < b.size(); ++k) {
        const Vector c = b.vectors.col(k).real();
        CHECK(std::abs(c.dot(op * c) - b.eigenvalues(k).real()) <= 1e-10);
        CHECK(b.eigenvalues(k).real() >= 0.0);
      }
      check_frequencies_nondecreasing(b);
    }
  }
  SUBCASE("m-block cyclic: vectors live inside one block") {
    const MBlockSpec spec{4, 6, 11, true};
    const PolarFactors pf = polar_decompose(gen_mblock_cyclic(spec));
    for (const GftBasis& b : {common_inlink_basis(pf), common_outlink_basis(pf)}) {
      for (Index k = 0; k < b.size(); ++k) {
        Vector mass = Vector::Zero(spec.blocks);
        for (Index i = 0; i < b.size(); ++i) mass(spec.block_of(i)) += std::norm(b.vectors(i, k));
        CHECK(mass.maxCoeff() >= 1.0 - 1e-8);
      }
    }
  }
}

TEST_CASE("in-flow basis of the directed cycle is the DFT") {
  const Index n = 8;
  const PolarFactors pf = polar_decompose(gen_directed_cycle(n));
  const GftBasis b = inflow_basis(pf);
  CHECK(b.kind == BasisKind::InFlow);
  CHECK(unitarity_error(b.vectors) <= 1e-10);
  std::vector<Complex> roots;
  for (Index k = 0; k < n; ++k) roots.push_back(std::polar(1.0, 2 * std::numbers::pi * k / n));
  CHECK(multiset_distance(roots, b.eigenvalues) <= 1e-12);
  CHECK(std::abs(b.eigenvalues(0) - Complex(1.0)) <= 1e-12);
  CHECK(b.frequencies(0) <= 1e-12);
  for (Index i = 0; i < n; ++i) CHECK(std::abs(b.vectors(i, 0) - 1.0 / std::sqrt(double(n))) <= 1e-12);
  check_frequencies_nondecreasing(b);
}

TEST_CASE("in-flow basis when Q is the identity") {
  const PolarFactors pf = polar_decompose(psd_nonnegative(6, 1));
  const GftBasis b = inflow_basis(pf);
  CHECK(b.frequencies.maxCoeff() <= 1e-9);
}

TEST_CASE("in-flow frequencies follow the eigenvalue identity") {
  const PolarFactors pf = polar_decompose(gen_random(40, 0.15, 19));
  const GftBasis b = inflow_basis(pf);
  CHECK(unitarity_error(b.vectors) <= 1e-10);
  for (Index k = 0; k < b.size(); ++k) {
    CHECK(std::abs(std::abs(b.eigenvalues(k)) - 1.0) <= 1e-10);
    const double expected = std::abs(1.0 - b.eigenvalues(k)) * b.vectors.col(k).cwiseAbs().sum();
    CHECK(std::abs(b.frequencies(k) - expected) <= 1e-10);
  }
  check_frequencies_nondecreasing(b);
}

TEST_CASE("eigenvalue correspondence") {
  SUBCASE("normal torus") {
    const Digraph g = gen_directed_torus(10, 10);
    const CorrespondenceReport r = eigenvalue_correspondence(g, polar_decompose(g));
    CHECK(r.normal);
    CHECK(r.modulus_matches);
    CHECK(r.phase_matches);
    CHECK(r.modulus_pairing.size() == 100);
    CHECK(r.phase_pairing.size() == 90);  // ten eigenvalues are exactly zero
  }
  SUBCASE("directed path is not normal") {
    const Digraph g = gen_directed_path(5);
    const CorrespondenceReport r = eigenvalue_correspondence(g, polar_decompose(g));
    CHECK_FALSE(r.normal);
    CHECK_FALSE(r.modulus_matches);
    CHECK(r.modulus_residual == doctest::Approx(1.0));  // |lambda_a| = 0, sigma_1 = 1
  }
  SUBCASE("3-cycle") {
    const Digraph g = gen_directed_cycle(3);
    const PolarFactors pf = polar_decompose(g);
    const CorrespondenceReport r = eigenvalue_correspondence(g, pf);
    CHECK(r.normal);
    CHECK(r.adjacency_eigenvalues.cwiseAbs().minCoeff() == doctest::Approx(1.0));
    CHECK(max_abs(Matrix(pf.svd.singular_values - Vector::Ones(3))) <= 1e-14);
    CHECK(r.phase_matches);
  }
}
