#include "doctest.h"
#include "dgft/errors.hpp"
#include "dgft/symmetrize.hpp"
#include "test_support.hpp"

using namespace dgft;
using namespace dgft::testing;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Nodes 0 and 1 both feed node 2.
Digraph shared_target() {
  Matrix a = Matrix::Zero(3, 3);
  a(2, 0) = 1.0;
  a(2, 1) = 1.0;
  return Digraph(a);
}

}  // namespace

TEST_CASE("bibliographic coupling by hand") {
  CHECK(bibliographic_coupling(gen_directed_path(2)).matrix == diag2(0, 1));
  const Matrix b = bibliographic_coupling(shared_target()).matrix;
  CHECK(b(2, 2) == 2.0);
  CHECK(b(0, 1) == 0.0);
  CHECK(b(0, 0) == 0.0);
  CHECK(bibliographic_coupling(gen_directed_cycle(5)).matrix == Matrix::Identity(5, 5));
}

TEST_CASE("co-citation by hand") {
  CHECK(co_citation(gen_directed_path(2)).matrix == diag2(1, 0));
  const Matrix c = co_citation(shared_target()).matrix;
  CHECK(c(0, 1) == 1.0);  // shared out-link to node 2
  CHECK(c(1, 0) == 1.0);
  CHECK(c(2, 2) == 0.0);
  CHECK(co_citation(gen_directed_cycle(5)).matrix == Matrix::Identity(5, 5));
}

TEST_CASE("bibliometric sum") {
  CHECK(bibliometric(gen_directed_path(2)).matrix == Matrix::Identity(2, 2));
  CHECK(bibliometric(Digraph(Matrix::Zero(3, 3))).matrix == Matrix::Zero(3, 3));
  Matrix s = random_matrix(5, 5, 4, 0.0, 1.0);
  s = (s + s.transpose()).eval();
  CHECK(max_abs(Matrix(bibliometric(Digraph(s)).matrix - 2.0 * s * s)) <= 1e-13);
}

TEST_CASE("symmetrizations match the edge sums entry by entry") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 7);
    const Digraph g = gen_random(n, 0.5, seed);
    const Matrix b = bibliographic_coupling(g).matrix;
    const Matrix c = co_citation(g).matrix;
    CHECK(max_abs(Matrix(b - brute_coupling(g.adjacency()))) <= 1e-14);
    CHECK(max_abs(Matrix(c - brute_cocitation(g.adjacency()))) <= 1e-14);
    CHECK(b == b.transpose());
    CHECK(c == c.transpose());
    const double bn = b.norm(), cn = c.norm();
    CHECK(sym_eig(b).values.minCoeff() >= -1e-10 * bn);
    CHECK(sym_eig(c).values.minCoeff() >= -1e-10 * cn);
  }
}

TEST_CASE("quadratic variation") {
  const Symmetrization b = bibliographic_coupling(gen_directed_path(2));
  CHECK(quadratic_variation(b, GraphSignal(Vector::Zero(2))) == 0.0);
  Vector alt(2);
  alt << 1.0, -1.0;
  CHECK(quadratic_variation(b, GraphSignal(alt)) == 1.0);
  CHECK_THROWS_AS(quadratic_variation(b, GraphSignal(Vector::Zero(3))), DimensionError);

  // Rayleigh quotient of the Perron vector is the top eigenvalue.
  const Symmetrization s = bibliographic_coupling(gen_random(12, 0.4, 9));
  const Vector v = perron_vector(s);
  CHECK(quadratic_variation(s, GraphSignal(v)) ==
        doctest::Approx(sym_eig(s.matrix).values(0)).epsilon(1e-12));
}

TEST_CASE("pairwise form agrees on zero-diagonal inputs") {
  Matrix m = random_symmetric(6, 31).cwiseAbs();
  m.diagonal().setZero();
  const Symmetrization s{SymmetrizationKind::CommonInLink, m, 6};
  const Vector x = random_vector(6, 2);
  double pairwise = 0.0;
  for (Index i = 0; i < 6; ++i)
    for (Index j = i + 1; j < 6; ++j) pairwise += m(i, j) * x(i) * x(j);
  CHECK(quadratic_variation(s, GraphSignal(x)) == doctest::Approx(2.0 * pairwise).epsilon(1e-13));
}

TEST_CASE("rayleigh ordering over the eigenvectors") {
  const Symmetrization s = bibliographic_coupling(gen_random(15, 0.3, 12));
  const SymEigFactors eig = sym_eig(s.matrix);
  double previous = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < 15; ++k) {
    const double q = quadratic_variation(s, GraphSignal(eig.vectors.col(k)));
    CHECK(q <= previous + 1e-12);
    previous = q;
  }
}

TEST_CASE("perron vector of a connected coupling is nonnegative") {
  int tested = 0;
  for (std::uint64_t seed = 0; tested < 10; ++seed) {
    const Symmetrization s = bibliographic_coupling(gen_random(20, 0.25, seed));
    if (connected_components(s).size() != 1) continue;
    ++tested;
    CHECK(perron_vector(s).minCoeff() >= -1e-10);
  }
}

TEST_CASE("disconnected coupling has one perron vector per component") {
  // Two disjoint 2-cycles with equal weights: B_in = I, four components.
  Matrix a = Matrix::Zero(4, 4);
  a(1, 0) = a(0, 1) = 1.0;
  a(3, 2) = a(2, 3) = 1.0;
  CHECK(connected_components(bibliographic_coupling(Digraph(a))).size() == 4);

  // Node 0 and 1 share in-links; 2 and 3 share in-links; nothing in common.
  Matrix g = Matrix::Zero(6, 6);
  g(0, 4) = g(1, 4) = 1.0;
  g(2, 5) = g(3, 5) = 1.0;
  const Symmetrization s = bibliographic_coupling(Digraph(g));
  const auto comps = connected_components(s);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0] == std::vector<Index>{0, 1});
  CHECK(comps[1] == std::vector<Index>{2, 3});
  const SymEigFactors eig = sym_eig(s.matrix);
  CHECK(eig.values(0) == doctest::Approx(eig.values(1)));  // repeated top eigenvalue
  for (const auto& comp : comps) {
    const Index m = static_cast<Index>(comp.size());
    Matrix sub(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) sub(i, j) = s.matrix(comp[i], comp[j]);
    CHECK(sym_eig(sub).vectors.col(0).minCoeff() >= -1e-10);
  }
}
