#include "dgft/symmetrize.hpp"

#include <map>
#include <numeric>

#include "dgft/errors.hpp"

namespace dgft {

namespace {

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

std::string_view to_string(SymmetrizationKind kind) {
  switch (kind) {
    case SymmetrizationKind::CommonInLink: return "B_in";
    case SymmetrizationKind::CommonOutLink: return "C_out";
    case SymmetrizationKind::Bibliometric: return "bibliometric";
  }
  return "unknown";
}

Symmetrization bibliographic_coupling(const Digraph& g) {
  const Matrix& a = g.adjacency();
  return {SymmetrizationKind::CommonInLink, symmetric_part(a * a.transpose()), g.size()};
}

Symmetrization co_citation(const Digraph& g) {
  const Matrix& a = g.adjacency();
  return {SymmetrizationKind::CommonOutLink, symmetric_part(a.transpose() * a), g.size()};
}

Symmetrization bibliometric(const Digraph& g) {
  return {SymmetrizationKind::Bibliometric,
          bibliographic_coupling(g).matrix + co_citation(g).matrix, g.size()};
}

double quadratic_variation(const Symmetrization& s, const GraphSignal& x) {
  if (s.matrix.rows() != x.size()) {
    throw DimensionError("quadratic_variation: signal length " + std::to_string(x.size()) +
                         " does not match matrix size " + std::to_string(s.matrix.rows()));
  }
  return x.values().dot(s.matrix * x.values());
}

std::vector<std::vector<Index>> connected_components(const Symmetrization& s,
                                                     double threshold) {
  const Index n = s.matrix.rows();
  DisjointSets sets(n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (std::abs(s.matrix(i, j)) > threshold) sets.unite(i, j);
    }
  }
  std::map<Index, std::vector<Index>> groups;
  for (Index v = 0; v < n; ++v) groups[sets.find(v)].push_back(v);
  std::vector<std::vector<Index>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

Vector perron_vector(const Symmetrization& s, const NumericPolicy& policy) {
  const SymEigFactors eig = sym_eig(s.matrix, policy);
  Vector v = eig.vectors.col(0);
  if (v.sum() < 0.0) v = -v;
  return v;
}

}  // namespace dgft
