#include "dgft/graph.hpp"

#include <cmath>
#include <random>
#include <string>

#include "dgft/errors.hpp"

namespace dgft {

namespace {

constexpr double kWeightLow = 0.5;
constexpr double kWeightHigh = 1.5;

void require_at_least(Index value, Index minimum, const char* what) {
  if (value < minimum) {
    throw ValidationError(std::string(what) + " must be >= " + std::to_string(minimum) +
                          ", got " + std::to_string(value));
  }
}

}  // namespace

Digraph::Digraph(Matrix adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() != adjacency_.cols() || adjacency_.rows() < 1) {
    throw DimensionError("adjacency must be square with n >= 1, got " +
                         std::to_string(adjacency_.rows()) + "x" +
                         std::to_string(adjacency_.cols()));
  }
  for (Index j = 0; j < adjacency_.cols(); ++j) {
    for (Index i = 0; i < adjacency_.rows(); ++i) {
      const double w = adjacency_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        throw ValidationError("edge weight a(" + std::to_string(i) + "," +
                              std::to_string(j) + ") must be finite and >= 0");
      }
    }
  }
}

Index Digraph::edge_count() const { return (adjacency_.array() != 0.0).count(); }

double Digraph::normality_residual() const {
  const Matrix& a = adjacency_;
  return (a * a.transpose() - a.transpose() * a).cwiseAbs().maxCoeff();
}

GraphSignal::GraphSignal(Vector values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw ValidationError("graph signal has non-finite entries");
}

void require_same_size(const Digraph& g, const GraphSignal& x) {
  if (g.size() != x.size()) {
    throw DimensionError("signal length " + std::to_string(x.size()) +
                         " does not match graph size " + std::to_string(g.size()));
  }
}

void MBlockSpec::validate() const {
  if (blocks < 2) throw ValidationError("M-block spec needs at least 2 blocks");
  if (nodes_per_block < 1) throw ValidationError("M-block spec needs >= 1 node per block");
}

Digraph gen_directed_cycle(Index n) {
  require_at_least(n, 2, "cycle length");
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) a((i + 1) % n, i) = 1.0;
  return Digraph(std::move(a));
}

Digraph gen_directed_path(Index n) {
  require_at_least(n, 2, "path length");
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) a(i + 1, i) = 1.0;
  return Digraph(std::move(a));
}

Digraph gen_directed_torus(Index rows, Index cols) {
  require_at_least(rows, 2, "torus rows");
  require_at_least(cols, 2, "torus cols");
  const Index n = rows * cols;
  Matrix a = Matrix::Zero(n, n);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Index from = r * cols + c;
      a(r * cols + (c + 1) % cols, from) += 1.0;
      a(((r + 1) % rows) * cols + c, from) += 1.0;
    }
  }
  return Digraph(std::move(a));
}

Digraph gen_mblock_cyclic(const MBlockSpec& spec) {
  spec.validate();
  const Index n = spec.node_count();
  const Index per = spec.nodes_per_block;
  std::mt19937_64 rng(spec.weight_seed);
  std::uniform_real_distribution<double> weight(kWeightLow, kWeightHigh);

  Matrix a = Matrix::Zero(n, n);
  for (Index b = 0; b < spec.blocks; ++b) {
    const Index to = ((b + 1) % spec.blocks) * per;
    const Index from = b * per;
    for (Index j = 0; j < per; ++j) {
      for (Index i = 0; i < per; ++i) a(to + i, from + j) = weight(rng);
    }
  }
  if (spec.normalize) {
    for (Index i = 0; i < n; ++i) {
      const double s = a.row(i).sum();
      if (s > 0.0) a.row(i) /= s;
    }
  }
  return Digraph(std::move(a));
}

Digraph gen_random(Index n, double density, std::uint64_t seed) {
  require_at_least(n, 1, "node count");
  if (!(density >= 0.0 && density <= 1.0)) {
    throw ValidationError("edge density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> weight(kWeightLow, kWeightHigh);
  Matrix a = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (i == j) continue;
      // Draw both so the weight stream does not depend on the density.
      const double u = coin(rng);
      const double w = weight(rng);
      if (u < density) a(i, j) = w;
    }
  }
  return Digraph(std::move(a));
}

Distribution parse_distribution(std::string_view name) {
  if (name == "normal") return Distribution::StandardNormal;
  if (name == "uniform") return Distribution::Uniform;
  throw ValidationError("unknown distribution '" + std::string(name) + "'");
}

GraphSignal random_signal(Index n, std::uint64_t seed, Distribution dist) {
  require_at_least(n, 1, "signal length");
  std::mt19937_64 rng(seed);
  Vector x(n);
  if (dist == Distribution::StandardNormal) {
    std::normal_distribution<double> draw(0.0, 1.0);
    for (Index i = 0; i < n; ++i) x(i) = draw(rng);
  } else {
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    for (Index i = 0; i < n; ++i) x(i) = draw(rng);
  }
  return GraphSignal(std::move(x));
}

}  // namespace dgft
