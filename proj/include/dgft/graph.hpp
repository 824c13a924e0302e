#pragma once

#include <cstdint>
#include <string_view>

#include "dgft/types.hpp"

namespace dgft {

/// Weighted directed graph on n nodes stored as a dense adjacency matrix.
///
/// Entry (i, j) is the weight of the edge from node j to node i, so column j
/// lists the out-links of j and row i lists the in-links of i. Weights are
/// finite and nonnegative; zero means no edge.
class Digraph {
 public:
  explicit Digraph(Matrix adjacency);

  Index size() const { return adjacency_.rows(); }
  const Matrix& adjacency() const { return adjacency_; }
  double weight(Index to, Index from) const { return adjacency_(to, from); }

  Index edge_count() const;
  // ||A A^T - A^T A||_max
  double normality_residual() const;

 private:
  Matrix adjacency_;
};

/// Real signal with one value per node.
class GraphSignal {
 public:
  explicit GraphSignal(Vector values);

  Index size() const { return values_.size(); }
  const Vector& values() const { return values_; }

 private:
  Vector values_;
};

void require_same_size(const Digraph& g, const GraphSignal& x);

/// Balanced M-block cyclic graph: `blocks` groups of `nodes_per_block` nodes,
/// every node of block b feeding every node of block b+1 (mod M).
struct MBlockSpec {
  int blocks = 4;
  int nodes_per_block = 25;
  std::uint64_t weight_seed = 1;
  bool normalize = true;

  Index node_count() const { return static_cast<Index>(blocks) * nodes_per_block; }
  Index block_of(Index node) const { return node / nodes_per_block; }
  void validate() const;
};

// Edge i -> i+1 (mod n).
Digraph gen_directed_cycle(Index n);
// Edge i -> i+1 for i < n-1; nilpotent adjacency.
Digraph gen_directed_path(Index n);
// Node (r, c) has index r*cols + c and links to (r, c+1) and (r+1, c), wrapping.
Digraph gen_directed_torus(Index rows, Index cols);
// Uniform(0.5, 1.5) weights on the block-cyclic pattern, optionally row normalized.
Digraph gen_mblock_cyclic(const MBlockSpec& spec);
// Each ordered pair (j -> i), i != j, present with probability `density`;
// weights uniform(0.5, 1.5).
Digraph gen_random(Index n, double density, std::uint64_t seed);

enum class Distribution { StandardNormal, Uniform };
Distribution parse_distribution(std::string_view name);

GraphSignal random_signal(Index n, std::uint64_t seed,
                          Distribution dist = Distribution::StandardNormal);

}  // namespace dgft
