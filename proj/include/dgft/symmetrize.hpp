#pragma once

// Bibliographic coupling (A A^T), co-citation (A^T A) and their sum.
//
// b_ij = sum_k a_ik a_jk is the total weight of in-links shared by i and j;
// c_ij = sum_k a_ki a_kj is the total weight of shared out-links.

#include <string_view>
#include <vector>

#include "dgft/graph.hpp"
#include "dgft/linalg.hpp"

namespace dgft {

enum class SymmetrizationKind { CommonInLink, CommonOutLink, Bibliometric };

std::string_view to_string(SymmetrizationKind kind);

struct Symmetrization {
  SymmetrizationKind kind;
  Matrix matrix;  // exactly symmetric
  Index source_size = 0;
};

Symmetrization bibliographic_coupling(const Digraph& g);
Symmetrization co_citation(const Digraph& g);
Symmetrization bibliometric(const Digraph& g);

// Full quadratic form x^T S x, diagonal terms included.
double quadratic_variation(const Symmetrization& s, const GraphSignal& x);

// Connected components of the nonzero pattern (|s_ij| > threshold, i != j).
// Each component lists its nodes in ascending order; components are ordered
// by their smallest node.
std::vector<std::vector<Index>> connected_components(const Symmetrization& s,
                                                     double threshold = 1e-12);

// Unit eigenvector of the largest eigenvalue, signed so its entries sum to a
// nonnegative value. Entrywise nonnegative (up to roundoff) when the pattern
// is connected.
Vector perron_vector(const Symmetrization& s, const NumericPolicy& policy = {});

}  // namespace dgft
