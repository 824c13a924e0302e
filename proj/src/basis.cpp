#include "dgft/basis.hpp"

namespace dgft {

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::CommonInLink: return "common_inlink";
    case BasisKind::CommonOutLink: return "common_outlink";
    case BasisKind::InFlow: return "inflow";
    case BasisKind::Schur: return "schur";
    case BasisKind::Adjacency: return "adjacency";
  }
  return "unknown";
}

}  // namespace dgft
