#pragma once

#include <vector>

#include "bmatch/fractional.hpp"
#include "bmatch/graph.hpp"
#include "bmatch/matching.hpp"

namespace bmatch {

struct OracleResult {
  Rat value;
  std::vector<EdgeId> witness;
};

// True optimum by branch and bound over edge inclusion with residual-budget
// pruning and a sorted-weight upper bound. Exhaustive by design; refuses
// instances with more than `edge_cap` edges.
// `weighted` false maximizes cardinality regardless of weights.
// `reverse_order` explores edges in the opposite order (self-consistency runs).
OracleResult exact_max_bmatching(const Graph& g, const BudgetVector& b, bool weighted,
                                 int edge_cap = 24, bool reverse_order = false);

// Optimum b'-matching between two compressed layers, given as an explicit
// small bipartite instance: edges join left slot `l` to right slot `r`.
struct LayeredInstance {
  std::vector<std::pair<int, int>> edges;  // (left index, right index)
  std::vector<std::int64_t> left_capacity;
  std::vector<std::int64_t> right_capacity;
};
std::int64_t exact_max_matching_layered(const LayeredInstance& inst, int edge_cap = 20);

// Independent re-evaluation of the alpha-tight definition; cross-validates
// fractional::loose_sets in differential tests.
bool recheck_tightness(const LPInstance& inst, const std::vector<Rat>& x, const Rat& alpha);

}  // namespace bmatch
