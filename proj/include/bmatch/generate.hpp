#pragma once

#include <cstdint>
#include <string>

#include "bmatch/graph.hpp"

namespace bmatch {

// Desk-scale instance generators. All are deterministic in the seed.
// wmax = 1 yields unit weights; wmax > 1 draws integer weights from 1..wmax.

Graph gen_gnp(VertexId n, double p, std::int64_t wmax, std::uint64_t seed);
Graph gen_bipartite(VertexId n1, VertexId n2, double p, std::int64_t wmax, std::uint64_t seed);
Graph gen_path(VertexId n);
Graph gen_star(VertexId leaves);

// F1: single edge a-b. F2: unit triangle. F3: path a-b-c-d.
Graph gen_fixture(const std::string& name);

enum class BudgetKind { Constant, Uniform };
BudgetVector gen_budgets(VertexId n, BudgetKind kind, std::int64_t bmax, std::uint64_t seed);

}  // namespace bmatch
