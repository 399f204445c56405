#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "bmatch/rational.hpp"

namespace bmatch {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  VertexId u;  // u < v, canonical order
  VertexId v;
};

// Immutable undirected graph. Edge ids are canonical: edges are stored sorted
// by endpoint pair, so the same edge set always yields the same ids no matter
// how it was assembled. No self-loops, no parallel edges.
class Graph {
 public:
  Graph() = default;

  // Takes (u, v, w) triples in any order/orientation; validates and canonicalizes.
  static Graph from_edges(VertexId n, std::vector<std::tuple<VertexId, VertexId, Rat>> triples);

  VertexId vertex_count() const { return n_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  Rat weight(EdgeId e) const { return unit_weights_ ? Rat(1) : weights_[static_cast<std::size_t>(e)]; }
  bool unit_weights() const { return unit_weights_; }

  std::span<const EdgeId> incident(VertexId v) const {
    return {incident_.data() + offsets_[static_cast<std::size_t>(v)],
            incident_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }
  int degree(VertexId v) const {
    return static_cast<int>(offsets_[static_cast<std::size_t>(v) + 1] -
                            offsets_[static_cast<std::size_t>(v)]);
  }
  VertexId other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    return ed.u == v ? ed.v : ed.u;
  }

  // 2m/n, the paper-facing average degree. Zero for the empty vertex set.
  Rat avg_degree() const {
    if (n_ == 0) return Rat(0);
    return Rat(Int(2) * edge_count(), Int(n_));
  }

  // -1 when the pair is not an edge.
  EdgeId find_edge(VertexId u, VertexId v) const;

 private:
  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Rat> weights_;  // empty when unit_weights_
  bool unit_weights_ = true;
  std::vector<std::size_t> offsets_;  // CSR over incident_
  std::vector<EdgeId> incident_;
};

// Per-vertex positive integer budgets b_v.
class BudgetVector {
 public:
  BudgetVector() = default;
  explicit BudgetVector(std::vector<std::int64_t> b);
  static BudgetVector constant(VertexId n, std::int64_t value);

  std::int64_t at(VertexId v) const { return b_[static_cast<std::size_t>(v)]; }
  VertexId size() const { return static_cast<VertexId>(b_.size()); }
  std::int64_t total() const { return total_; }
  const std::vector<std::int64_t>& values() const { return b_; }

 private:
  std::vector<std::int64_t> b_;
  std::int64_t total_ = 0;
};

// Edge-list text format: "n m" then m lines "u v w" (0-based, w decimal, LF).
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

// Budget file: n lines "v b_v".
BudgetVector read_budgets(std::istream& in, VertexId n);
BudgetVector read_budgets_file(const std::string& path, VertexId n);
void write_budgets(std::ostream& out, const BudgetVector& b);

// Subgraph on the same vertex set with a subset of edges; keeps a map back to
// the parent's edge ids (position i of `orig` is the parent id of edge i).
struct Subgraph {
  Graph graph;
  std::vector<EdgeId> orig;
};
Subgraph induce_edges(const Graph& g, std::span<const EdgeId> edge_ids);

}  // namespace bmatch
