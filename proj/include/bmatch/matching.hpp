#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmatch/graph.hpp"

namespace bmatch {

// The i-th copy of a vertex, 1 <= index <= b_v.
struct CopyVertex {
  VertexId base;
  std::int32_t index;

  friend bool operator==(const CopyVertex&, const CopyVertex&) = default;
  friend auto operator<=>(const CopyVertex&, const CopyVertex&) = default;
};

using CopyId = std::int64_t;

// Dense numbering of Decompress(V, b): copy v^i gets id offset(v) + i - 1.
class CopySpace {
 public:
  CopySpace() = default;
  explicit CopySpace(const BudgetVector& b);

  CopyId id_of(CopyVertex c) const { return offsets_[static_cast<std::size_t>(c.base)] + c.index - 1; }
  CopyVertex copy_of(CopyId id) const;
  CopyId total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  CopyId first_of(VertexId v) const { return offsets_[static_cast<std::size_t>(v)]; }
  std::int64_t count_of(VertexId v) const {
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
  }

 private:
  std::vector<CopyId> offsets_;
};

std::vector<CopyVertex> decompress(std::span<const VertexId> vertices, const BudgetVector& b);
std::vector<VertexId> compress(std::span<const CopyVertex> copies);

// Edge subset with at most b_v incident edges per vertex.
class BMatching {
 public:
  BMatching() = default;
  explicit BMatching(const Graph& g)
      : in_(static_cast<std::size_t>(g.edge_count()), 0),
        deg_(static_cast<std::size_t>(g.vertex_count()), 0) {}
  // Validates ids and budgets; throws InvalidInput on violation.
  static BMatching from_edges(const Graph& g, const BudgetVector& b, std::span<const EdgeId> ids);

  bool contains(EdgeId e) const { return in_[static_cast<std::size_t>(e)] != 0; }
  std::int64_t degree(VertexId v) const { return deg_[static_cast<std::size_t>(v)]; }
  std::int64_t size() const { return size_; }

  void add(const Graph& g, EdgeId e);
  void remove(const Graph& g, EdgeId e);

  std::vector<EdgeId> edge_ids() const;
  Rat weight(const Graph& g) const;

 private:
  std::vector<char> in_;
  std::vector<std::int64_t> deg_;
  std::int64_t size_ = 0;
};

// Walk with per-edge matched-at-construction flags. Vertices may repeat;
// edges of a well-formed augmentation never do.
struct WalkStep {
  EdgeId edge;
  bool matched;
};

struct AlternatingWalk {
  std::vector<VertexId> vertices;  // size steps+1; closed walks repeat the first vertex last
  std::vector<WalkStep> steps;
  std::optional<CopyVertex> head_copy;  // endpoints in copy space, when known
  std::optional<CopyVertex> tail_copy;

  bool empty() const { return steps.empty(); }
  bool closed() const {
    return !steps.empty() && vertices.front() == vertices.back();
  }
};

// Checks connectivity of consecutive steps, strict alternation of the flags,
// agreement of the flags with M, and that no edge repeats.
void validate_walk(const AlternatingWalk& walk, const Graph& g, const BMatching& m);

// w(P \ M) - w(P cap M). Throws InvalidInput when P does not alternate wrt M.
Rat gain(const AlternatingWalk& walk, const BMatching& m, const Graph& g);

// Toggles the walk's edges; the result's weight changes by exactly gain(P).
// Throws InvalidInput ("invalid augmentation") when a budget would be exceeded.
BMatching apply_walk(const BMatching& m, const AlternatingWalk& walk, const Graph& g,
                     const BudgetVector& b);

std::vector<VertexId> free_vertices(const Graph& g, const BudgetVector& b, const BMatching& m);

struct ValidityReport {
  struct BudgetViolation {
    VertexId vertex;
    std::int64_t degree;
    std::int64_t budget;
  };
  std::vector<BudgetViolation> budget_violations;
  std::vector<EdgeId> duplicate_edges;
  bool ok() const { return budget_violations.empty() && duplicate_edges.empty(); }
};

// Structural problems (edge id out of range) throw; rule violations are listed.
ValidityReport validate_bmatching(const Graph& g, const BudgetVector& b,
                                  std::span<const EdgeId> edge_ids);

}  // namespace bmatch
