#include "bmatch/matching.hpp"

#include <algorithm>

#include "bmatch/errors.hpp"

namespace bmatch {

CopySpace::CopySpace(const BudgetVector& b) {
  offsets_.assign(static_cast<std::size_t>(b.size()) + 1, 0);
  for (VertexId v = 0; v < b.size(); ++v) {
    offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + b.at(v);
  }
}

CopyVertex CopySpace::copy_of(CopyId id) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), id);
  std::size_t v = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return CopyVertex{static_cast<VertexId>(v), static_cast<std::int32_t>(id - offsets_[v] + 1)};
}

std::vector<CopyVertex> decompress(std::span<const VertexId> vertices, const BudgetVector& b) {
  std::vector<CopyVertex> out;
  for (VertexId v : vertices) {
    check(v >= 0 && v < b.size(), "decompress: budget not defined for vertex");
    for (std::int32_t i = 1; i <= b.at(v); ++i) out.push_back({v, i});
  }
  return out;
}

std::vector<VertexId> compress(std::span<const CopyVertex> copies) {
  std::vector<VertexId> out;
  out.reserve(copies.size());
  for (const CopyVertex& c : copies) out.push_back(c.base);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BMatching BMatching::from_edges(const Graph& g, const BudgetVector& b,
                                std::span<const EdgeId> ids) {
  ValidityReport report = validate_bmatching(g, b, ids);
  check(report.ok(), "edge set is not a valid b-matching");
  BMatching m(g);
  for (EdgeId e : ids) m.add(g, e);
  return m;
}

void BMatching::add(const Graph& g, EdgeId e) {
  check(!contains(e), "edge already in matching");
  in_[static_cast<std::size_t>(e)] = 1;
  ++deg_[static_cast<std::size_t>(g.edge(e).u)];
  ++deg_[static_cast<std::size_t>(g.edge(e).v)];
  ++size_;
}

void BMatching::remove(const Graph& g, EdgeId e) {
  check(contains(e), "edge not in matching");
  in_[static_cast<std::size_t>(e)] = 0;
  --deg_[static_cast<std::size_t>(g.edge(e).u)];
  --deg_[static_cast<std::size_t>(g.edge(e).v)];
  --size_;
}

std::vector<EdgeId> BMatching::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::size_t e = 0; e < in_.size(); ++e) {
    if (in_[e]) out.push_back(static_cast<EdgeId>(e));
  }
  return out;
}

Rat BMatching::weight(const Graph& g) const {
  if (g.unit_weights()) return Rat(size_);
  Rat total = 0;
  for (std::size_t e = 0; e < in_.size(); ++e) {
    if (in_[e]) total += g.weight(static_cast<EdgeId>(e));
  }
  return total;
}

void validate_walk(const AlternatingWalk& walk, const Graph& g, const BMatching& m) {
  check(walk.vertices.size() == walk.steps.size() + 1 || (walk.vertices.empty() && walk.steps.empty()),
        "walk vertex/step sizes inconsistent");
  std::vector<EdgeId> seen;
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    EdgeId e = walk.steps[i].edge;
    check(e >= 0 && e < g.edge_count(), "walk references nonexistent edge id");
    VertexId a = walk.vertices[i], bv = walk.vertices[i + 1];
    const Edge& ed = g.edge(e);
    check((ed.u == a && ed.v == bv) || (ed.u == bv && ed.v == a),
          "consecutive walk vertices do not match their edge");
    check(walk.steps[i].matched == m.contains(e),
          "walk matched flag disagrees with the matching");
    if (i > 0) {
      check(walk.steps[i].matched != walk.steps[i - 1].matched,
            "walk does not alternate matched/unmatched");
    }
    seen.push_back(e);
  }
  std::sort(seen.begin(), seen.end());
  check(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "walk reuses an edge");
}

Rat gain(const AlternatingWalk& walk, const BMatching& m, const Graph& g) {
  validate_walk(walk, g, m);
  Rat delta = 0;
  for (const WalkStep& s : walk.steps) {
    if (s.matched) {
      delta -= g.weight(s.edge);
    } else {
      delta += g.weight(s.edge);
    }
  }
  return delta;
}

BMatching apply_walk(const BMatching& m, const AlternatingWalk& walk, const Graph& g,
                     const BudgetVector& b) {
  validate_walk(walk, g, m);
  BMatching out = m;
  for (const WalkStep& s : walk.steps) {
    if (s.matched) {
      out.remove(g, s.edge);
    } else {
      out.add(g, s.edge);
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    check(out.degree(v) <= b.at(v), "invalid augmentation: budget exceeded at vertex " +
                                        std::to_string(v));
  }
  return out;
}

std::vector<VertexId> free_vertices(const Graph& g, const BudgetVector& b, const BMatching& m) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (m.degree(v) < b.at(v)) out.push_back(v);
  }
  return out;
}

ValidityReport validate_bmatching(const Graph& g, const BudgetVector& b,
                                  std::span<const EdgeId> edge_ids) {
  check(b.size() == g.vertex_count(), "budget/graph dimension mismatch");
  ValidityReport report;
  std::vector<char> seen(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<std::int64_t> deg(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e : edge_ids) {
    check(e >= 0 && e < g.edge_count(), "matching references nonexistent edge id");
    if (seen[static_cast<std::size_t>(e)]) {
      report.duplicate_edges.push_back(e);
      continue;
    }
    seen[static_cast<std::size_t>(e)] = 1;
    ++deg[static_cast<std::size_t>(g.edge(e).u)];
    ++deg[static_cast<std::size_t>(g.edge(e).v)];
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (deg[static_cast<std::size_t>(v)] > b.at(v)) {
      report.budget_violations.push_back({v, deg[static_cast<std::size_t>(v)], b.at(v)});
    }
  }
  return report;
}

}  // namespace bmatch
