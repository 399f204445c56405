#include "bmatch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bmatch/errors.hpp"

namespace bmatch {

Graph Graph::from_edges(VertexId n, std::vector<std::tuple<VertexId, VertexId, Rat>> triples) {
  check(n >= 0, "negative vertex count");
  for (auto& [u, v, w] : triples) {
    check(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    check(u != v, "self-loops are not allowed");
    check(w >= 0, "negative edge weight");
    if (u > v) std::swap(u, v);
  }
  std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
    return std::make_pair(std::get<0>(a), std::get<1>(a)) <
           std::make_pair(std::get<0>(b), std::get<1>(b));
  });
  Graph g;
  g.n_ = n;
  g.edges_.reserve(triples.size());
  bool unit = true;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    auto& [u, v, w] = triples[i];
    if (i > 0) {
      const Edge& prev = g.edges_.back();
      check(!(prev.u == u && prev.v == v), "duplicate edge");
    }
    g.edges_.push_back({u, v});
    if (w != 1) unit = false;
  }
  g.unit_weights_ = unit;
  if (!unit) {
    g.weights_.reserve(triples.size());
    for (auto& t : triples) g.weights_.push_back(std::move(std::get<2>(t)));
  }
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[static_cast<std::size_t>(e.u) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.incident_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    g.incident_[cursor[static_cast<std::size_t>(g.edges_[static_cast<std::size_t>(e)].u)]++] = e;
    g.incident_[cursor[static_cast<std::size_t>(g.edges_[static_cast<std::size_t>(e)].v)]++] = e;
  }
  return g;
}

EdgeId Graph::find_edge(VertexId u, VertexId v) const {
  if (u > v) std::swap(u, v);
  Edge probe{u, v};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, [](const Edge& a, const Edge& b) {
    return std::make_pair(a.u, a.v) < std::make_pair(b.u, b.v);
  });
  if (it == edges_.end() || it->u != u || it->v != v) return -1;
  return static_cast<EdgeId>(it - edges_.begin());
}

BudgetVector::BudgetVector(std::vector<std::int64_t> b) : b_(std::move(b)) {
  for (std::int64_t x : b_) {
    check(x >= 1, "budgets must be >= 1");
    total_ += x;
  }
}

BudgetVector BudgetVector::constant(VertexId n, std::int64_t value) {
  return BudgetVector(std::vector<std::int64_t>(static_cast<std::size_t>(n), value));
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw InvalidInput("parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw InvalidInput("empty graph file");
  std::istringstream head(line);
  long long n = -1, m = -1;
  if (!(head >> n >> m) || n < 0 || m < 0) parse_fail(lineno, "expected 'n m'");
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  triples.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) parse_fail(lineno + 1, "unexpected end of file");
    std::istringstream ls(line);
    long long u, v;
    std::string w;
    if (!(ls >> u >> v >> w)) parse_fail(lineno, "expected 'u v w'");
    if (u < 0 || u >= n || v < 0 || v >= n) parse_fail(lineno, "vertex id out of range");
    Rat weight;
    try {
      weight = rat_from_decimal(w);
    } catch (const InvalidInput& e) {
      parse_fail(lineno, e.what());
    }
    triples.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v), std::move(weight));
  }
  return Graph::from_edges(static_cast<VertexId>(n), std::move(triples));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), "cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).u << ' ' << g.edge(e).v << ' ' << rat_to_decimal_or_fraction(g.weight(e))
        << '\n';
  }
}

BudgetVector read_budgets(std::istream& in, VertexId n) {
  std::vector<std::int64_t> b(static_cast<std::size_t>(n), -1);
  std::string line;
  int lineno = 0;
  int seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long v, bv;
    if (!(ls >> v >> bv)) parse_fail(lineno, "expected 'v b_v'");
    if (v < 0 || v >= n) throw InvalidInput("budget file vertex id out of range (dimension mismatch)");
    if (b[static_cast<std::size_t>(v)] != -1) parse_fail(lineno, "duplicate budget for vertex");
    b[static_cast<std::size_t>(v)] = bv;
    ++seen;
  }
  if (seen != n) throw InvalidInput("budget file covers " + std::to_string(seen) + " of " +
                                    std::to_string(n) + " vertices (dimension mismatch)");
  return BudgetVector(std::move(b));
}

BudgetVector read_budgets_file(const std::string& path, VertexId n) {
  std::ifstream in(path);
  check(in.good(), "cannot open budget file '" + path + "'");
  return read_budgets(in, n);
}

void write_budgets(std::ostream& out, const BudgetVector& b) {
  for (VertexId v = 0; v < b.size(); ++v) out << v << ' ' << b.at(v) << '\n';
}

Subgraph induce_edges(const Graph& g, std::span<const EdgeId> edge_ids) {
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  triples.reserve(edge_ids.size());
  std::vector<EdgeId> orig(edge_ids.begin(), edge_ids.end());
  std::sort(orig.begin(), orig.end());
  for (EdgeId e : orig) {
    triples.emplace_back(g.edge(e).u, g.edge(e).v, g.weight(e));
  }
  // Parent ids are canonical, so sorted parent ids give canonical child order.
  return Subgraph{Graph::from_edges(g.vertex_count(), std::move(triples)), std::move(orig)};
}

}  // namespace bmatch
