#include "bmatch/oracle.hpp"

#include <algorithm>

#include "bmatch/errors.hpp"

namespace bmatch {

namespace {

struct SearchState {
  const Graph* g;
  const BudgetVector* b;
  std::vector<EdgeId> order;
  std::vector<Rat> suffix_weight;  // best-possible remaining mass from position i
  std::vector<std::int64_t> residual;
  std::vector<EdgeId> chosen;
  std::vector<EdgeId> best_witness;
  Rat best_value = 0;
  Rat current = 0;

  void dfs(std::size_t pos) {
    if (current > best_value) {
      best_value = current;
      best_witness = chosen;
    }
    if (pos == order.size()) return;
    if (current + suffix_weight[pos] <= best_value) return;  // cannot improve
    EdgeId e = order[pos];
    const Edge& ed = g->edge(e);
    // Include.
    if (residual[static_cast<std::size_t>(ed.u)] > 0 &&
        residual[static_cast<std::size_t>(ed.v)] > 0) {
      --residual[static_cast<std::size_t>(ed.u)];
      --residual[static_cast<std::size_t>(ed.v)];
      chosen.push_back(e);
      Rat w = weight_of(e);
      current += w;
      dfs(pos + 1);
      current -= w;
      chosen.pop_back();
      ++residual[static_cast<std::size_t>(ed.u)];
      ++residual[static_cast<std::size_t>(ed.v)];
    }
    // Exclude.
    dfs(pos + 1);
  }

  Rat weight_of(EdgeId e) const { return weighted ? g->weight(e) : Rat(1); }
  bool weighted = false;
};

}  // namespace

OracleResult exact_max_bmatching(const Graph& g, const BudgetVector& b, bool weighted,
                                 int edge_cap, bool reverse_order) {
  check(b.size() == g.vertex_count(), "budget/graph dimension mismatch");
  check(g.edge_count() <= edge_cap, "oracle refuses instances with more than " +
                                        std::to_string(edge_cap) + " edges");
  SearchState st;
  st.g = &g;
  st.b = &b;
  st.weighted = weighted;
  st.order.resize(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) st.order[static_cast<std::size_t>(e)] = e;
  // Heavier edges first tightens the bound quickly.
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](EdgeId a, EdgeId bb) { return st.weight_of(a) > st.weight_of(bb); });
  if (reverse_order) std::reverse(st.order.begin(), st.order.end());
  st.suffix_weight.assign(st.order.size() + 1, Rat(0));
  for (std::size_t i = st.order.size(); i > 0; --i) {
    st.suffix_weight[i - 1] = st.suffix_weight[i] + st.weight_of(st.order[i - 1]);
  }
  st.residual.resize(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    st.residual[static_cast<std::size_t>(v)] = b.at(v);
  }
  st.dfs(0);
  std::sort(st.best_witness.begin(), st.best_witness.end());
  return OracleResult{st.best_value, st.best_witness};
}

std::int64_t exact_max_matching_layered(const LayeredInstance& inst, int edge_cap) {
  check(static_cast<int>(inst.edges.size()) <= edge_cap,
        "layered oracle refuses instances with more than " + std::to_string(edge_cap) + " edges");
  // Reduce to the general engine on a small constructed graph: left slots map
  // to vertices [0, L), right slots to [L, L+R). Zero-capacity slots keep a
  // placeholder budget of 1 and lose their edges instead.
  VertexId left = static_cast<VertexId>(inst.left_capacity.size());
  VertexId right = static_cast<VertexId>(inst.right_capacity.size());
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  for (auto [l, r] : inst.edges) {
    check(l >= 0 && l < left && r >= 0 && r < right, "layered instance slot out of range");
    if (inst.left_capacity[static_cast<std::size_t>(l)] > 0 &&
        inst.right_capacity[static_cast<std::size_t>(r)] > 0) {
      triples.emplace_back(static_cast<VertexId>(l), static_cast<VertexId>(left + r), Rat(1));
    }
  }
  Graph g = Graph::from_edges(left + right, std::move(triples));
  std::vector<std::int64_t> caps;
  caps.reserve(static_cast<std::size_t>(left + right));
  for (std::int64_t c : inst.left_capacity) caps.push_back(std::max<std::int64_t>(c, 1));
  for (std::int64_t c : inst.right_capacity) caps.push_back(std::max<std::int64_t>(c, 1));
  OracleResult res = exact_max_bmatching(g, BudgetVector(std::move(caps)), false, edge_cap);
  return static_cast<std::int64_t>(res.witness.size());
}

bool recheck_tightness(const LPInstance& inst, const std::vector<Rat>& x, const Rat& alpha) {
  const Graph& g = *inst.g;
  // Deliberately naive: per-edge scans instead of shared incident sums.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!(x[static_cast<std::size_t>(e)] < alpha * inst.r[static_cast<std::size_t>(e)])) continue;
    bool u_loose = true, v_loose = true;
    for (int side = 0; side < 2; ++side) {
      VertexId v = side == 0 ? g.edge(e).u : g.edge(e).v;
      Rat sum = 0;
      for (EdgeId f : g.incident(v)) sum += x[static_cast<std::size_t>(f)];
      bool loose = sum < alpha * inst.b[static_cast<std::size_t>(v)];
      if (side == 0) {
        u_loose = loose;
      } else {
        v_loose = loose;
      }
    }
    if (u_loose && v_loose) return false;  // found a loose edge
  }
  return true;
}

}  // namespace bmatch
