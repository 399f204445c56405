#include "bmatch/generate.hpp"

#include "bmatch/errors.hpp"
#include "bmatch/rng.hpp"

namespace bmatch {

namespace {

Rat draw_weight(Rng& rng, std::int64_t wmax) {
  if (wmax <= 1) return Rat(1);
  return Rat(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(wmax))));
}

// p as a 64-bit threshold; each pair decided by its own derived stream so the
// edge set is independent of traversal order.
bool pair_present(std::uint64_t seed, VertexId u, VertexId v, std::uint64_t threshold) {
  return mix64(seed, 0xed6eull, (static_cast<std::uint64_t>(u) << 32) |
                                    static_cast<std::uint64_t>(static_cast<std::uint32_t>(v))) <
         threshold;
}

std::uint64_t threshold_of(double p) {
  if (p <= 0) return 0;
  if (p >= 1) return ~0ULL;
  return static_cast<std::uint64_t>(p * 18446744073709551616.0);
}

}  // namespace

Graph gen_gnp(VertexId n, double p, std::int64_t wmax, std::uint64_t seed) {
  check(n >= 0, "gnp: negative n");
  std::uint64_t threshold = threshold_of(p);
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (pair_present(seed, u, v, threshold)) {
        Rng wr = derived_rng(seed, 0x3e16ull,
                             (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
        triples.emplace_back(u, v, draw_weight(wr, wmax));
      }
    }
  }
  return Graph::from_edges(n, std::move(triples));
}

Graph gen_bipartite(VertexId n1, VertexId n2, double p, std::int64_t wmax, std::uint64_t seed) {
  check(n1 >= 0 && n2 >= 0, "bipartite: negative side size");
  std::uint64_t threshold = threshold_of(p);
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  for (VertexId u = 0; u < n1; ++u) {
    for (VertexId w = 0; w < n2; ++w) {
      VertexId v = n1 + w;
      if (pair_present(seed, u, v, threshold)) {
        Rng wr = derived_rng(seed, 0x3e16ull,
                             (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v));
        triples.emplace_back(u, v, draw_weight(wr, wmax));
      }
    }
  }
  return Graph::from_edges(n1 + n2, std::move(triples));
}

Graph gen_path(VertexId n) {
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  for (VertexId v = 0; v + 1 < n; ++v) triples.emplace_back(v, v + 1, Rat(1));
  return Graph::from_edges(n, std::move(triples));
}

Graph gen_star(VertexId leaves) {
  std::vector<std::tuple<VertexId, VertexId, Rat>> triples;
  for (VertexId v = 1; v <= leaves; ++v) triples.emplace_back(0, v, Rat(1));
  return Graph::from_edges(leaves + 1, std::move(triples));
}

Graph gen_fixture(const std::string& name) {
  if (name == "F1") {
    return Graph::from_edges(2, {{0, 1, Rat(1)}});
  }
  if (name == "F2") {
    return Graph::from_edges(3, {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {0, 2, Rat(1)}});
  }
  if (name == "F3") {
    return gen_path(4);
  }
  throw InvalidInput("unknown fixture '" + name + "' (expected F1|F2|F3)");
}

BudgetVector gen_budgets(VertexId n, BudgetKind kind, std::int64_t bmax, std::uint64_t seed) {
  check(bmax >= 1, "bmax must be >= 1");
  std::vector<std::int64_t> b(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    if (kind == BudgetKind::Constant) {
      b[static_cast<std::size_t>(v)] = bmax;
    } else {
      b[static_cast<std::size_t>(v)] =
          1 + static_cast<std::int64_t>(
                  derived_rng(seed, 0xb1d6ull, static_cast<std::uint64_t>(v))
                      .below(static_cast<std::uint64_t>(bmax)));
    }
  }
  return BudgetVector(std::move(b));
}

}  // namespace bmatch
