#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bmatch/errors.hpp"
#include "bmatch/generate.hpp"
#include "bmatch/graph.hpp"
#include "bmatch/matching.hpp"
#include "bmatch/rng.hpp"

using namespace bmatch;

namespace {

AlternatingWalk make_walk(const Graph& g, std::vector<VertexId> verts, const BMatching& m) {
  AlternatingWalk w;
  w.vertices = verts;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    EdgeId e = g.find_edge(verts[i], verts[i + 1]);
    REQUIRE(e >= 0);
    w.steps.push_back({e, m.contains(e)});
  }
  return w;
}

}  // namespace

TEST_CASE("graph construction canonicalizes edge ids") {
  Graph g = Graph::from_edges(4, {{2, 1, Rat(1)}, {0, 3, Rat(1)}, {1, 0, Rat(1)}});
  CHECK(g.edge_count() == 3);
  // Sorted endpoint pairs: (0,1), (0,3), (1,2).
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 1);
  CHECK(g.edge(1).v == 3);
  CHECK(g.edge(2).u == 1);
  CHECK(g.find_edge(3, 0) == 1);
  CHECK(g.find_edge(2, 3) == -1);
  CHECK(g.avg_degree() == make_rat(6, 4));
}

TEST_CASE("graph construction rejects self-loops and duplicates") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{1, 1, Rat(1)}}), InvalidInput);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1, Rat(1)}, {1, 0, Rat(2)}}), InvalidInput);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2, Rat(1)}}), InvalidInput);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, Rat(-1)}}), InvalidInput);
}

TEST_CASE("adjacency is consistent with edges") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = gen_gnp(12, 0.3, 1, rng.next());
    std::vector<int> appearances(static_cast<std::size_t>(g.edge_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (EdgeId e : g.incident(v)) {
        CHECK((g.edge(e).u == v || g.edge(e).v == v));
        ++appearances[static_cast<std::size_t>(e)];
      }
    }
    for (int c : appearances) CHECK(c == 2);
  }
}

TEST_CASE("edge list round trip and parse errors") {
  Graph g = Graph::from_edges(3, {{0, 1, make_rat(5, 2)}, {1, 2, Rat(1)}});
  std::stringstream ss;
  write_graph(ss, g);
  Graph h = read_graph(ss);
  CHECK(h.edge_count() == g.edge_count());
  CHECK(h.weight(0) == make_rat(5, 2));

  std::stringstream bad("2 1\n0 oops 1\n");
  CHECK_THROWS_WITH_AS(read_graph(bad), doctest::Contains("line 2"), InvalidInput);

  std::stringstream bad2("2 2\n0 1 1\n");
  CHECK_THROWS_AS(read_graph(bad2), InvalidInput);
}

TEST_CASE("budget io") {
  BudgetVector b(std::vector<std::int64_t>{2, 1, 3});
  std::stringstream ss;
  write_budgets(ss, b);
  BudgetVector back = read_budgets(ss, 3);
  CHECK(back.at(0) == 2);
  CHECK(back.at(2) == 3);
  CHECK(back.total() == 6);

  std::stringstream missing("0 2\n1 1\n");
  CHECK_THROWS_WITH_AS(read_budgets(missing, 3), doctest::Contains("dimension"), InvalidInput);
  CHECK_THROWS_AS(BudgetVector(std::vector<std::int64_t>{1, 0}), InvalidInput);
}

TEST_CASE("decompress produces contiguous copies") {
  BudgetVector b(std::vector<std::int64_t>{2, 1});
  std::vector<VertexId> vs{0, 1};
  auto copies = decompress(vs, b);
  REQUIRE(copies.size() == 3);
  CHECK(copies[0] == CopyVertex{0, 1});
  CHECK(copies[1] == CopyVertex{0, 2});
  CHECK(copies[2] == CopyVertex{1, 1});

  CHECK(decompress(std::vector<VertexId>{}, b).empty());

  BudgetVector b3(std::vector<std::int64_t>{3});
  std::vector<VertexId> single{0};
  CHECK(decompress(single, b3).size() == 3);
}

TEST_CASE("compress collapses copies to distinct bases") {
  std::vector<CopyVertex> copies{{0, 1}, {0, 2}, {1, 1}};
  auto bases = compress(copies);
  CHECK(bases == std::vector<VertexId>{0, 1});
  CHECK(compress(std::vector<CopyVertex>{}).empty());
}

TEST_CASE("compress of decompress is the identity (property)") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    VertexId n = 1 + static_cast<VertexId>(rng.below(10));
    std::vector<std::int64_t> raw(static_cast<std::size_t>(n));
    for (auto& x : raw) x = 1 + static_cast<std::int64_t>(rng.below(5));
    BudgetVector b(raw);
    std::vector<VertexId> subset;
    for (VertexId v = 0; v < n; ++v) {
      if (rng.coin()) subset.push_back(v);
    }
    auto copies = decompress(subset, b);
    std::int64_t expected = 0;
    for (VertexId v : subset) expected += b.at(v);
    CHECK(static_cast<std::int64_t>(copies.size()) == expected);
    CHECK(compress(copies) == subset);
  }
}

TEST_CASE("copy space ids round trip") {
  BudgetVector b(std::vector<std::int64_t>{2, 3, 1});
  CopySpace cs(b);
  CHECK(cs.total() == 6);
  for (CopyId id = 0; id < cs.total(); ++id) {
    CHECK(cs.id_of(cs.copy_of(id)) == id);
  }
  CHECK(cs.count_of(1) == 3);
}

TEST_CASE("gain follows the weight difference") {
  // Path a-b-c with w(ab)=3, w(bc)=1; bc matched.
  Graph g = Graph::from_edges(3, {{0, 1, Rat(3)}, {1, 2, Rat(1)}});
  BudgetVector b = BudgetVector::constant(3, 1);
  BMatching m = BMatching::from_edges(g, b, std::vector<EdgeId>{g.find_edge(1, 2)});
  AlternatingWalk w = make_walk(g, {0, 1, 2}, m);
  CHECK(gain(w, m, g) == Rat(2));

  // Single matched edge of weight 5.
  Graph g5 = Graph::from_edges(2, {{0, 1, Rat(5)}});
  BMatching m5 = BMatching::from_edges(g5, BudgetVector::constant(2, 1), std::vector<EdgeId>{0});
  AlternatingWalk single = make_walk(g5, {0, 1}, m5);
  CHECK(gain(single, m5, g5) == Rat(-5));
}

TEST_CASE("gain rejects non-alternating walks") {
  Graph g = Graph::from_edges(3, {{0, 1, Rat(1)}, {1, 2, Rat(1)}});
  BMatching empty(g);
  AlternatingWalk w = make_walk(g, {0, 1, 2}, empty);
  // Both edges unmatched: flags agree with M but do not alternate.
  CHECK_THROWS_AS(gain(w, empty, g), InvalidInput);

  // Flags disagreeing with the matching are also malformed.
  AlternatingWalk lies;
  lies.vertices = {0, 1};
  lies.steps = {{0, true}};
  CHECK_THROWS_AS(gain(lies, empty, g), InvalidInput);
}

TEST_CASE("apply_walk performs the classic length-3 augmentation") {
  Graph g = gen_fixture("F3");
  BudgetVector b = BudgetVector::constant(4, 1);
  BMatching m = BMatching::from_edges(g, b, std::vector<EdgeId>{g.find_edge(1, 2)});
  AlternatingWalk w = make_walk(g, {0, 1, 2, 3}, m);
  Rat delta = gain(w, m, g);
  BMatching m2 = apply_walk(m, w, g, b);
  CHECK(m2.size() == m.size() + 1);
  CHECK(m2.contains(g.find_edge(0, 1)));
  CHECK(m2.contains(g.find_edge(2, 3)));
  CHECK(!m2.contains(g.find_edge(1, 2)));
  CHECK(m2.weight(g) - m.weight(g) == delta);
}

TEST_CASE("apply_walk with the empty walk is the identity") {
  Graph g = gen_fixture("F1");
  BudgetVector b = BudgetVector::constant(2, 1);
  BMatching m(g);
  BMatching m2 = apply_walk(m, AlternatingWalk{}, g, b);
  CHECK(m2.size() == 0);
}

TEST_CASE("apply_walk rejects budget violations") {
  // Star center 0 with leaves 1, 2; b(center)=1; M={0-1}; P=(0-2) unmatched.
  Graph g = gen_star(2);
  BudgetVector b = BudgetVector::constant(3, 1);
  BMatching m = BMatching::from_edges(g, b, std::vector<EdgeId>{g.find_edge(0, 1)});
  AlternatingWalk w = make_walk(g, {0, 2}, m);
  CHECK_THROWS_WITH_AS(apply_walk(m, w, g, b), doctest::Contains("invalid augmentation"),
                       InvalidInput);
}

TEST_CASE("free vertices") {
  Graph f1 = gen_fixture("F1");
  BudgetVector b1 = BudgetVector::constant(2, 1);
  CHECK(free_vertices(f1, b1, BMatching(f1)) == std::vector<VertexId>{0, 1});
  BMatching full = BMatching::from_edges(f1, b1, std::vector<EdgeId>{0});
  CHECK(free_vertices(f1, b1, full).empty());

  // Star center 0 (b=2), leaves 1,2,3 (b=1); M={0-1} frees {0,2,3}.
  Graph star = gen_star(3);
  BudgetVector bs(std::vector<std::int64_t>{2, 1, 1, 1});
  BMatching m = BMatching::from_edges(star, bs, std::vector<EdgeId>{star.find_edge(0, 1)});
  CHECK(free_vertices(star, bs, m) == std::vector<VertexId>{0, 2, 3});
}

TEST_CASE("validate_bmatching reports the exact violations") {
  Graph star = gen_star(3);
  BudgetVector b(std::vector<std::int64_t>{2, 1, 1, 1});
  std::vector<EdgeId> ok{star.find_edge(0, 1), star.find_edge(0, 2)};
  CHECK(validate_bmatching(star, b, ok).ok());

  std::vector<EdgeId> over{0, 1, 2};  // center degree 3 > 2
  ValidityReport report = validate_bmatching(star, b, over);
  REQUIRE(report.budget_violations.size() == 1);
  CHECK(report.budget_violations[0].vertex == 0);
  CHECK(report.budget_violations[0].degree == 3);

  std::vector<EdgeId> dup{0, 0};
  CHECK(validate_bmatching(star, b, dup).duplicate_edges == std::vector<EdgeId>{0});

  std::vector<EdgeId> bogus{99};
  CHECK_THROWS_AS(validate_bmatching(star, b, bogus), InvalidInput);
}

TEST_CASE("disjoint walks compose additively (property)") {
  // Two vertex-disjoint augmenting paths on a 6-path.
  Graph g = gen_path(6);
  BudgetVector b = BudgetVector::constant(6, 1);
  BMatching m = BMatching::from_edges(
      g, b, std::vector<EdgeId>{g.find_edge(1, 2), g.find_edge(3, 4)});
  AlternatingWalk w1 = make_walk(g, {0, 1, 2}, m);
  AlternatingWalk w2 = make_walk(g, {3, 4, 5}, m);
  Rat g1 = gain(w1, m, g), g2 = gain(w2, m, g);
  BMatching step1 = apply_walk(m, w1, g, b);
  // w2 is untouched by w1, so its flags still agree with the new matching.
  BMatching step2 = apply_walk(step1, w2, g, b);
  CHECK(validate_bmatching(g, b, step2.edge_ids()).ok());
  CHECK(step2.weight(g) - m.weight(g) == g1 + g2);
}
