#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bmatch/fractional.hpp"
#include "bmatch/generate.hpp"
#include "bmatch/oracle.hpp"

using namespace bmatch;

namespace {

MachineCluster make_cluster(const Graph& g, std::uint64_t seed) {
  ClusterConfig cfg;
  cfg.seed = seed;
  return MachineCluster(cfg, g.vertex_count(), g.edge_count());
}

LPInstance unit_instance(const Graph& g, std::int64_t budget = 1) {
  return LPInstance::unit(g, BudgetVector::constant(g.vertex_count(), budget));
}

}  // namespace

TEST_CASE("loose_sets on the fixtures") {
  Graph f2 = gen_fixture("F2");
  LPInstance i2 = unit_instance(f2);
  std::vector<Rat> x04(3, make_rat(2, 5));
  TightnessReport rep = loose_sets(i2, x04, make_rat(1, 5));
  CHECK(rep.v_loose.empty());
  CHECK(rep.e_loose.empty());
  CHECK(rep.tight());

  std::vector<Rat> zero(3, Rat(0));
  TightnessReport all_loose = loose_sets(i2, zero, make_rat(1, 20));
  CHECK(all_loose.v_loose.size() == 3);
  CHECK(all_loose.e_loose.size() == 3);

  Graph f1 = gen_fixture("F1");
  LPInstance i1 = unit_instance(f1);
  std::vector<Rat> x08{make_rat(4, 5)};
  CHECK(loose_sets(i1, x08, make_rat(1, 5)).tight());
}

TEST_CASE("thresholds live in [0.2 b, 0.4 b]") {
  ThresholdSchedule sched(99);
  for (VertexId v = 0; v < 50; ++v) {
    for (int t = 1; t <= 5; ++t) {
      Rat b = make_rat(1 + v % 4, 1 + t % 2);
      Rat thr = sched.at(v, t, b);
      CHECK(thr >= b / 5);
      CHECK(thr <= 2 * b / 5);
    }
  }
  // Keyed lookup: same (v, t) twice gives the same value.
  CHECK(sched.at(3, 2, Rat(1)) == sched.at(3, 2, Rat(1)));
}

TEST_CASE("sequential on F1 pins x = 0.8 for any T") {
  Graph f1 = gen_fixture("F1");
  LPInstance inst = unit_instance(f1);
  for (int T : {0, 1, 5, 40}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      FractionalSolution sol = sequential(inst, T, ThresholdSchedule(seed));
      REQUIRE(sol.x.size() == 1);
      CHECK(sol.x[0] == make_rat(4, 5));
    }
  }
}

TEST_CASE("sequential on the triangle freezes at 0.4") {
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    FractionalSolution sol = sequential(inst, 7, ThresholdSchedule(seed));
    for (const Rat& v : sol.x) CHECK(v == make_rat(2, 5));
  }
}

TEST_CASE("sequential with T = ceil(log2(5m+1)) is 0.2-tight") {
  Rng rng(6021);
  for (int trial = 0; trial < 8; ++trial) {
    Graph g = gen_gnp(40, 0.15, 1, rng.next());
    if (g.edge_count() == 0) continue;
    BudgetVector b = gen_budgets(40, BudgetKind::Uniform, 3, rng.next());
    LPInstance inst = LPInstance::unit(g, b);
    int T = ceil_log2_int(5LL * g.edge_count() + 1);
    FractionalSolution sol = sequential(inst, T, ThresholdSchedule(rng.next()));
    TightnessReport rep = loose_sets(inst, sol.x, make_rat(1, 5));
    CHECK(rep.tight());
    CHECK(recheck_tightness(inst, sol.x, make_rat(1, 5)));
  }
}

TEST_CASE("sequential invariants: feasibility, growth cap, loose-edge decay") {
  Rng rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = gen_gnp(25, 0.25, 1, rng.next());
    // Mix of integral and fractional budgets/caps, including b = 0 vertices.
    std::vector<Rat> b(25), r(static_cast<std::size_t>(g.edge_count()));
    for (auto& v : b) v = make_rat(static_cast<long long>(rng.below(7)), 2);  // 0 .. 3
    for (auto& v : r) v = make_rat(1 + static_cast<long long>(rng.below(4)), 2);
    LPInstance inst = LPInstance::with_caps(g, std::move(b), std::move(r));
    int T = 9;
    FractionalSolution sol = sequential(inst, T, ThresholdSchedule(rng.next()), true);
    REQUIRE(sol.trace.has_value());
    const SolveTrace& trace = *sol.trace;
    for (std::size_t t = 0; t < trace.x_by_round.size(); ++t) {
      const auto& xt = trace.x_by_round[t];
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        CHECK(xt[static_cast<std::size_t>(e)] >= 0);
        CHECK(xt[static_cast<std::size_t>(e)] <= inst.r[static_cast<std::size_t>(e)]);
        // x_{e,t} <= x_{e,0} * 2^t, exactly.
        CHECK(xt[static_cast<std::size_t>(e)] <=
              trace.x_by_round[0][static_cast<std::size_t>(e)] * (Int(1) << t));
      }
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Rat sum = 0;
        for (EdgeId e : g.incident(v)) sum += xt[static_cast<std::size_t>(e)];
        CHECK(sum <= make_rat(4, 5) * inst.b[static_cast<std::size_t>(v)]);
      }
    }
    // |E^loose(x, 0.2)| <= 5m / 2^T for every threshold realization.
    TightnessReport rep = loose_sets(inst, sol.x, make_rat(1, 5));
    CHECK(Rat(static_cast<long long>(rep.e_loose.size())) <=
          Rat(Int(5) * g.edge_count(), Int(1) << T));
  }
}

TEST_CASE("one_round_mpc with avg degree <= 4 returns the filtered initialization") {
  // T = 0, so the output is x_{.,0}, which the filter leaves untouched.
  Graph g = gen_path(6);
  LPInstance inst = unit_instance(g);
  MachineCluster cluster = make_cluster(g, 5);
  FractionalSolution sol = one_round_mpc(inst, cluster);
  ThresholdSchedule unused(0);
  FractionalSolution ideal = sequential(inst, 0, unused);
  CHECK(sol.x == ideal.x);
  CHECK(sol.rounds == 0);
  CHECK(cluster.log().rounds_executed > 0);
}

TEST_CASE("one_round_mpc is deterministic for a fixed cluster seed") {
  Graph g = gen_gnp(60, 0.3, 1, 8);
  LPInstance inst = unit_instance(g, 2);
  OneRoundOptions opts;
  opts.rounds_override = 3;
  MachineCluster c1 = make_cluster(g, 42);
  MachineCluster c2 = make_cluster(g, 42);
  FractionalSolution s1 = one_round_mpc(inst, c1, opts);
  FractionalSolution s2 = one_round_mpc(inst, c2, opts);
  CHECK(s1.x == s2.x);

  ClusterConfig cfg8;
  cfg8.seed = 42;
  cfg8.threads = 8;
  MachineCluster c8(cfg8, g.vertex_count(), g.edge_count());
  FractionalSolution s8 = one_round_mpc(inst, c8, opts);
  CHECK(s8.x == s1.x);
}

TEST_CASE("one_round_mpc output is always feasible and growth-capped") {
  Rng rng(4242);
  for (int trial = 0; trial < 6; ++trial) {
    Graph g = gen_gnp(50, 0.5, 1, rng.next());
    BudgetVector b = gen_budgets(50, BudgetKind::Uniform, 2, rng.next());
    LPInstance inst = LPInstance::unit(g, b);
    MachineCluster cluster = make_cluster(g, rng.next());
    OneRoundOptions opts;
    opts.rounds_override = 4;  // stress the estimate-driven rounds
    opts.keep_trace = true;
    FractionalSolution sol = one_round_mpc(inst, cluster, opts);
    std::vector<Rat> sums(50, Rat(0));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      CHECK(sol.x[static_cast<std::size_t>(e)] >= 0);
      CHECK(sol.x[static_cast<std::size_t>(e)] <= 1);
      // Growth cap against the initialization trace.
      CHECK(sol.trace->x_by_round[4][static_cast<std::size_t>(e)] <=
            sol.trace->x_by_round[0][static_cast<std::size_t>(e)] * 16);
      sums[static_cast<std::size_t>(g.edge(e).u)] += sol.x[static_cast<std::size_t>(e)];
      sums[static_cast<std::size_t>(g.edge(e).v)] += sol.x[static_cast<std::size_t>(e)];
    }
    for (VertexId v = 0; v < 50; ++v) CHECK(sums[static_cast<std::size_t>(v)] <= b.at(v));
  }
}

TEST_CASE("coupling: literal round count makes the processes agree exactly") {
  // At desk scale T = floor(log2(N)/1000) = 0, so a coupled pair of runs has
  // identical vertex sums (the compressed process outputs x_{.,0} filtered,
  // and the filter is idle under primal feasibility).
  Graph g = gen_gnp(300, 0.05, 1, 99);
  LPInstance inst = unit_instance(g);
  ThresholdSchedule shared(1234);
  MachineCluster cluster = make_cluster(g, 77);
  OneRoundOptions opts;
  opts.thresholds = &shared;
  FractionalSolution approx = one_round_mpc(inst, cluster, opts);
  FractionalSolution ideal = sequential(inst, 0, shared);
  CHECK(approx.x == ideal.x);
}

TEST_CASE("full_mpc terminates on the fixtures") {
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  MachineCluster cluster = make_cluster(f2, 3);
  FullMpcResult res = full_mpc(inst, cluster);
  CHECK(res.iterations == 1);
  for (const Rat& v : res.solution.x) CHECK(v == make_rat(2, 5));
  Rat total = 0;
  for (const Rat& v : res.solution.x) total += v;
  CHECK(total == make_rat(6, 5));
  CHECK(loose_sets(inst, res.solution.x, make_rat(1, 20)).tight());

  Graph empty = Graph::from_edges(4, {});
  LPInstance einst = unit_instance(empty);
  MachineCluster ecluster = make_cluster(empty, 3);
  FullMpcResult eres = full_mpc(einst, ecluster);
  CHECK(eres.iterations == 0);
}

TEST_CASE("full_mpc outputs are 0.05-tight, feasible, and certified") {
  Rng rng(515);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = gen_gnp(80, 0.2, 1, rng.next());
    BudgetVector b = gen_budgets(80, BudgetKind::Uniform, 3, rng.next());
    LPInstance inst = LPInstance::unit(g, b);
    MachineCluster cluster = make_cluster(g, rng.next());
    FullMpcResult res = full_mpc(inst, cluster);
    TightnessReport rep = loose_sets(inst, res.solution.x, make_rat(1, 20));
    CHECK(rep.tight());
    DualCertificate cert = dual_certificate(inst, res.solution.x, make_rat(1, 20));
    CHECK(3 * cert.primal_value >= make_rat(1, 20) * cert.dual_value);
  }
}

TEST_CASE("full_mpc via the compressed path accumulates monotonically") {
  Rng rng(808);
  Graph g = gen_gnp(120, 0.15, 1, rng.next());
  BudgetVector b = gen_budgets(120, BudgetKind::Uniform, 2, rng.next());
  LPInstance inst = LPInstance::unit(g, b);
  MachineCluster cluster = make_cluster(g, rng.next());
  FullMpcConfig cfg;
  cfg.compressed_path_threshold = 0;  // force the round-compressed branch
  FullMpcResult res = full_mpc(inst, cluster, cfg);
  CHECK(res.iterations >= 1);
  CHECK(loose_sets(inst, res.solution.x, make_rat(1, 20)).tight());
  std::vector<Rat> sums(120, Rat(0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    CHECK(res.solution.x[static_cast<std::size_t>(e)] >= 0);
    CHECK(res.solution.x[static_cast<std::size_t>(e)] <= 1);
    sums[static_cast<std::size_t>(g.edge(e).u)] += res.solution.x[static_cast<std::size_t>(e)];
    sums[static_cast<std::size_t>(g.edge(e).v)] += res.solution.x[static_cast<std::size_t>(e)];
  }
  for (VertexId v = 0; v < 120; ++v) CHECK(sums[static_cast<std::size_t>(v)] <= b.at(v));
}

TEST_CASE("dual certificate on the triangle") {
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  std::vector<Rat> x(3, make_rat(2, 5));
  DualCertificate cert = dual_certificate(inst, x, make_rat(1, 5));
  CHECK(cert.y == std::vector<char>{1, 1, 1});
  CHECK(cert.z == std::vector<char>{0, 0, 0});
  CHECK(cert.dual_value == 3);
  CHECK(cert.primal_value == make_rat(6, 5));
  // 1.2 >= (0.2/3) * 3 = 0.2.
  CHECK(cert.primal_value >= make_rat(1, 5) / 3 * cert.dual_value);
}

TEST_CASE("dual certificate rejects degenerate alpha and non-tight x") {
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  std::vector<Rat> zero(3, Rat(0));
  CHECK_THROWS_AS(dual_certificate(inst, zero, Rat(0)), InvalidInput);
  CHECK_THROWS_WITH_AS(dual_certificate(inst, zero, make_rat(1, 20)),
                       doctest::Contains("not actually"), InvalidInput);
}

TEST_CASE("rounding: all-zero x yields the empty matching") {
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  std::vector<Rat> zero(3, Rat(0));
  Rng rng(1);
  CHECK(round_to_integral(inst, zero, rng).size() == 0);
}

TEST_CASE("rounding on the triangle matches the enumerated expectation") {
  // Exact enumeration of the 2^3 sampling outcomes with p = 0.1 per edge and
  // the drop rule at b = 1 gives E|M| = 3 * 0.1 * 0.9 * 0.9 = 0.243.
  Graph f2 = gen_fixture("F2");
  LPInstance inst = unit_instance(f2);
  std::vector<Rat> x(3, make_rat(2, 5));
  const int trials = 20000;
  Rng rng(31337);
  std::int64_t total = 0;
  for (int i = 0; i < trials; ++i) total += round_to_integral(inst, x, rng).size();
  double mean = static_cast<double>(total) / trials;
  // Var(|M|) = 0.2247 per trial; 3 sigma of the mean at 2e4 trials ~ 0.0101.
  CHECK(mean == doctest::Approx(0.243).epsilon(0.05));
}

TEST_CASE("rounding keeps a quarter of the mass in expectation (Monte Carlo)") {
  Rng rng(99);
  Graph g = gen_gnp(30, 0.3, 1, 4);
  BudgetVector b = gen_budgets(30, BudgetKind::Uniform, 2, 5);
  LPInstance inst = LPInstance::unit(g, b);
  MachineCluster cluster = make_cluster(g, 6);
  FullMpcResult res = full_mpc(inst, cluster);
  Rat sum_x = 0;
  for (const Rat& v : res.solution.x) sum_x += v;
  const int trials = 4000;
  std::int64_t total = 0;
  for (int i = 0; i < trials; ++i) total += round_to_integral(inst, res.solution.x, rng).size();
  double mean = static_cast<double>(total) / trials;
  CHECK(mean >= to_double(sum_x) / 64.0);
}

TEST_CASE("constant approximation on F1 follows the Bernoulli rate") {
  // Each repetition matches the single edge with probability exactly
  // x/4 = 0.2, so R repetitions succeed with probability 1 - 0.8^R.
  Graph f1 = gen_fixture("F1");
  BudgetVector b = BudgetVector::constant(2, 1);
  ConstantApproxConfig cfg;
  cfg.repetitions = 10;
  int hits = 0;
  const int seeds = 1500;
  for (int s = 0; s < seeds; ++s) {
    MachineCluster cluster = make_cluster(f1, static_cast<std::uint64_t>(s));
    if (constant_approx_bmatching(f1, b, cluster, cfg).size() == 1) ++hits;
  }
  double expect = 1.0 - std::pow(0.8, 10);  // 0.8926
  double sigma = std::sqrt(expect * (1 - expect) / seeds);
  CHECK(std::abs(static_cast<double>(hits) / seeds - expect) <= 3 * sigma);
}

TEST_CASE("constant approximation never falls below OPT/100 on oracle instances") {
  Rng rng(2025);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = gen_gnp(9, 0.5, 1, rng.next());
    if (g.edge_count() == 0 || g.edge_count() > 24) continue;
    BudgetVector b = gen_budgets(9, BudgetKind::Uniform, 3, rng.next());
    OracleResult opt = exact_max_bmatching(g, b, false);
    if (opt.value == 0) continue;
    MachineCluster cluster = make_cluster(g, rng.next());
    BMatching m = constant_approx_bmatching(g, b, cluster);
    CHECK(validate_bmatching(g, b, m.edge_ids()).ok());
    CHECK(100 * Rat(m.size()) >= opt.value);
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("empty graph corner cases") {
  Graph empty = Graph::from_edges(0, {});
  LPInstance inst = LPInstance::with_caps(empty, {}, {});
  MachineCluster cluster = make_cluster(empty, 1);
  CHECK(one_round_mpc(inst, cluster).x.empty());
  BMatching m = constant_approx_bmatching(empty, BudgetVector(), cluster);
  CHECK(m.size() == 0);
}
