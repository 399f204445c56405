#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bmatch/graph.hpp"
#include "bmatch/matching.hpp"
#include "bmatch/mpc.hpp"
#include "bmatch/rng.hpp"

namespace bmatch {

// max sum x_e  s.t.  sum_{e in E(v)} x_e <= b_v,  0 <= x_e <= r_e.
// b and r may be arbitrary non-negative rationals; the b-matching pipeline
// uses integral b and r = 1.
struct LPInstance {
  const Graph* g = nullptr;
  std::vector<Rat> b;
  std::vector<Rat> r;

  static LPInstance unit(const Graph& g, const BudgetVector& budgets);
  static LPInstance with_caps(const Graph& g, std::vector<Rat> b, std::vector<Rat> r);
};

struct TightnessReport {
  Rat alpha;
  std::vector<VertexId> v_loose;
  std::vector<EdgeId> e_loose;
  bool tight() const { return e_loose.empty(); }
};

// Random per-(vertex, round) thresholds, uniform over [0.2 b_v, 0.4 b_v],
// materialized as b_v * (2^64 + u) / (5 * 2^64) with u a derived 64-bit draw.
// Keyed lookup (not sequential draws) lets the idealized and approximate
// processes share the exact same realization.
class ThresholdSchedule {
 public:
  explicit ThresholdSchedule(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t raw(VertexId v, int t) const {
    return mix64(seed_, 0x7472e5ull, static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(t));
  }
  Rat at(VertexId v, int t, const Rat& b_v) const;

 private:
  std::uint64_t seed_;
};

// Optional per-round trace for coupling tests (small instances only).
struct SolveTrace {
  std::vector<std::vector<Rat>> x_by_round;      // x_{e,t}, t = 0..T
  std::vector<std::vector<char>> v_active;       // V^active_t, t = 0..T
  std::vector<std::vector<char>> e_active;       // E^active_t, t = 1..T
};

struct FractionalSolution {
  std::vector<Rat> x;
  int rounds = 0;  // T actually simulated before values froze
  std::optional<SolveTrace> trace;
};

TightnessReport loose_sets(const LPInstance& inst, const std::vector<Rat>& x, const Rat& alpha);

// Idealized process: T rounds of threshold-gated doubling, from
// x_{e,0} = min(r_e, q_u, q_v) with q_v = 0.8 b_v / max(deg(v), avg_deg).
FractionalSolution sequential(const LPInstance& inst, int T, const ThresholdSchedule& thresholds,
                              bool keep_trace = false);

struct OneRoundOptions {
  // Shared thresholds for coupled runs; defaults to a schedule derived from
  // the cluster seed.
  const ThresholdSchedule* thresholds = nullptr;
  // Overrides T = floor(log2(N)/1000) for statistical stress tests; -1 = spec.
  int rounds_override = -1;
  std::uint64_t salt = 0;  // separates repeated invocations on one cluster
  bool keep_trace = false;
};

// Round-compressed approximation: random partition over N = ceil(sqrt(avg_deg))
// machines, local threshold-gated doubling using N-scaled local estimates, and
// a final feasibility filter that zeroes all edges at oversubscribed vertices.
FractionalSolution one_round_mpc(const LPInstance& inst, MachineCluster& cluster,
                                 const OneRoundOptions& opts = {});

struct FullMpcConfig {
  // Edges >= this run the compressed path; fewer run single-machine
  // sequential with T = ceil(100 log2 n). -1 = n * ceil(log2 n)^10.
  std::int64_t compressed_path_threshold = -1;
  int iteration_cap = -1;  // -1 = 10 * ceil(log2 log2 avg_deg) + 20
  std::uint64_t salt = 0;
};

struct FullMpcResult {
  FractionalSolution solution;
  int iterations = 0;
};

// Alternates degree-reduction invocations until E^loose(x, 0.05) is empty.
// Throws NonConvergence past the iteration cap.
FullMpcResult full_mpc(const LPInstance& inst, MachineCluster& cluster,
                       const FullMpcConfig& cfg = {});

struct DualCertificate {
  std::vector<char> y;  // per vertex
  std::vector<char> z;  // per edge
  Rat dual_value;       // sum b_v y_v + sum r_e z_e
  Rat primal_value;     // sum x_e
};

// Builds the proof's 0/1 dual witness from an alpha-tight x and verifies both
// dual feasibility and primal >= (alpha/3) * dual, in exact arithmetic.
// Throws InvalidInput if x is not actually alpha-tight/feasible.
DualCertificate dual_certificate(const LPInstance& inst, const std::vector<Rat>& x,
                                 const Rat& alpha);

// Requires r = 1 and integral b. Samples each edge with probability x_e / 4
// and keeps a sampled edge iff neither endpoint has more than b_v sampled
// incident edges.
BMatching round_to_integral(const LPInstance& inst, const std::vector<Rat>& x, Rng& rng);

struct ConstantApproxConfig {
  int repetitions = -1;  // -1 = max(1, ceil(log2 n))
  std::uint64_t salt = 0;
  FullMpcConfig full_mpc;
};

// full_mpc + rounding, repeated independently; returns the largest result.
// Individual repetitions that fail to converge are skipped; if all fail the
// last error propagates.
BMatching constant_approx_bmatching(const Graph& g, const BudgetVector& b, MachineCluster& cluster,
                                    const ConstantApproxConfig& cfg = {});

}  // namespace bmatch
