#include "bmatch/fractional.hpp"

#include <algorithm>
#include <cmath>

#include "bmatch/errors.hpp"

namespace bmatch {

namespace {

// q_v = 0.8 b_v / max(deg(v), avg_deg); zero for isolated vertices.
std::vector<Rat> initial_vertex_rates(const LPInstance& inst) {
  const Graph& g = *inst.g;
  Rat avg = g.avg_degree();
  std::vector<Rat> q(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Rat denom = std::max(Rat(g.degree(v)), avg);
    if (denom == 0) {
      q[static_cast<std::size_t>(v)] = 0;
    } else {
      q[static_cast<std::size_t>(v)] = make_rat(4, 5) * inst.b[static_cast<std::size_t>(v)] / denom;
    }
  }
  return q;
}

std::vector<Rat> initial_edge_values(const LPInstance& inst, const std::vector<Rat>& q) {
  const Graph& g = *inst.g;
  std::vector<Rat> x0(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    x0[static_cast<std::size_t>(e)] =
        std::min({inst.r[static_cast<std::size_t>(e)], q[static_cast<std::size_t>(ed.u)],
                  q[static_cast<std::size_t>(ed.v)]});
  }
  return x0;
}

std::vector<Rat> incident_sums(const Graph& g, const std::vector<Rat>& x) {
  std::vector<Rat> sums(static_cast<std::size_t>(g.vertex_count()), Rat(0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    sums[static_cast<std::size_t>(g.edge(e).u)] += x[static_cast<std::size_t>(e)];
    sums[static_cast<std::size_t>(g.edge(e).v)] += x[static_cast<std::size_t>(e)];
  }
  return sums;
}

// Smallest N >= 1 with N^2 >= avg_deg, i.e. N^2 * n >= 2m.
int machines_for(const Graph& g) {
  if (g.vertex_count() == 0) return 1;
  Int target = Int(2) * g.edge_count();
  Int n = g.vertex_count();
  int N = 1;
  while (Int(N) * N * n < target) ++N;
  return N;
}

int paper_round_count(int machines) {
  // floor(log2(N) / 1000); integer msb is exact here since the quotient only
  // reaches k at N >= 2^(1000k).
  return floor_log2(Int(machines)) / 1000;
}

}  // namespace

LPInstance LPInstance::unit(const Graph& g, const BudgetVector& budgets) {
  check(budgets.size() == g.vertex_count(), "budget/graph dimension mismatch");
  LPInstance inst;
  inst.g = &g;
  inst.b.reserve(static_cast<std::size_t>(budgets.size()));
  for (VertexId v = 0; v < budgets.size(); ++v) inst.b.emplace_back(budgets.at(v));
  inst.r.assign(static_cast<std::size_t>(g.edge_count()), Rat(1));
  return inst;
}

LPInstance LPInstance::with_caps(const Graph& g, std::vector<Rat> b, std::vector<Rat> r) {
  check(b.size() == static_cast<std::size_t>(g.vertex_count()), "b dimension mismatch");
  check(r.size() == static_cast<std::size_t>(g.edge_count()), "r dimension mismatch");
  for (const Rat& v : b) check(v >= 0, "b must be non-negative");
  for (const Rat& v : r) check(v >= 0, "r must be non-negative");
  LPInstance inst;
  inst.g = &g;
  inst.b = std::move(b);
  inst.r = std::move(r);
  return inst;
}

Rat ThresholdSchedule::at(VertexId v, int t, const Rat& b_v) const {
  // b_v * (2^64 + u) / (5 * 2^64) lies in [0.2 b_v, 0.4 b_v).
  Int num = (Int(1) << 64) + raw(v, t);
  Int den = Int(5) << 64;
  return b_v * Rat(num, den);
}

TightnessReport loose_sets(const LPInstance& inst, const std::vector<Rat>& x, const Rat& alpha) {
  const Graph& g = *inst.g;
  check(x.size() == static_cast<std::size_t>(g.edge_count()), "x dimension mismatch");
  TightnessReport report;
  report.alpha = alpha;
  std::vector<Rat> sums = incident_sums(g, x);
  std::vector<char> loose(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sums[static_cast<std::size_t>(v)] < alpha * inst.b[static_cast<std::size_t>(v)]) {
      loose[static_cast<std::size_t>(v)] = 1;
      report.v_loose.push_back(v);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (loose[static_cast<std::size_t>(ed.u)] && loose[static_cast<std::size_t>(ed.v)] &&
        x[static_cast<std::size_t>(e)] < alpha * inst.r[static_cast<std::size_t>(e)]) {
      report.e_loose.push_back(e);
    }
  }
  return report;
}

FractionalSolution sequential(const LPInstance& inst, int T, const ThresholdSchedule& thresholds,
                              bool keep_trace) {
  const Graph& g = *inst.g;
  check(T >= 0, "T must be non-negative");
  std::vector<Rat> q = initial_vertex_rates(inst);
  std::vector<Rat> x = initial_edge_values(inst, q);
  std::vector<char> v_active(static_cast<std::size_t>(g.vertex_count()), 1);
  std::vector<VertexId> active_list(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) active_list[static_cast<std::size_t>(v)] = v;

  FractionalSolution out;
  if (keep_trace) {
    out.trace.emplace();
    out.trace->x_by_round.push_back(x);
    out.trace->v_active.push_back(v_active);
  }

  std::vector<int> edge_stamp(static_cast<std::size_t>(g.edge_count()), -1);
  int t = 0;
  for (t = 1; t <= T; ++t) {
    // y_{v,t-1} over all incident edges, evaluated for active vertices only.
    std::vector<VertexId> next_list;
    next_list.reserve(active_list.size());
    for (VertexId v : active_list) {
      Rat y = 0;
      for (EdgeId e : g.incident(v)) y += x[static_cast<std::size_t>(e)];
      if (y <= thresholds.at(v, t, inst.b[static_cast<std::size_t>(v)])) {
        next_list.push_back(v);
      } else {
        v_active[static_cast<std::size_t>(v)] = 0;
      }
    }
    active_list = std::move(next_list);

    std::vector<EdgeId> doubled;
    for (VertexId v : active_list) {
      for (EdgeId e : g.incident(v)) {
        if (edge_stamp[static_cast<std::size_t>(e)] == t) continue;
        edge_stamp[static_cast<std::size_t>(e)] = t;
        const Edge& ed = g.edge(e);
        if (!v_active[static_cast<std::size_t>(ed.u)] || !v_active[static_cast<std::size_t>(ed.v)])
          continue;
        if (2 * x[static_cast<std::size_t>(e)] <= inst.r[static_cast<std::size_t>(e)]) {
          doubled.push_back(e);
        }
      }
    }
    for (EdgeId e : doubled) x[static_cast<std::size_t>(e)] *= 2;

    if (keep_trace) {
      out.trace->v_active.push_back(v_active);
      std::vector<char> ea(static_cast<std::size_t>(g.edge_count()), 0);
      for (EdgeId e : doubled) ea[static_cast<std::size_t>(e)] = 1;
      out.trace->e_active.push_back(std::move(ea));
      out.trace->x_by_round.push_back(x);
    }

    // Once no edge is active the values are frozen for all later rounds:
    // active vertex sets only shrink and x only changes through active edges.
    if (doubled.empty()) break;
  }
  out.rounds = std::min(t, T);
  out.x = std::move(x);
  return out;
}

FractionalSolution one_round_mpc(const LPInstance& inst, MachineCluster& cluster,
                                 const OneRoundOptions& opts) {
  const Graph& g = *inst.g;
  FractionalSolution out;
  if (g.vertex_count() == 0 || g.edge_count() == 0) {
    out.x.assign(static_cast<std::size_t>(g.edge_count()), Rat(0));
    return out;
  }
  int N = machines_for(g);
  int T = opts.rounds_override >= 0 ? opts.rounds_override : paper_round_count(N);

  ThresholdSchedule local_schedule(mix64(cluster.master_seed(), 0x1d3aull, opts.salt));
  const ThresholdSchedule& thresholds = opts.thresholds ? *opts.thresholds : local_schedule;

  VertexPartition part = partition_vertices(
      g, N, cluster, mix64(cluster.master_seed(), 0xa162ull, opts.salt));

  std::vector<Rat> q = initial_vertex_rates(inst);
  std::vector<Rat> x0 = initial_edge_values(inst, q);

  // deact[v]: last round in which v is active in the approximate process
  // (T if it never deactivates). Computed machine-locally from N-scaled
  // estimates over the machine's induced edges.
  std::vector<int> deact(static_cast<std::size_t>(g.vertex_count()), T);
  std::vector<std::vector<VertexId>> machine_vertices(static_cast<std::size_t>(N));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    machine_vertices[static_cast<std::size_t>(part.machine_of[static_cast<std::size_t>(v)])]
        .push_back(v);
  }

  parallel_for_index(N, cluster.threads(), [&](std::int64_t mi) {
    const auto& verts = machine_vertices[static_cast<std::size_t>(mi)];
    const auto& ledges = part.local_edges[static_cast<std::size_t>(mi)];
    if (T == 0) return;
    std::vector<Rat> lx;
    lx.reserve(ledges.size());
    for (EdgeId e : ledges) lx.push_back(x0[static_cast<std::size_t>(e)]);
    std::vector<char> lactive(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v : verts) lactive[static_cast<std::size_t>(v)] = 1;
    std::vector<std::vector<std::size_t>> local_incident(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = 0; i < ledges.size(); ++i) {
      const Edge& ed = g.edge(ledges[i]);
      local_incident[static_cast<std::size_t>(ed.u)].push_back(i);
      local_incident[static_cast<std::size_t>(ed.v)].push_back(i);
    }
    for (int t = 1; t <= T; ++t) {
      for (VertexId v : verts) {
        if (deact[static_cast<std::size_t>(v)] != T || !lactive[static_cast<std::size_t>(v)])
          continue;
        Rat estimate = 0;
        for (std::size_t i : local_incident[static_cast<std::size_t>(v)]) estimate += lx[i];
        estimate *= N;
        if (!(estimate <= thresholds.at(v, t, inst.b[static_cast<std::size_t>(v)]))) {
          lactive[static_cast<std::size_t>(v)] = 0;
          deact[static_cast<std::size_t>(v)] = t - 1;
        }
      }
      for (std::size_t i = 0; i < ledges.size(); ++i) {
        const Edge& ed = g.edge(ledges[i]);
        if (lactive[static_cast<std::size_t>(ed.u)] && lactive[static_cast<std::size_t>(ed.v)] &&
            2 * lx[i] <= inst.r[static_cast<std::size_t>(ledges[i])]) {
          lx[i] *= 2;
        }
      }
    }
  });

  // Replay the doubling rule per edge from the endpoint deactivation rounds.
  // For local edges this reproduces the machine simulation exactly; for
  // cross-machine edges it is the definition of the approximate process.
  auto value_after = [&](EdgeId e, int rounds) {
    Rat v = x0[static_cast<std::size_t>(e)];
    const Edge& ed = g.edge(e);
    int lim = std::min({rounds, deact[static_cast<std::size_t>(ed.u)],
                        deact[static_cast<std::size_t>(ed.v)]});
    for (int t = 1; t <= lim; ++t) {
      if (2 * v <= inst.r[static_cast<std::size_t>(e)]) {
        v *= 2;
      } else {
        break;
      }
    }
    return v;
  };

  std::vector<Rat> xt(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) xt[static_cast<std::size_t>(e)] = value_after(e, T);

  if (opts.keep_trace) {
    out.trace.emplace();
    for (int t = 0; t <= T; ++t) {
      std::vector<Rat> snapshot(static_cast<std::size_t>(g.edge_count()));
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        snapshot[static_cast<std::size_t>(e)] = value_after(e, t);
      out.trace->x_by_round.push_back(std::move(snapshot));
      std::vector<char> va(static_cast<std::size_t>(g.vertex_count()), 0);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        va[static_cast<std::size_t>(v)] = deact[static_cast<std::size_t>(v)] >= t ? 1 : 0;
      out.trace->v_active.push_back(std::move(va));
    }
  }

  // Final feasibility filter: zero out all edges incident to a vertex whose
  // incident sum exceeds its budget.
  std::vector<Rat> sums = incident_sums(g, xt);
  std::vector<char> bad(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sums[static_cast<std::size_t>(v)] > inst.b[static_cast<std::size_t>(v)])
      bad[static_cast<std::size_t>(v)] = 1;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (bad[static_cast<std::size_t>(ed.u)] || bad[static_cast<std::size_t>(ed.v)]) {
      xt[static_cast<std::size_t>(e)] = 0;
    }
  }

  // Local computation plus one exchange of deactivation rounds and one for
  // the filter sums.
  cluster.charge_rounds(2);
  out.rounds = T;
  out.x = std::move(xt);
  return out;
}

FullMpcResult full_mpc(const LPInstance& inst, MachineCluster& cluster, const FullMpcConfig& cfg) {
  const Graph& g = *inst.g;
  FullMpcResult result;
  result.solution.x.assign(static_cast<std::size_t>(g.edge_count()), Rat(0));
  if (g.edge_count() == 0) return result;

  double n_d = std::max<double>(g.vertex_count(), 2);
  std::int64_t threshold = cfg.compressed_path_threshold;
  if (threshold < 0) {
    double lg = std::ceil(std::log2(n_d));
    double t = static_cast<double>(g.vertex_count()) * std::pow(lg, 10);
    threshold = t > 4e18 ? std::int64_t(4e18) : static_cast<std::int64_t>(t);
  }
  int cap = cfg.iteration_cap;
  if (cap < 0) {
    double dbar = std::max(to_double(g.avg_degree()), 2.0);
    cap = 10 * static_cast<int>(std::ceil(std::log2(std::max(std::log2(dbar), 2.0)))) + 20;
  }

  const Rat alpha = make_rat(1, 20);  // 0.05
  std::vector<Rat>& x = result.solution.x;
  std::vector<Rat> vertex_sums(static_cast<std::size_t>(g.vertex_count()), Rat(0));
  std::vector<EdgeId> active(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) active[static_cast<std::size_t>(e)] = e;

  while (!active.empty()) {
    ++result.iterations;
    if (result.iterations > cap) {
      throw NonConvergence("full_mpc exceeded " + std::to_string(cap) + " iterations with " +
                           std::to_string(active.size()) + " active edges");
    }
    Subgraph sub = induce_edges(g, active);
    std::vector<Rat> b_rem(static_cast<std::size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      b_rem[static_cast<std::size_t>(v)] =
          inst.b[static_cast<std::size_t>(v)] - vertex_sums[static_cast<std::size_t>(v)];
    }
    std::vector<Rat> r_rem(sub.orig.size());
    for (std::size_t i = 0; i < sub.orig.size(); ++i) {
      r_rem[i] = inst.r[static_cast<std::size_t>(sub.orig[i])] -
                 x[static_cast<std::size_t>(sub.orig[i])];
    }
    LPInstance sub_inst = LPInstance::with_caps(sub.graph, std::move(b_rem), std::move(r_rem));

    FractionalSolution part;
    if (static_cast<std::int64_t>(active.size()) >= threshold) {
      OneRoundOptions opts;
      opts.salt = mix64(cfg.salt, static_cast<std::uint64_t>(result.iterations));
      part = one_round_mpc(sub_inst, cluster, opts);
    } else {
      int T = static_cast<int>(std::ceil(100 * std::log2(n_d)));
      ThresholdSchedule sched(mix64(cluster.master_seed(), 0x5e9ull, cfg.salt,
                                    static_cast<std::uint64_t>(result.iterations)));
      part = sequential(sub_inst, T, sched);
      cluster.charge_rounds(1);
      cluster.charge_resident(0, static_cast<std::size_t>(g.vertex_count()) + active.size());
    }

    for (std::size_t i = 0; i < sub.orig.size(); ++i) {
      const Rat& delta = part.x[i];
      if (delta == 0) continue;
      EdgeId e = sub.orig[i];
      x[static_cast<std::size_t>(e)] += delta;
      vertex_sums[static_cast<std::size_t>(g.edge(e).u)] += delta;
      vertex_sums[static_cast<std::size_t>(g.edge(e).v)] += delta;
    }

    std::vector<EdgeId> next;
    next.reserve(active.size());
    for (EdgeId e : active) {
      const Edge& ed = g.edge(e);
      bool u_loose = vertex_sums[static_cast<std::size_t>(ed.u)] <
                     alpha * inst.b[static_cast<std::size_t>(ed.u)];
      bool v_loose = vertex_sums[static_cast<std::size_t>(ed.v)] <
                     alpha * inst.b[static_cast<std::size_t>(ed.v)];
      if (u_loose && v_loose &&
          x[static_cast<std::size_t>(e)] < alpha * inst.r[static_cast<std::size_t>(e)]) {
        next.push_back(e);
      }
    }
    active = std::move(next);
  }
  return result;
}

DualCertificate dual_certificate(const LPInstance& inst, const std::vector<Rat>& x,
                                 const Rat& alpha) {
  const Graph& g = *inst.g;
  check(alpha > 0 && alpha <= 1, "alpha must lie in (0, 1]");
  check(x.size() == static_cast<std::size_t>(g.edge_count()), "x dimension mismatch");
  std::vector<Rat> sums = incident_sums(g, x);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    check(x[static_cast<std::size_t>(e)] >= 0 &&
              x[static_cast<std::size_t>(e)] <= inst.r[static_cast<std::size_t>(e)],
          "x violates an edge cap");
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    check(sums[static_cast<std::size_t>(v)] <= inst.b[static_cast<std::size_t>(v)],
          "x violates a vertex budget");
  }

  DualCertificate cert;
  cert.y.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  cert.z.assign(static_cast<std::size_t>(g.edge_count()), 0);
  cert.dual_value = 0;
  cert.primal_value = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sums[static_cast<std::size_t>(v)] >= alpha * inst.b[static_cast<std::size_t>(v)]) {
      cert.y[static_cast<std::size_t>(v)] = 1;
      cert.dual_value += inst.b[static_cast<std::size_t>(v)];
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    cert.primal_value += x[static_cast<std::size_t>(e)];
    if (x[static_cast<std::size_t>(e)] >= alpha * inst.r[static_cast<std::size_t>(e)]) {
      cert.z[static_cast<std::size_t>(e)] = 1;
      cert.dual_value += inst.r[static_cast<std::size_t>(e)];
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    int cover = cert.y[static_cast<std::size_t>(ed.u)] + cert.y[static_cast<std::size_t>(ed.v)] +
                cert.z[static_cast<std::size_t>(e)];
    if (cover < 1) {
      throw InvalidInput("dual infeasible: x is not actually alpha-tight at edge " +
                         std::to_string(e));
    }
  }
  check(3 * cert.primal_value >= alpha * cert.dual_value,
        "certificate charging bound failed");
  return cert;
}

BMatching round_to_integral(const LPInstance& inst, const std::vector<Rat>& x, Rng& rng) {
  const Graph& g = *inst.g;
  check(x.size() == static_cast<std::size_t>(g.edge_count()), "x dimension mismatch");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    check(inst.r[static_cast<std::size_t>(e)] == 1, "rounding requires r = 1");
    check(x[static_cast<std::size_t>(e)] >= 0 && x[static_cast<std::size_t>(e)] <= 1,
          "x out of range");
  }
  std::vector<Rat> sums = incident_sums(g, x);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    check(denominator(inst.b[static_cast<std::size_t>(v)]) == 1, "rounding requires integral b");
    check(sums[static_cast<std::size_t>(v)] <= inst.b[static_cast<std::size_t>(v)],
          "x violates a vertex budget");
  }

  std::vector<char> sampled(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<Int> count(static_cast<std::size_t>(g.vertex_count()), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (rng.chance(x[static_cast<std::size_t>(e)] / 4)) {
      sampled[static_cast<std::size_t>(e)] = 1;
      ++count[static_cast<std::size_t>(g.edge(e).u)];
      ++count[static_cast<std::size_t>(g.edge(e).v)];
    }
  }
  BMatching m(g);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!sampled[static_cast<std::size_t>(e)]) continue;
    const Edge& ed = g.edge(e);
    if (Rat(count[static_cast<std::size_t>(ed.u)]) <= inst.b[static_cast<std::size_t>(ed.u)] &&
        Rat(count[static_cast<std::size_t>(ed.v)]) <= inst.b[static_cast<std::size_t>(ed.v)]) {
      m.add(g, e);
    }
  }
  return m;
}

BMatching constant_approx_bmatching(const Graph& g, const BudgetVector& b, MachineCluster& cluster,
                                    const ConstantApproxConfig& cfg) {
  int reps = cfg.repetitions > 0
                 ? cfg.repetitions
                 : std::max(1, ceil_log2_int(std::max<long long>(g.vertex_count(), 2)));
  LPInstance inst = LPInstance::unit(g, b);

  std::vector<std::optional<BMatching>> results(static_cast<std::size_t>(reps));
  std::vector<RoundLog> logs(static_cast<std::size_t>(reps));
  std::vector<std::string> errors(static_cast<std::size_t>(reps));
  parallel_for_index(reps, cluster.threads(), [&](std::int64_t rep) {
    ClusterConfig rep_cfg = cluster.config();
    rep_cfg.seed = mix64(cluster.master_seed(), 0xca9bull, cfg.salt, static_cast<std::uint64_t>(rep));
    rep_cfg.threads = 1;
    MachineCluster rep_cluster(rep_cfg, g.vertex_count(), g.edge_count());
    try {
      FullMpcConfig fm = cfg.full_mpc;
      fm.salt = mix64(fm.salt, static_cast<std::uint64_t>(rep));
      FullMpcResult frac = full_mpc(inst, rep_cluster, fm);
      Rng round_rng = derived_rng(rep_cfg.seed, 0x90bdull);
      results[static_cast<std::size_t>(rep)] = round_to_integral(inst, frac.solution.x, round_rng);
    } catch (const NonConvergence& e) {
      errors[static_cast<std::size_t>(rep)] = e.what();
    }
    logs[static_cast<std::size_t>(rep)] = rep_cluster.log();
  });

  for (int rep = 0; rep < reps; ++rep) {
    const RoundLog& rl = logs[static_cast<std::size_t>(rep)];
    cluster.log().rounds_executed += rl.rounds_executed;
    cluster.log().peak_resident = std::max(cluster.log().peak_resident, rl.peak_resident);
    cluster.log().peak_sent = std::max(cluster.log().peak_sent, rl.peak_sent);
    cluster.log().peak_received = std::max(cluster.log().peak_received, rl.peak_received);
    if (rl.memory_violation) cluster.log().memory_violation = true;
  }

  std::optional<BMatching> best;
  for (int rep = 0; rep < reps; ++rep) {
    auto& candidate = results[static_cast<std::size_t>(rep)];
    if (!candidate) continue;
    if (!best || candidate->size() > best->size()) best = std::move(candidate);
  }
  if (!best) {
    for (const auto& err : errors) {
      if (!err.empty()) throw NonConvergence(err);
    }
    best = BMatching(g);  // empty graph / zero repetitions corner
  }
  return *best;
}

}  // namespace bmatch
