#include "bmatch/mpc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace bmatch {

MachineCluster::MachineCluster(ClusterConfig cfg, VertexId n, EdgeId m) : cfg_(cfg) {
  check(cfg_.machines >= 1, "cluster needs at least one machine");
  check(cfg_.local_mem_factor > 0, "local_mem_factor must be positive");
  double lg = std::log2(std::max<double>(n, 2));
  double words = cfg_.local_mem_factor * static_cast<double>(n) * std::ceil(lg) * std::ceil(lg);
  std::size_t input_words = static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
  // Model requirement: machines * S >= |V| + |E|.
  std::size_t floor_words = (input_words + cfg_.machines - 1) / cfg_.machines;
  local_words_ = std::max<std::size_t>({static_cast<std::size_t>(words), floor_words, 64});
}

void MachineCluster::charge_resident(int machine, std::size_t words) {
  log_.peak_resident = std::max(log_.peak_resident, words);
  if (words > local_words_) {
    log_.memory_violation = true;
    log_.violations.push_back("machine " + std::to_string(machine) + " resident " +
                              std::to_string(words) + " words > S=" +
                              std::to_string(local_words_));
  }
}

void MachineCluster::charge_traffic(int machine, std::size_t sent, std::size_t received) {
  log_.peak_sent = std::max(log_.peak_sent, sent);
  log_.peak_received = std::max(log_.peak_received, received);
  if (sent > local_words_ || received > local_words_) {
    log_.memory_violation = true;
    std::string what = "machine " + std::to_string(machine) + " traffic sent=" +
                       std::to_string(sent) + " recv=" + std::to_string(received) +
                       " words > S=" + std::to_string(local_words_);
    log_.violations.push_back(what);
    throw ModelViolation(what);
  }
}

VertexPartition partition_vertices(const Graph& g, int machines, MachineCluster& cluster,
                                   std::uint64_t partition_seed) {
  check(machines >= 1, "partition needs at least one machine");
  VertexPartition part;
  part.machine_count = machines;
  part.machine_of.resize(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    // Per-vertex derived stream: assignment is independent of traversal order.
    part.machine_of[static_cast<std::size_t>(v)] =
        static_cast<std::int32_t>(Rng(mix64(partition_seed, 0x7a57ull, static_cast<std::uint64_t>(v)))
                                      .below(static_cast<std::uint64_t>(machines)));
  }
  part.local_edges.assign(static_cast<std::size_t>(machines), {});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    std::int32_t mu = part.machine_of[static_cast<std::size_t>(ed.u)];
    if (mu == part.machine_of[static_cast<std::size_t>(ed.v)]) {
      part.local_edges[static_cast<std::size_t>(mu)].push_back(e);
    }
  }
  cluster.charge_rounds(cluster.config().partition_round_cost);
  std::vector<std::size_t> vertices_on(static_cast<std::size_t>(machines), 0);
  for (std::int32_t mi : part.machine_of) ++vertices_on[static_cast<std::size_t>(mi)];
  for (int i = 0; i < machines; ++i) {
    cluster.charge_resident(i, vertices_on[static_cast<std::size_t>(i)] +
                                   part.local_edges[static_cast<std::size_t>(i)].size());
  }
  return part;
}

RoundLog run_machine_rounds(MachineCluster& cluster, const std::vector<MachineStep>& programs,
                            int max_rounds) {
  int machines = static_cast<int>(programs.size());
  std::vector<std::vector<Message>> inboxes(programs.size());
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<std::vector<Message>> outs(programs.size());
    parallel_for_index(machines, cluster.threads(), [&](std::int64_t i) {
      outs[static_cast<std::size_t>(i)] =
          programs[static_cast<std::size_t>(i)](static_cast<int>(i), round,
                                                inboxes[static_cast<std::size_t>(i)]);
    });
    bool any = false;
    for (const auto& o : outs) {
      if (!o.empty()) {
        any = true;
        break;
      }
    }
    if (!any) break;
    cluster.charge_rounds(1);
    std::vector<std::vector<Message>> next(programs.size());
    std::vector<std::size_t> sent(programs.size(), 0), received(programs.size(), 0);
    // Deterministic delivery: sender order, then send order within a sender.
    for (int from = 0; from < machines; ++from) {
      for (Message& msg : outs[static_cast<std::size_t>(from)]) {
        check(msg.to >= 0 && msg.to < machines, "message addressed to unknown machine");
        sent[static_cast<std::size_t>(from)] += msg.payload.size();
        received[static_cast<std::size_t>(msg.to)] += msg.payload.size();
        next[static_cast<std::size_t>(msg.to)].push_back(std::move(msg));
      }
    }
    for (int i = 0; i < machines; ++i) {
      cluster.charge_traffic(i, sent[static_cast<std::size_t>(i)],
                             received[static_cast<std::size_t>(i)]);
    }
    inboxes = std::move(next);
  }
  return cluster.log();
}

void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::int64_t> cursor{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::int64_t i = cursor.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bmatch
