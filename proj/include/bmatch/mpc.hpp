#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmatch/errors.hpp"
#include "bmatch/graph.hpp"
#include "bmatch/rng.hpp"

namespace bmatch {

// Simulated MPC cluster. A word is one edge/vertex record slot; the polylog
// slack in the near-linear regime is exposed through local_mem_factor
// (S = local_mem_factor * n * ceil(log2 n)^2 words, raised if needed so that
// machines * S covers the input).
struct ClusterConfig {
  int machines = 4;
  double local_mem_factor = 1.0;
  std::uint64_t seed = 0;
  // The underlying O(1)-round protocols are charged as constants.
  int sort_round_cost = 1;
  int prefix_round_cost = 1;
  int search_round_cost = 1;
  int partition_round_cost = 1;
  int threads = 1;  // host threads used to step machines; never affects results
};

struct RoundLog {
  std::int64_t rounds_executed = 0;
  std::size_t peak_resident = 0;
  std::size_t peak_sent = 0;
  std::size_t peak_received = 0;
  bool memory_violation = false;
  std::vector<std::string> violations;
};

class MachineCluster {
 public:
  MachineCluster(ClusterConfig cfg, VertexId n, EdgeId m);

  int machine_count() const { return cfg_.machines; }
  std::size_t local_memory_words() const { return local_words_; }
  std::uint64_t master_seed() const { return cfg_.seed; }
  const ClusterConfig& config() const { return cfg_; }
  int threads() const { return cfg_.threads; }

  void charge_rounds(std::int64_t k) { log_.rounds_executed += k; }

  // Point-in-time resident footprint of one simulated machine. Violations are
  // recorded, not thrown; tests assert on the log.
  void charge_resident(int machine, std::size_t words);

  // Per-round traffic of one machine. Exceeding S here is a hard model error.
  void charge_traffic(int machine, std::size_t sent, std::size_t received);

  Rng rng_stream(std::uint64_t purpose, std::uint64_t a = 0, std::uint64_t b = 0) const {
    return Rng(mix64(cfg_.seed, purpose, a, b));
  }

  RoundLog& log() { return log_; }
  const RoundLog& log() const { return log_; }

 private:
  ClusterConfig cfg_;
  std::size_t local_words_ = 0;
  RoundLog log_;
};

// Random vertex partition across N simulated machines plus the induced local
// edge sets (an edge is local iff both endpoints land on the same machine).
struct VertexPartition {
  int machine_count = 0;
  std::vector<std::int32_t> machine_of;       // per vertex
  std::vector<std::vector<EdgeId>> local_edges;  // per machine, induced edges
};

VertexPartition partition_vertices(const Graph& g, int machines, MachineCluster& cluster,
                                   std::uint64_t partition_seed);

// --- O(1)-round primitives -------------------------------------------------
// These are charged at the configured constant round costs. The protocols
// themselves are standard; only their cost and memory accounting matter here.

template <typename T, typename KeyFn>
std::vector<T> distributed_sort(MachineCluster& cluster, std::vector<T> records, KeyFn key,
                                std::size_t record_words = 1) {
  if (record_words > cluster.local_memory_words()) {
    throw ModelViolation("sort record of " + std::to_string(record_words) +
                         " words exceeds local memory");
  }
  cluster.charge_rounds(cluster.config().sort_round_cost);
  std::size_t share =
      (records.size() * record_words + cluster.machine_count() - 1) / cluster.machine_count();
  for (int i = 0; i < cluster.machine_count(); ++i) cluster.charge_resident(i, share);
  std::stable_sort(records.begin(), records.end(),
                   [&](const T& a, const T& b) { return key(a) < key(b); });
  return records;
}

template <typename T>
std::vector<T> prefix_sum(MachineCluster& cluster, const std::vector<T>& values) {
  cluster.charge_rounds(cluster.config().prefix_round_cost);
  std::size_t share = (values.size() + cluster.machine_count() - 1) / cluster.machine_count();
  for (int i = 0; i < cluster.machine_count(); ++i) cluster.charge_resident(i, share);
  std::vector<T> out(values.size());
  T running{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = running;
    running += values[i];
  }
  return out;
}

// Every query key receives the payload of the special record with that key;
// absent keys yield nullopt. Duplicate special keys are invalid input.
template <typename K, typename V>
std::vector<std::optional<V>> search_tree_broadcast(MachineCluster& cluster,
                                                    std::vector<std::pair<K, V>> specials,
                                                    const std::vector<K>& queries) {
  cluster.charge_rounds(cluster.config().search_round_cost);
  std::size_t share = (specials.size() + queries.size() + cluster.machine_count() - 1) /
                      cluster.machine_count();
  for (int i = 0; i < cluster.machine_count(); ++i) cluster.charge_resident(i, share);
  std::sort(specials.begin(), specials.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < specials.size(); ++i) {
    check(specials[i - 1].first != specials[i].first, "duplicate special record key");
  }
  std::vector<std::optional<V>> out;
  out.reserve(queries.size());
  for (const K& q : queries) {
    auto it = std::lower_bound(specials.begin(), specials.end(), q,
                               [](const auto& rec, const K& k) { return rec.first < k; });
    if (it != specials.end() && it->first == q) {
      out.emplace_back(it->second);
    } else {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

// --- generic machine-step harness -------------------------------------------

struct Message {
  int to = 0;
  std::vector<std::uint64_t> payload;
};

// Called once per round per machine with the messages delivered to it.
// A round only counts (and only continues the run) if someone sent something.
using MachineStep =
    std::function<std::vector<Message>(int machine, int round, const std::vector<Message>& inbox)>;

RoundLog run_machine_rounds(MachineCluster& cluster, const std::vector<MachineStep>& programs,
                            int max_rounds);

// Deterministic helper: runs fn(0..count-1), optionally on several host
// threads. Output ordering is the caller's responsibility (index-addressed).
void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn);

}  // namespace bmatch
