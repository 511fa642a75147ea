#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sand/graph.hpp"

namespace sand {

// Per-node combinatorial normalizers. Each one is the exact number of
// selection paths of one sampler, so the sampler biases are small integers
// divided by one of these.
struct NodeLocalStats {
  std::uint64_t degree = 0;
  // d(d-1)/2: unordered neighbor pairs.
  std::uint64_t neighbor_pairs = 0;
  // sum over u in N(v) of (d_u - 1): paths v-u-w.
  std::uint64_t two_paths = 0;
  // (d - 1) * two_paths.
  std::uint64_t path_plus_neighbor = 0;
  // sum over u in N(v) of (d_u - 1)(d_u - 2)/2.
  std::uint64_t forks = 0;
  // sum over u in N(v) of (two_paths(u) - d + 1): walks v-u-w-r, w != v, r != u.
  std::uint64_t three_paths = 0;
  // d(d-1)(d-2)/6: unordered neighbor triples.
  std::uint64_t neighbor_triples = 0;

  // Prefix sums over neighbors(v) of the weights d_u - 1, (d_u - 1)(d_u - 2)/2
  // and two_paths(u) - d + 1. Last entries equal two_paths, forks, three_paths.
  std::vector<std::uint64_t> acc_two_paths;
  std::vector<std::uint64_t> acc_forks;
  std::vector<std::uint64_t> acc_three_paths;
};

NodeLocalStats node_stats(const Graph& g, NodeId v);

// Prefix sums of d_u - 1 over neighbors(v).
std::vector<std::uint64_t> two_path_prefix(const Graph& g, NodeId v);

// Lazily computed, insert-once cache of per-node statistics. Lookups are
// lock-free; concurrent first requests for the same node may both compute,
// and exactly one result is published.
class StatsCache {
 public:
  explicit StatsCache(const Graph& g);
  explicit StatsCache(const Graph&&) = delete;  // keeps a pointer to the graph
  ~StatsCache();
  StatsCache(const StatsCache&) = delete;
  StatsCache& operator=(const StatsCache&) = delete;

  const Graph& graph() const { return *graph_; }
  const NodeLocalStats& stats(NodeId v) const;
  std::span<const std::uint64_t> two_path_acc(NodeId v) const;

 private:
  const Graph* graph_;
  mutable std::unique_ptr<std::atomic<const NodeLocalStats*>[]> full_;
  mutable std::unique_ptr<std::atomic<const std::vector<std::uint64_t>*>[]> alpha_;
};

}  // namespace sand
