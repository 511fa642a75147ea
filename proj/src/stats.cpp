#include "sand/stats.hpp"

#include "sand/checked.hpp"

namespace sand {

namespace {

std::uint64_t choose2(std::uint64_t n) {
  return n < 2 ? 0 : checked_mul(n, n - 1) / 2;
}

std::uint64_t choose3(std::uint64_t n) {
  if (n < 3) return 0;
  // n(n-1) is even, so halve before the last multiply to delay overflow.
  return checked_mul(checked_mul(n, n - 1) / 2, n - 2) / 3;
}

std::uint64_t two_paths_of(const Graph& g, NodeId v) {
  std::uint64_t total = 0;
  for (NodeId u : g.neighbors(v)) total = checked_add(total, g.degree(u) - 1);
  return total;
}

}  // namespace

std::vector<std::uint64_t> two_path_prefix(const Graph& g, NodeId v) {
  g.check_node(v);
  std::vector<std::uint64_t> acc;
  acc.reserve(g.degree(v));
  std::uint64_t running = 0;
  for (NodeId u : g.neighbors(v)) {
    running = checked_add(running, g.degree(u) - 1);
    acc.push_back(running);
  }
  return acc;
}

NodeLocalStats node_stats(const Graph& g, NodeId v) {
  g.check_node(v);
  NodeLocalStats s;
  const std::uint64_t d = g.degree(v);
  s.degree = d;
  s.neighbor_pairs = choose2(d);
  s.neighbor_triples = choose3(d);

  auto nbrs = g.neighbors(v);
  s.acc_two_paths.reserve(d);
  s.acc_forks.reserve(d);
  s.acc_three_paths.reserve(d);
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::uint64_t gamma = 0;
  for (NodeId u : nbrs) {
    const std::uint64_t du = g.degree(u);
    alpha = checked_add(alpha, du - 1);
    beta = checked_add(beta, choose2(du - 1));
    // two_paths(u) counts v itself with weight d - 1; dropping it leaves
    // the walks u-w-r with w != v.
    gamma = checked_add(gamma, checked_sub(two_paths_of(g, u), d - 1));
    s.acc_two_paths.push_back(alpha);
    s.acc_forks.push_back(beta);
    s.acc_three_paths.push_back(gamma);
  }
  s.two_paths = alpha;
  s.forks = beta;
  s.three_paths = gamma;
  s.path_plus_neighbor = d == 0 ? 0 : checked_mul(d - 1, alpha);
  return s;
}

StatsCache::StatsCache(const Graph& g)
    : graph_(&g),
      full_(new std::atomic<const NodeLocalStats*>[g.node_count()]),
      alpha_(new std::atomic<const std::vector<std::uint64_t>*>[g.node_count()]) {
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    full_[i].store(nullptr, std::memory_order_relaxed);
    alpha_[i].store(nullptr, std::memory_order_relaxed);
  }
}

StatsCache::~StatsCache() {
  for (std::size_t i = 0; i < graph_->node_count(); ++i) {
    delete full_[i].load(std::memory_order_relaxed);
    delete alpha_[i].load(std::memory_order_relaxed);
  }
}

const NodeLocalStats& StatsCache::stats(NodeId v) const {
  graph_->check_node(v);
  const NodeLocalStats* cur = full_[v].load(std::memory_order_acquire);
  if (cur != nullptr) return *cur;
  auto fresh = std::make_unique<NodeLocalStats>(node_stats(*graph_, v));
  if (full_[v].compare_exchange_strong(cur, fresh.get(), std::memory_order_acq_rel)) {
    return *fresh.release();
  }
  return *cur;
}

std::span<const std::uint64_t> StatsCache::two_path_acc(NodeId v) const {
  const auto* cur = alpha_[v].load(std::memory_order_acquire);
  if (cur != nullptr) return *cur;
  auto fresh = std::make_unique<std::vector<std::uint64_t>>(two_path_prefix(*graph_, v));
  if (alpha_[v].compare_exchange_strong(cur, fresh.get(), std::memory_order_acq_rel)) {
    return *fresh.release();
  }
  return *cur;
}

}  // namespace sand
