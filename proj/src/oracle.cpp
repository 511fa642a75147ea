#include "sand/oracle.hpp"

#include <algorithm>
#include <vector>

#include "sand/checked.hpp"
#include "sand/error.hpp"

namespace sand {

namespace {

bool contains(std::span<const NodeId> xs, NodeId x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Extension step of the classic subgraph enumeration, rooted at members[0].
// A node enters the extension set only through the first member it touches,
// which is what keeps every set unique.
void extend(const Graph& g, std::vector<NodeId>& members, std::vector<NodeId> ext, int k,
            const std::function<void(std::span<const NodeId>)>& emit) {
  if (static_cast<int>(members.size()) == k) {
    emit(members);
    return;
  }
  while (!ext.empty()) {
    const NodeId w = ext.back();
    ext.pop_back();
    std::vector<NodeId> next = ext;
    for (NodeId u : g.neighbors(w)) {
      if (contains(members, u) || contains(ext, u) || u == w) continue;
      bool touches = false;
      for (NodeId m : members) touches = touches || g.has_edge(m, u);
      if (!touches) next.push_back(u);
    }
    members.push_back(w);
    extend(g, members, std::move(next), k, emit);
    members.pop_back();
  }
}

}  // namespace

void enumerate_cises(const Graph& g, NodeId v, int k,
                     const std::function<void(std::span<const NodeId>)>& emit) {
  g.check_node(v);
  if (k < 2 || k > 4) throw Error(ErrorCode::kInvalidArgument, "subgraph size must be 2, 3 or 4");
  std::vector<NodeId> members = {v};
  auto nb = g.neighbors(v);
  extend(g, members, std::vector<NodeId>(nb.begin(), nb.end()), k, emit);
}

std::uint64_t candidate_bound(const NodeLocalStats& s) {
  std::uint64_t b = checked_add(s.neighbor_pairs, s.two_paths);
  b = checked_add(b, s.path_plus_neighbor);
  b = checked_add(b, s.forks);
  b = checked_add(b, s.three_paths);
  return checked_add(b, s.neighbor_triples);
}

OrbitCounts exact_orbit_degrees(const Graph& g, NodeId v, std::uint64_t guard) {
  g.check_node(v);
  const std::uint64_t bound = candidate_bound(node_stats(g, v));
  if (bound > guard) {
    throw Error(ErrorCode::kGuardExceeded,
                "node " + std::to_string(v) + " may belong to " + std::to_string(bound) +
                    " subgraphs, above the oracle guard of " + std::to_string(guard));
  }
  OrbitCounts c;
  c.undirected[0] = g.degree(v);
  if (g.directed()) c.directed3.emplace();
  enumerate_cises(g, v, 3, [&](std::span<const NodeId> s) {
    ++c.undirected[static_cast<std::size_t>(classify_undirected(g, v, s))];
    if (c.directed3) ++(*c.directed3)[static_cast<std::size_t>(classify_directed3(g, v, s).id)];
  });
  enumerate_cises(g, v, 4, [&](std::span<const NodeId> s) {
    ++c.undirected[static_cast<std::size_t>(classify_undirected(g, v, s))];
  });
  return c;
}

IdentityCheck verify_identities(const OrbitCounts& counts, const NodeLocalStats& stats) {
  auto c = [&](int i) { return static_cast<std::int64_t>(counts.undirected[static_cast<std::size_t>(i)]); };
  IdentityCheck r;
  r.pairs = c(2) + c(3) - static_cast<std::int64_t>(stats.neighbor_pairs);
  r.three_paths = 2 * c(3) + c(4) + 2 * c(8) + 2 * c(9) + c(10) + 4 * c(12) + 2 * c(13) +
                  6 * c(14) - static_cast<std::int64_t>(stats.three_paths);
  r.triples = c(7) + c(11) + c(13) + c(14) - static_cast<std::int64_t>(stats.neighbor_triples);
  if (counts.directed3) {
    for (int i = 1; i <= kDirectedOrbits; ++i) {
      r.directed[static_cast<std::size_t>(unorbit(i) - 1)] +=
          static_cast<std::int64_t>((*counts.directed3)[static_cast<std::size_t>(i)]);
    }
    for (int j = 1; j <= 3; ++j) r.directed[static_cast<std::size_t>(j - 1)] -= c(j);
  }
  return r;
}

OrbitDegreeReport exact_report(const OrbitCounts& counts, bool directed3) {
  OrbitDegreeReport r;
  if (directed3) {
    if (!counts.directed3) throw Error(ErrorCode::kMode, "counts carry no directed orbits");
    r.mode = "directed3";
    for (int i = 1; i <= kDirectedOrbits; ++i) {
      r.orbits.push_back(
          {i, {static_cast<double>((*counts.directed3)[static_cast<std::size_t>(i)]), 0.0, "exact"}});
    }
  } else {
    r.mode = "undirected";
    for (int i = 0; i < kUndirectedOrbits; ++i) {
      r.orbits.push_back(
          {i, {static_cast<double>(counts.undirected[static_cast<std::size_t>(i)]), 0.0, "exact"}});
    }
  }
  return r;
}

}  // namespace sand
