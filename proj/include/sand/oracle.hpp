#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "sand/estimator.hpp"
#include "sand/graph.hpp"
#include "sand/orbit.hpp"
#include "sand/stats.hpp"

namespace sand {

inline constexpr std::uint64_t kDefaultOracleGuard = 1'000'000;

// Calls `emit` once for every connected induced k-node subgraph containing v
// (k in 2..4). Member order is discovery order with v first.
void enumerate_cises(const Graph& g, NodeId v, int k,
                     const std::function<void(std::span<const NodeId>)>& emit);

struct OrbitCounts {
  std::array<std::uint64_t, kUndirectedOrbits> undirected{};
  std::optional<std::array<std::uint64_t, kDirectedOrbits + 1>> directed3;  // index 1..30
};

// Upper bound on the number of 3- and 4-node CISes containing v: every such
// set is reachable by at least one sampler selection path.
std::uint64_t candidate_bound(const NodeLocalStats& stats);

// Exact orbit degrees by enumeration. Throws kGuardExceeded when the
// candidate bound at v is above `guard`.
OrbitCounts exact_orbit_degrees(const Graph& g, NodeId v,
                                std::uint64_t guard = kDefaultOracleGuard);

struct IdentityCheck {
  // Signed residuals of the three per-node identities (left side minus right).
  std::int64_t pairs = 0;        // c2 + c3 - neighbor_pairs
  std::int64_t three_paths = 0;  // weighted 4-node terms - three_paths
  std::int64_t triples = 0;      // c7 + c11 + c13 + c14 - neighbor_triples
  // Directed orbit sums minus undirected orbits 1, 2, 3 (zeros when the
  // counts carry no directed part).
  std::array<std::int64_t, 3> directed{};

  bool ok() const {
    return pairs == 0 && three_paths == 0 && triples == 0 && directed == std::array<std::int64_t, 3>{};
  }
};

IdentityCheck verify_identities(const OrbitCounts& counts, const NodeLocalStats& stats);

// Exact counts in report form: variance 0, source "exact".
OrbitDegreeReport exact_report(const OrbitCounts& counts, bool directed3);

}  // namespace sand
