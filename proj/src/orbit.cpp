#include "sand/orbit.hpp"

#include <algorithm>
#include <bit>

#include "sand/error.hpp"

namespace sand {

namespace {

constexpr std::array<int, 9> kEndIds = {2, 4, 5, 7, 9, 10, 12, 13, 15};
constexpr std::array<int, 6> kCenterIds = {1, 3, 6, 8, 11, 14};

constexpr int code(Direction d) { return static_cast<int>(d); }

constexpr std::array<int, 3> canonical_triangle(int va, int vb, int ab) {
  // Swapping a and b exchanges the anchor's two codes and reverses a->b.
  const int rev_ab = ab == 3 ? 3 : 3 - ab;
  std::array<int, 3> x = {va, vb, ab};
  std::array<int, 3> y = {vb, va, rev_ab};
  return y < x ? y : x;
}

struct TriangleRanks {
  std::array<std::array<int, 3>, 15> reps{};
  int count = 0;
};

constexpr TriangleRanks make_triangle_ranks() {
  TriangleRanks t;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        auto rep = canonical_triangle(a, b, c);
        bool seen = false;
        for (int i = 0; i < t.count; ++i) seen = seen || t.reps[i] == rep;
        // Triples are visited in lexicographic order and every canonical
        // form is <= its triple, so reps are appended already sorted.
        if (!seen) t.reps[t.count++] = rep;
      }
    }
  }
  return t;
}

constexpr TriangleRanks kTriangleRanks = make_triangle_ranks();
static_assert(kTriangleRanks.count == 15);

bool connected(int k, const std::array<std::uint8_t, 4>& adj) {
  std::uint8_t seen = 1;
  std::uint8_t frontier = 1;
  while (frontier != 0) {
    std::uint8_t next = 0;
    for (int i = 0; i < k; ++i) {
      if (frontier & (1u << i)) next |= adj[i];
    }
    next &= static_cast<std::uint8_t>(~seen);
    seen |= next;
    frontier = next;
  }
  return seen == (1u << k) - 1;
}

}  // namespace

OrbitId classify_pattern(int k, const std::array<std::uint8_t, 4>& adj, int anchor) {
  if (k < 2 || k > 4 || anchor < 0 || anchor >= k || !connected(k, adj)) {
    throw Error(ErrorCode::kNotACis, "member set does not induce a connected subgraph");
  }
  std::array<int, 4> deg{};
  int edges2 = 0;
  for (int i = 0; i < k; ++i) {
    deg[i] = std::popcount(static_cast<unsigned>(adj[i]));
    edges2 += deg[i];
  }
  const int edges = edges2 / 2;
  const int da = deg[anchor];
  if (k == 2) return 0;
  if (k == 3) {
    if (edges == 3) return 3;
    return da == 1 ? 1 : 2;
  }
  const int max_deg = *std::max_element(deg.begin(), deg.begin() + 4);
  switch (edges) {
    case 3:
      if (max_deg == 3) return da == 3 ? 7 : 6;  // star
      return da == 1 ? 4 : 5;                    // path
    case 4:
      if (max_deg == 2) return 8;  // cycle
      return da == 1 ? 9 : da == 2 ? 10 : 11;  // paw
    case 5:
      return da == 2 ? 12 : 13;  // diamond
    case 6:
      return 14;
  }
  throw Error(ErrorCode::kNotACis, "unexpected 4-node pattern");
}

OrbitId classify_undirected(const Graph& g, NodeId anchor, std::span<const NodeId> members) {
  const int k = static_cast<int>(members.size());
  if (k < 2 || k > 4) throw Error(ErrorCode::kNotACis, "member set must hold 2 to 4 nodes");
  int anchor_idx = -1;
  std::array<std::uint8_t, 4> adj{};
  for (int i = 0; i < k; ++i) {
    g.check_node(members[i]);
    if (members[i] == anchor) anchor_idx = i;
    for (int j = i + 1; j < k; ++j) {
      if (members[i] == members[j]) throw Error(ErrorCode::kNotACis, "repeated member node");
      if (g.has_edge(members[i], members[j])) {
        adj[i] |= static_cast<std::uint8_t>(1u << j);
        adj[j] |= static_cast<std::uint8_t>(1u << i);
      }
    }
  }
  if (anchor_idx < 0) throw Error(ErrorCode::kNotACis, "anchor is not a member");
  return classify_pattern(k, adj, anchor_idx);
}

DirectedOrbit directed_end_orbit(Direction anchor_to_mid, Direction mid_to_far) {
  const int rank = (code(anchor_to_mid) - 1) * 3 + (code(mid_to_far) - 1);
  return {kEndIds[rank], DirectedClass::kPathEnd};
}

DirectedOrbit directed_center_orbit(Direction a, Direction b) {
  int lo = std::min(code(a), code(b));
  int hi = std::max(code(a), code(b));
  // Pairs (lo, hi) with lo <= hi in lexicographic order.
  static constexpr int kOffset[4] = {0, 0, 3, 5};
  const int rank = kOffset[lo] + (hi - lo);
  return {kCenterIds[rank], DirectedClass::kPathCenter};
}

DirectedOrbit directed_triangle_orbit(Direction v_a, Direction v_b, Direction a_b) {
  auto rep = canonical_triangle(code(v_a), code(v_b), code(a_b));
  for (int i = 0; i < kTriangleRanks.count; ++i) {
    if (kTriangleRanks.reps[i] == rep) return {16 + i, DirectedClass::kTriangle};
  }
  throw Error(ErrorCode::kOrbitOutOfRange, "triangle code has no rank");
}

DirectedOrbit classify_directed3(const Graph& g, NodeId anchor, std::span<const NodeId> members) {
  if (!g.directed()) throw Error(ErrorCode::kMode, "directed classification needs a directed graph");
  if (members.size() != 3) throw Error(ErrorCode::kNotACis, "directed orbits are defined on 3 nodes");
  std::array<NodeId, 2> others{};
  int n = 0;
  bool found = false;
  for (NodeId m : members) {
    g.check_node(m);
    if (m == anchor && !found) {
      found = true;
    } else {
      if (n == 2) throw Error(ErrorCode::kNotACis, "repeated member node");
      others[n++] = m;
    }
  }
  if (!found || n != 2 || others[0] == others[1]) {
    throw Error(ErrorCode::kNotACis, "anchor must be one of three distinct members");
  }
  const NodeId a = others[0];
  const NodeId b = others[1];
  const bool va = g.has_edge(anchor, a);
  const bool vb = g.has_edge(anchor, b);
  const bool ab = g.has_edge(a, b);
  if (va && vb && ab) {
    return directed_triangle_orbit(g.direction(anchor, a), g.direction(anchor, b),
                                   g.direction(a, b));
  }
  if (va && vb) return directed_center_orbit(g.direction(anchor, a), g.direction(anchor, b));
  if (va && ab) return directed_end_orbit(g.direction(anchor, a), g.direction(a, b));
  if (vb && ab) return directed_end_orbit(g.direction(anchor, b), g.direction(b, a));
  throw Error(ErrorCode::kNotACis, "member set does not induce a connected subgraph");
}

OrbitId unorbit(int directed_id) {
  if (directed_id < 1 || directed_id > kDirectedOrbits) {
    throw Error(ErrorCode::kOrbitOutOfRange,
                "directed orbit " + std::to_string(directed_id) + " outside 1..30");
  }
  if (directed_id >= 16) return 3;
  if (std::find(kCenterIds.begin(), kCenterIds.end(), directed_id) != kCenterIds.end()) return 2;
  return 1;
}

std::vector<DirectedOrbitInfo> directed_orbit_table() {
  std::vector<DirectedOrbitInfo> rows;
  constexpr std::array<Direction, 3> kDirs = {Direction::kOut, Direction::kIn, Direction::kMutual};
  for (Direction x : kDirs) {
    for (Direction y : kDirs) {
      auto o = directed_end_orbit(x, y);
      rows.push_back({o.id, o.cls, {x, y}, 1});
      if (code(x) <= code(y)) {
        auto c = directed_center_orbit(x, y);
        rows.push_back({c.id, c.cls, {x, y}, 2});
      }
    }
  }
  for (int i = 0; i < kTriangleRanks.count; ++i) {
    const auto& rep = kTriangleRanks.reps[i];
    rows.push_back({16 + i,
                    DirectedClass::kTriangle,
                    {static_cast<Direction>(rep[0]), static_cast<Direction>(rep[1]),
                     static_cast<Direction>(rep[2])},
                    3});
  }
  std::sort(rows.begin(), rows.end(),
            [](const DirectedOrbitInfo& a, const DirectedOrbitInfo& b) { return a.id < b.id; });
  return rows;
}

std::string_view undirected_orbit_name(OrbitId id) {
  static constexpr std::array<std::string_view, 15> kNames = {
      "edge",
      "3-path end",
      "3-path center",
      "triangle",
      "4-path end",
      "4-path middle",
      "star leaf",
      "star center",
      "4-cycle",
      "paw pendant",
      "paw triangle (degree 2)",
      "paw hub",
      "diamond (degree 2)",
      "diamond (degree 3)",
      "4-clique",
  };
  if (id < 0 || id > 14) throw Error(ErrorCode::kOrbitOutOfRange, "undirected orbit outside 0..14");
  return kNames[static_cast<std::size_t>(id)];
}

std::string_view to_string(DirectedClass cls) {
  switch (cls) {
    case DirectedClass::kPathEnd: return "path-end";
    case DirectedClass::kPathCenter: return "path-center";
    case DirectedClass::kTriangle: return "triangle";
  }
  return "?";
}

char direction_symbol(Direction d) {
  switch (d) {
    case Direction::kOut: return '>';
    case Direction::kIn: return '<';
    case Direction::kMutual: return '=';
  }
  return '?';
}

}  // namespace sand
