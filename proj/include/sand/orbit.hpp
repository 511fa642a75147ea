#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sand/graph.hpp"

namespace sand {

inline constexpr int kDirectedOrbits = 30;  // ids 1..30

// Undirected orbit id 0..14: 0 edge; 1-3 on 3 nodes; 4-14 on 4 nodes.
//   1 path end, 2 path center, 3 triangle,
//   4 path end, 5 path middle, 6 star leaf, 7 star center, 8 cycle,
//   9 paw pendant, 10 paw triangle (degree 2), 11 paw hub,
//   12 diamond (degree 2), 13 diamond (degree 3), 14 clique.
using OrbitId = int;

enum class DirectedClass : std::uint8_t { kPathEnd, kPathCenter, kTriangle };

struct DirectedOrbit {
  int id = 0;  // 1..30
  DirectedClass cls = DirectedClass::kPathEnd;
};

// Orbit of `anchor` inside the subgraph induced by `members` (2 to 4
// distinct nodes including the anchor). Throws kNotACis when the induced
// subgraph is disconnected or the anchor is missing.
OrbitId classify_undirected(const Graph& g, NodeId anchor, std::span<const NodeId> members);

// Same, from an explicit adjacency matrix over k nodes (row i bit j set when
// i~j); anchor is an index into it.
OrbitId classify_pattern(int k, const std::array<std::uint8_t, 4>& adjacency, int anchor);

// Directed 3-node orbit of `anchor`. Within each class ids follow the
// canonical rank of the direction codes (Direction values 1=out, 2=in,
// 3=mutual):
//   path end    (code(anchor,mid), code(mid,far)) lexicographic
//               -> 2 4 5 7 9 10 12 13 15
//   path center sorted pair of the anchor's two codes
//               -> 1 3 6 8 11 14
//   triangle    (code(v,a), code(v,b), code(a,b)) minimized over the swap
//               of a and b -> 16..30
// Throws kMode on undirected graphs, kNotACis on disconnected members.
DirectedOrbit classify_directed3(const Graph& g, NodeId anchor, std::span<const NodeId> members);

// Directed orbit id -> undirected orbit (1, 2 or 3) of the same position
// once directions are dropped. Throws kOrbitOutOfRange.
OrbitId unorbit(int directed_id);

DirectedOrbit directed_end_orbit(Direction anchor_to_mid, Direction mid_to_far);
DirectedOrbit directed_center_orbit(Direction a, Direction b);
DirectedOrbit directed_triangle_orbit(Direction v_a, Direction v_b, Direction a_b);

struct DirectedOrbitInfo {
  int id = 0;
  DirectedClass cls = DirectedClass::kPathEnd;
  std::vector<Direction> code;  // canonical code, 2 or 3 entries
  OrbitId undirected = 0;
};

// One row per directed orbit, ascending id.
std::vector<DirectedOrbitInfo> directed_orbit_table();

std::string_view undirected_orbit_name(OrbitId id);
std::string_view to_string(DirectedClass cls);
char direction_symbol(Direction d);  // '>' out, '<' in, '=' mutual

}  // namespace sand
