#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace sand {

using NodeId = std::uint32_t;

// Direction of the edge {owner, neighbor} as seen from the owner.
enum class Direction : std::uint8_t { kOut = 1, kIn = 2, kMutual = 3 };

constexpr Direction reverse(Direction d) {
  switch (d) {
    case Direction::kOut: return Direction::kIn;
    case Direction::kIn: return Direction::kOut;
    case Direction::kMutual: return Direction::kMutual;
  }
  return d;
}

// Immutable simple graph in compressed adjacency form. Neighbor lists are
// strictly increasing; in directed mode every adjacency slot carries the
// direction of the edge seen from the list's owner.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool directed() const { return directed_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Parallel to neighbors(v); empty for undirected graphs.
  std::span<const Direction> directions(NodeId v) const;

  // Index of u in neighbors(v). Throws kNotANeighbor.
  std::size_t pos_of(NodeId v, NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;
  // Direction of {v, u} seen from v. Throws kMode on undirected graphs.
  Direction direction(NodeId v, NodeId u) const;

  // Throws kNodeOutOfRange.
  void check_node(NodeId v) const;

  NodeId max_degree_node() const;

 private:
  friend class GraphBuilder;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Direction> dirs_;
  bool directed_ = false;
};

struct BuildSummary {
  std::uint64_t pairs_seen = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_merged = 0;
};

// Accumulates arcs and produces a simple graph. In directed mode "u v" is the
// arc u->v and a reciprocal "v u" upgrades the edge to mutual; in undirected
// mode the reciprocal is a duplicate.
class GraphBuilder {
 public:
  explicit GraphBuilder(bool directed) : directed_(directed) {}

  void add_edge(NodeId u, NodeId v);
  // Nodes are 0..max(node_count, largest id + 1) - 1.
  Graph build(std::size_t node_count = 0);
  const BuildSummary& summary() const { return summary_; }

 private:
  bool directed_;
  std::vector<std::pair<NodeId, NodeId>> arcs_;
  BuildSummary summary_;
};

Graph make_graph(std::size_t node_count,
                 std::span<const std::pair<NodeId, NodeId>> edges,
                 bool directed = false);

// Dense id -> original id from the input file.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<std::uint64_t> originals);

  std::size_t size() const { return originals_.size(); }
  std::uint64_t original(NodeId dense) const { return originals_.at(dense); }
  // Throws kNodeOutOfRange when the id is not in the graph.
  NodeId dense(std::uint64_t original) const;

  void save(std::ostream& out) const;
  static IdMap load(std::istream& in);

 private:
  std::vector<std::uint64_t> originals_;  // sorted ascending
};

struct LoadedGraph {
  Graph graph;
  IdMap ids;
  BuildSummary summary;
  std::uint64_t lines = 0;
};

// SNAP-style edge list: '#' comments, one whitespace-separated id pair per
// line. Ids are compacted to 0..n-1 in ascending original order.
LoadedGraph load_edge_list(std::istream& in, bool directed);
LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed);

}  // namespace sand
