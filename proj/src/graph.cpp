#include "sand/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "sand/error.hpp"

namespace sand {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kEmptyGraph: return "empty graph";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kOverflow: return "count overflow";
    case ErrorCode::kNotANeighbor: return "not a neighbor";
    case ErrorCode::kNodeOutOfRange: return "node out of range";
    case ErrorCode::kCannotSample: return "cannot sample";
    case ErrorCode::kDegreeTooSmall: return "degree too small";
    case ErrorCode::kBiasUndefined: return "bias undefined";
    case ErrorCode::kNotACis: return "not a connected induced subgraph";
    case ErrorCode::kMode: return "wrong graph mode";
    case ErrorCode::kOrbitOutOfRange: return "orbit out of range";
    case ErrorCode::kEstimatorUndefined: return "estimator undefined";
    case ErrorCode::kInconsistentEstimates: return "inconsistent estimates";
    case ErrorCode::kUnsupportedPair: return "unsupported covariance pair";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kGuardExceeded: return "enumeration guard exceeded";
    case ErrorCode::kInvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

std::span<const Direction> Graph::directions(NodeId v) const {
  if (!directed_) return {};
  return {dirs_.data() + offsets_[v], dirs_.data() + offsets_[v + 1]};
}

std::size_t Graph::pos_of(NodeId v, NodeId u) const {
  auto nbrs = neighbors(v);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), u);
  if (it == nbrs.end() || *it != u) {
    throw Error(ErrorCode::kNotANeighbor,
                "node " + std::to_string(u) + " is not a neighbor of " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - nbrs.begin());
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  // Search the shorter list.
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Direction Graph::direction(NodeId v, NodeId u) const {
  if (!directed_) throw Error(ErrorCode::kMode, "graph has no edge directions");
  return dirs_[offsets_[v] + pos_of(v, u)];
}

void Graph::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw Error(ErrorCode::kNodeOutOfRange,
                "node " + std::to_string(v) + " out of range (n=" +
                    std::to_string(node_count()) + ")");
  }
}

NodeId Graph::max_degree_node() const {
  NodeId best = 0;
  for (NodeId v = 1; v < node_count(); ++v) {
    if (degree(v) > degree(best)) best = v;
  }
  return best;
}

void GraphBuilder::add_edge(NodeId u, NodeId v) {
  ++summary_.pairs_seen;
  if (u == v) {
    ++summary_.self_loops_dropped;
    return;
  }
  arcs_.emplace_back(u, v);
}

Graph GraphBuilder::build(std::size_t node_count) {
  // Key every arc by its unordered endpoint pair; bit 1 marks low->high,
  // bit 2 marks high->low.
  struct Keyed {
    NodeId lo, hi;
    std::uint8_t bits;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(arcs_.size());
  for (auto [u, v] : arcs_) {
    if (u < v) {
      keyed.push_back({u, v, 1});
    } else {
      keyed.push_back({v, u, 2});
    }
    node_count = std::max<std::size_t>(node_count, std::size_t{std::max(u, v)} + 1);
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.lo, a.hi, a.bits) < std::tie(b.lo, b.hi, b.bits);
  });

  std::vector<Keyed> edges;
  edges.reserve(keyed.size());
  for (const auto& k : keyed) {
    if (!edges.empty() && edges.back().lo == k.lo && edges.back().hi == k.hi) {
      bool repeat = !directed_ || (edges.back().bits & k.bits) != 0;
      if (repeat) ++summary_.duplicates_merged;
      edges.back().bits |= k.bits;
    } else {
      edges.push_back(k);
    }
  }

  Graph g;
  g.directed_ = directed_;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.lo + 1];
    ++g.offsets_[e.hi + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.targets_.resize(2 * edges.size());
  if (directed_) g.dirs_.resize(2 * edges.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges arrive sorted by (lo, hi): a node first receives its smaller
  // neighbors (as hi of earlier edges) and then its larger ones, both in
  // increasing order, so every list comes out sorted.
  for (const auto& e : edges) {
    std::size_t a = fill[e.lo]++;
    std::size_t b = fill[e.hi]++;
    g.targets_[a] = e.hi;
    g.targets_[b] = e.lo;
    if (directed_) {
      Direction from_lo = e.bits == 1 ? Direction::kOut
                          : e.bits == 2 ? Direction::kIn
                                        : Direction::kMutual;
      g.dirs_[a] = from_lo;
      g.dirs_[b] = reverse(from_lo);
    }
  }
  arcs_.clear();
  return g;
}

Graph make_graph(std::size_t node_count,
                 std::span<const std::pair<NodeId, NodeId>> edges, bool directed) {
  GraphBuilder builder(directed);
  for (auto [u, v] : edges) builder.add_edge(u, v);
  return builder.build(node_count);
}

IdMap::IdMap(std::vector<std::uint64_t> originals) : originals_(std::move(originals)) {
  std::sort(originals_.begin(), originals_.end());
  originals_.erase(std::unique(originals_.begin(), originals_.end()), originals_.end());
}

NodeId IdMap::dense(std::uint64_t original) const {
  auto it = std::lower_bound(originals_.begin(), originals_.end(), original);
  if (it == originals_.end() || *it != original) {
    throw Error(ErrorCode::kNodeOutOfRange,
                "node id " + std::to_string(original) + " not present in graph");
  }
  return static_cast<NodeId>(it - originals_.begin());
}

void IdMap::save(std::ostream& out) const {
  out << "# dense original\n";
  for (std::size_t i = 0; i < originals_.size(); ++i) {
    out << i << ' ' << originals_[i] << '\n';
  }
}

IdMap IdMap::load(std::istream& in) {
  std::vector<std::uint64_t> originals;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::uint64_t dense = 0;
    std::uint64_t orig = 0;
    std::istringstream fields(line);
    if (!(fields >> dense >> orig) || dense != originals.size()) {
      throw Error(ErrorCode::kParse, "id map line " + std::to_string(lineno) + " malformed");
    }
    originals.push_back(orig);
  }
  return IdMap(std::move(originals));
}

namespace {

// Parses one unsigned id starting at pos, skipping leading blanks.
bool next_id(std::string_view line, std::size_t& pos, std::uint64_t& out) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
  if (pos >= line.size()) return false;
  auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), out);
  if (ec != std::errc{}) return false;
  pos = static_cast<std::size_t>(ptr - line.data());
  return true;
}

bool only_blanks(std::string_view rest) {
  return rest.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (only_blanks(view)) continue;
    auto first = view.find_first_not_of(" \t");
    if (view[first] == '#') continue;
    std::size_t pos = 0;
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!next_id(view, pos, u) || !next_id(view, pos, v) || !only_blanks(view.substr(pos))) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(lineno) +
                                         ": expected two non-negative integer ids, got '" +
                                         line + "'");
    }
    raw.emplace_back(u, v);
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    if (u == v) continue;  // a self-loop alone does not make a node
    ids.push_back(u);
    ids.push_back(v);
  }
  LoadedGraph out;
  out.lines = lineno;
  out.ids = IdMap(std::move(ids));
  if (out.ids.size() > std::size_t{UINT32_MAX}) {
    throw Error(ErrorCode::kOverflow, "more than 2^32-1 nodes");
  }

  GraphBuilder builder(directed);
  std::uint64_t self_loops = 0;
  for (auto [u, v] : raw) {
    if (u == v) {
      ++self_loops;
      continue;
    }
    builder.add_edge(out.ids.dense(u), out.ids.dense(v));
  }
  out.graph = builder.build(out.ids.size());
  out.summary = builder.summary();
  out.summary.pairs_seen += self_loops;
  out.summary.self_loops_dropped += self_loops;
  if (out.graph.edge_count() == 0) {
    throw Error(ErrorCode::kEmptyGraph, "edge list contains no edges");
  }
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return load_edge_list(in, directed);
}

}  // namespace sand
