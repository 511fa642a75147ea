#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "sand/error.hpp"
#include "sand/oracle.hpp"
#include "sand/orbit.hpp"
#include "support/graphs.hpp"

using namespace sand;
using namespace testing;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

OrbitId orbit_in(const Graph& g, NodeId anchor) {
  std::vector<NodeId> all;
  for (NodeId i = 0; i < g.node_count(); ++i) all.push_back(i);
  return classify_undirected(g, anchor, all);
}

// Shape of an induced subgraph from its sorted degree sequence alone.
enum Shape { kNone, kPath3, kTriangle, kPath4, kStar, kCycle, kPaw, kDiamond, kClique };

Shape shape_of(const Graph& g, const std::vector<NodeId>& s) {
  std::vector<int> deg;
  for (NodeId a : s) {
    int d = 0;
    for (NodeId b : s) d += a != b && g.has_edge(a, b);
    deg.push_back(d);
  }
  std::sort(deg.begin(), deg.end());
  using V = std::vector<int>;
  if (deg == V{1, 1, 2}) return kPath3;
  if (deg == V{2, 2, 2}) return kTriangle;
  if (deg == V{1, 1, 2, 2}) return kPath4;
  if (deg == V{1, 1, 1, 3}) return kStar;
  if (deg == V{2, 2, 2, 2}) return kCycle;
  if (deg == V{1, 2, 2, 3}) return kPaw;
  if (deg == V{2, 2, 3, 3}) return kDiamond;
  if (deg == V{3, 3, 3, 3}) return kClique;
  return kNone;  // disconnected
}

}  // namespace

TEST_CASE("undirected orbits of the small shapes") {
  CHECK(orbit_in(paw(), 3) == 9);
  CHECK(orbit_in(paw(), 2) == 11);
  CHECK(orbit_in(paw(), 0) == 10);
  for (NodeId v = 0; v < 4; ++v) CHECK(orbit_in(cycle4(), v) == 8);
  CHECK(orbit_in(diamond(), 0) == 12);
  CHECK(orbit_in(diamond(), 1) == 12);
  CHECK(orbit_in(diamond(), 2) == 13);
  CHECK(orbit_in(k4(), 1) == 14);
  CHECK(orbit_in(path4(), 0) == 4);
  CHECK(orbit_in(path4(), 2) == 5);
  CHECK(orbit_in(star3(), 0) == 7);
  CHECK(orbit_in(star3(), 3) == 6);
  const std::vector<NodeId> tri = {0, 1, 2};
  CHECK(classify_undirected(paw(), 0, tri) == 3);
  const std::vector<NodeId> bend = {0, 2, 3};
  CHECK(classify_undirected(paw(), 3, bend) == 1);
  CHECK(classify_undirected(paw(), 2, bend) == 2);
  const std::vector<NodeId> edge = {2, 3};
  CHECK(classify_undirected(paw(), 2, edge) == 0);
}

TEST_CASE("classification errors") {
  const Graph g = path4();
  const std::vector<NodeId> gap = {0, 1, 3};
  CHECK(code_of([&] { classify_undirected(g, 0, gap); }) == ErrorCode::kNotACis);
  const std::vector<NodeId> rep = {0, 1, 1};
  CHECK(code_of([&] { classify_undirected(g, 0, rep); }) == ErrorCode::kNotACis);
  const std::vector<NodeId> missing = {1, 2, 3};
  CHECK(code_of([&] { classify_undirected(g, 0, missing); }) == ErrorCode::kNotACis);
  const std::vector<NodeId> three = {0, 1, 2};
  CHECK(code_of([&] { classify_directed3(g, 0, three); }) == ErrorCode::kMode);
  CHECK(code_of([] { unorbit(0); }) == ErrorCode::kOrbitOutOfRange);
  CHECK(code_of([] { unorbit(31); }) == ErrorCode::kOrbitOutOfRange);
}

TEST_CASE("directed orbit examples") {
  const std::vector<NodeId> s = {0, 1, 2};
  // Anchor 0 with mutual edges to 1 and 2, 1 and 2 unlinked.
  auto center = graph_of(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}}, true);
  CHECK(classify_directed3(center, 0, s).id == 14);
  auto mutual = graph_of(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}, true);
  for (NodeId v = 0; v < 3; ++v) CHECK(classify_directed3(mutual, v, s).id == 30);
  auto chain = graph_of(3, {{0, 1}, {1, 2}}, true);
  CHECK(classify_directed3(chain, 0, s).id == 2);
  CHECK(classify_directed3(chain, 0, s).cls == DirectedClass::kPathEnd);
  auto out_star = graph_of(3, {{0, 1}, {0, 2}}, true);
  CHECK(classify_directed3(out_star, 0, s).id == 1);
  CHECK(unorbit(8) == 2);
  CHECK(unorbit(15) == 1);
  CHECK(unorbit(23) == 3);
}

TEST_CASE("every labelling of three nodes reaches exactly the thirty orbits") {
  // Pair codes: 0 none, 1 a->b, 2 b->a, 3 both.
  std::set<int> seen;
  const std::vector<NodeId> s = {0, 1, 2};
  const std::array<std::pair<NodeId, NodeId>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  for (int mask = 0; mask < 64; ++mask) {
    Edges arcs;
    for (int k = 0; k < 3; ++k) {
      const int c = (mask >> (2 * k)) & 3;
      auto [a, b] = pairs[static_cast<std::size_t>(k)];
      if (c & 1) arcs.emplace_back(a, b);
      if (c & 2) arcs.emplace_back(b, a);
    }
    if (arcs.empty()) continue;
    const Graph g = graph_of(3, arcs, true);
    bool connected = true;
    for (NodeId v = 0; v < 3; ++v) connected = connected && g.degree(v) > 0;
    if (!connected) continue;
    const Graph plain = graph_of(3, arcs, false);
    for (NodeId v = 0; v < 3; ++v) {
      const auto d = classify_directed3(g, v, s);
      seen.insert(d.id);
      CHECK(unorbit(d.id) == classify_undirected(plain, v, s));
      // Swapping the two other members leaves the orbit alone.
      std::vector<NodeId> swapped = {v, 0, 0};
      int k = 1;
      for (NodeId x = 0; x < 3; ++x) {
        if (x != v) swapped[static_cast<std::size_t>(k++)] = x;
      }
      std::swap(swapped[1], swapped[2]);
      CHECK(classify_directed3(g, v, swapped).id == d.id);
    }
  }
  CHECK(seen.size() == 30);
  CHECK(*seen.begin() == 1);
  CHECK(*seen.rbegin() == 30);
}

TEST_CASE("orbit table") {
  const auto rows = directed_orbit_table();
  REQUIRE(rows.size() == 30);
  int ends = 0, centers = 0, triangles = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].id == static_cast<int>(i) + 1);
    CHECK(rows[i].undirected == unorbit(rows[i].id));
    ends += rows[i].cls == DirectedClass::kPathEnd;
    centers += rows[i].cls == DirectedClass::kPathCenter;
    triangles += rows[i].cls == DirectedClass::kTriangle;
  }
  CHECK(ends == 9);
  CHECK(centers == 6);
  CHECK(triangles == 15);
}

TEST_CASE("member order never changes the orbit") {
  const Graph g = all_orbits_graph();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (int k : {3, 4}) {
      enumerate_cises(g, v, k, [&](std::span<const NodeId> set) {
        const OrbitId want = classify_undirected(g, v, set);
        std::vector<NodeId> others(set.begin() + 1, set.end());
        std::sort(others.begin(), others.end());
        do {
          std::vector<NodeId> m = {v};
          m.insert(m.end(), others.begin(), others.end());
          CHECK(classify_undirected(g, v, m) == want);
          // Anchor not in front.
          std::rotate(m.begin(), m.begin() + 1, m.end());
          CHECK(classify_undirected(g, v, m) == want);
        } while (std::next_permutation(others.begin(), others.end()));
      });
    }
  }
}

TEST_CASE("orbit totals match shape counts times positions") {
  // Positions of each orbit inside its shape.
  const std::array<std::pair<Shape, int>, 15> owner = {{{kNone, 0},
                                                        {kPath3, 2},
                                                        {kPath3, 1},
                                                        {kTriangle, 3},
                                                        {kPath4, 2},
                                                        {kPath4, 2},
                                                        {kStar, 3},
                                                        {kStar, 1},
                                                        {kCycle, 4},
                                                        {kPaw, 1},
                                                        {kPaw, 2},
                                                        {kPaw, 1},
                                                        {kDiamond, 2},
                                                        {kDiamond, 2},
                                                        {kClique, 4}}};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = erdos_renyi(11, 0.45, seed);
    const auto n = static_cast<NodeId>(g.node_count());
    std::map<Shape, std::uint64_t> shapes;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        for (NodeId c = b + 1; c < n; ++c) {
          ++shapes[shape_of(g, {a, b, c})];
          for (NodeId d = c + 1; d < n; ++d) ++shapes[shape_of(g, {a, b, c, d})];
        }
      }
    }
    std::array<std::uint64_t, 15> totals{};
    for (NodeId v = 0; v < n; ++v) {
      const auto c = exact_orbit_degrees(g, v);
      for (int i = 0; i < 15; ++i) totals[static_cast<std::size_t>(i)] += c.undirected[static_cast<std::size_t>(i)];
    }
    for (int i = 1; i < 15; ++i) {
      auto [shape, positions] = owner[static_cast<std::size_t>(i)];
      CHECK(totals[static_cast<std::size_t>(i)] == shapes[shape] * static_cast<std::uint64_t>(positions));
    }
  }
}

TEST_CASE("a graph realizing the worked example's orbit degrees exists") {
  // Wanted at node 0: d0 = 3, d2 = 2, d1 = d3 = d5 = d10 = d11 = 1, rest 0.
  std::array<std::uint64_t, 15> want{};
  want[0] = 3;
  want[2] = 2;
  for (int i : {1, 3, 5, 10, 11}) want[static_cast<std::size_t>(i)] = 1;
  bool found = false;
  for (std::size_t n = 4; n <= 6 && !found; ++n) {
    std::vector<std::pair<NodeId, NodeId>> slots;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    }
    for (std::uint32_t mask = 1; mask < (1u << slots.size()) && !found; ++mask) {
      Edges e;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (mask >> k & 1) e.push_back(slots[k]);
      }
      const Graph g = graph_of(n, e);
      if (g.degree(0) != 3) continue;
      const auto c = exact_orbit_degrees(g, 0);
      if (c.undirected == want) {
        found = true;
        MESSAGE("realized on " << n << " nodes with " << e.size() << " edges");
      }
    }
  }
  CHECK(found);
}
