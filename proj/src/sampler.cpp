#include "sand/sampler.hpp"

#include <algorithm>
#include <string>

#include "sand/error.hpp"

namespace sand {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kR31: return "randgraf-3-1";
    case Method::kR32: return "randgraf-3-2";
    case Method::kR41: return "randgraf-4-1";
    case Method::kR42: return "randgraf-4-2";
    case Method::kR43: return "randgraf-4-3";
    case Method::kR44: return "randgraf-4-4";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    auto full = to_string(m);
    std::string short_form = {'r', full[9], full[11]};
    if (name == full || name == short_form) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown sampling method '" + std::string(name) + "'");
}

std::size_t random_index_excluding(std::size_t d, std::span<const std::size_t> skip,
                                   RandomSource& rng) {
  if (d <= skip.size()) throw Error(ErrorCode::kCannotSample, "no candidate left to sample");
  std::size_t idx = rng.below(d - skip.size());
  if (skip.size() == 1) {
    if (idx >= skip[0]) ++idx;
  } else if (skip.size() == 2) {
    auto [lo, hi] = std::minmax(skip[0], skip[1]);
    if (idx >= lo) ++idx;
    if (idx >= hi) ++idx;
  }
  return idx;
}

NodeId random_vertex(std::span<const NodeId> neighbors, std::span<const NodeId> excluded,
                     RandomSource& rng) {
  if (excluded.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "random_vertex excludes at most two nodes");
  }
  std::array<std::size_t, 2> skip{};
  std::size_t k = 0;
  for (NodeId x : excluded) {
    auto it = std::lower_bound(neighbors.begin(), neighbors.end(), x);
    if (it == neighbors.end() || *it != x) {
      throw Error(ErrorCode::kNotANeighbor, "excluded node is not in the candidate list");
    }
    skip[k++] = static_cast<std::size_t>(it - neighbors.begin());
  }
  if (k == 2 && skip[0] == skip[1]) k = 1;
  return neighbors[random_index_excluding(neighbors.size(), {skip.data(), k}, rng)];
}

std::size_t weighted_random_index(std::span<const std::uint64_t> acc, RandomSource& rng) {
  if (acc.empty() || acc.back() == 0) {
    throw Error(ErrorCode::kCannotSample, "all sampling weights are zero");
  }
  const std::uint64_t rnd = rng.one_to(acc.back());
  return static_cast<std::size_t>(std::lower_bound(acc.begin(), acc.end(), rnd) - acc.begin());
}

NodeId weighted_random_vertex(std::span<const std::uint64_t> acc,
                              std::span<const NodeId> neighbors, RandomSource& rng) {
  return neighbors[weighted_random_index(acc, rng)];
}

namespace {

// Weighted draw over acc with the weight block of position `pos` cut out of
// the range: rnd is drawn from the residual total and shifted past the block.
std::size_t weighted_index_excluding(std::span<const std::uint64_t> acc, std::size_t pos,
                                     RandomSource& rng) {
  const std::uint64_t before = pos == 0 ? 0 : acc[pos - 1];
  const std::uint64_t block = acc[pos] - before;
  const std::uint64_t residual = acc.back() - block;
  if (residual == 0) {
    throw Error(ErrorCode::kCannotSample, "residual sampling weight is zero");
  }
  std::uint64_t rnd = rng.one_to(residual);
  if (rnd > before) rnd += block;
  return static_cast<std::size_t>(std::lower_bound(acc.begin(), acc.end(), rnd) - acc.begin());
}

SampledCis make3(Method m, NodeId v, NodeId a, NodeId b) {
  SampledCis s;
  s.anchor = v;
  s.members = {v, a, b, 0};
  s.size = 3;
  s.method = m;
  return s;
}

SampledCis make4(Method m, NodeId v, NodeId a, NodeId b, NodeId c) {
  SampledCis s;
  s.anchor = v;
  s.members = {v, a, b, c};
  s.size = 4;
  s.method = m;
  return s;
}

}  // namespace

NodeId weighted_random_vertex_excluding(std::span<const std::uint64_t> acc,
                                        std::span<const NodeId> neighbors, NodeId exclude,
                                        RandomSource& rng) {
  auto it = std::lower_bound(neighbors.begin(), neighbors.end(), exclude);
  if (it == neighbors.end() || *it != exclude) {
    throw Error(ErrorCode::kNotANeighbor, "excluded node is not in the candidate list");
  }
  auto pos = static_cast<std::size_t>(it - neighbors.begin());
  return neighbors[weighted_index_excluding(acc, pos, rng)];
}

void check_can_sample(Method m, const NodeLocalStats& s) {
  auto fail = [&](ErrorCode code, const char* why) {
    throw Error(code, std::string(to_string(m)) + ": " + why);
  };
  switch (m) {
    case Method::kR31:
      if (s.degree < 2) fail(ErrorCode::kDegreeTooSmall, "needs degree >= 2");
      break;
    case Method::kR32:
      if (s.two_paths == 0) fail(ErrorCode::kCannotSample, "node has no 2-paths");
      break;
    case Method::kR41:
      if (s.path_plus_neighbor == 0) fail(ErrorCode::kCannotSample, "no path-plus-neighbor selections");
      break;
    case Method::kR42:
      if (s.forks == 0) fail(ErrorCode::kCannotSample, "no neighbor has degree >= 3");
      break;
    case Method::kR43:
      if (s.three_paths == 0) fail(ErrorCode::kCannotSample, "node has no 3-paths");
      break;
    case Method::kR44:
      if (s.degree < 3) fail(ErrorCode::kDegreeTooSmall, "needs degree >= 3");
      break;
  }
}

bool can_sample(Method m, const NodeLocalStats& s) {
  return bias_denominator(m, s) > 0;
}

SampledCis randgraf_3_1(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR31, s);
  auto nv = cache.graph().neighbors(v);
  const std::size_t i = rng.below(nv.size());
  const std::size_t j = random_index_excluding(nv.size(), {&i, 1}, rng);
  return make3(Method::kR31, v, nv[i], nv[j]);
}

SampledCis randgraf_3_2(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR32, s);
  const Graph& g = cache.graph();
  auto nv = g.neighbors(v);
  const NodeId u = nv[weighted_random_index(s.acc_two_paths, rng)];
  auto nu = g.neighbors(u);
  const std::size_t pv = g.pos_of(u, v);
  const NodeId w = nu[random_index_excluding(nu.size(), {&pv, 1}, rng)];
  return make3(Method::kR32, v, u, w);
}

SampledCis randgraf_4_1(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR41, s);
  const Graph& g = cache.graph();
  auto nv = g.neighbors(v);
  const std::size_t iu = weighted_random_index(s.acc_two_paths, rng);
  const NodeId u = nv[iu];
  const NodeId w = nv[random_index_excluding(nv.size(), {&iu, 1}, rng)];
  auto nu = g.neighbors(u);
  const std::size_t pv = g.pos_of(u, v);
  const NodeId r = nu[random_index_excluding(nu.size(), {&pv, 1}, rng)];
  if (r == w) return make3(Method::kR41, v, u, w);
  return make4(Method::kR41, v, u, w, r);
}

SampledCis randgraf_4_2(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR42, s);
  const Graph& g = cache.graph();
  auto nv = g.neighbors(v);
  const NodeId u = nv[weighted_random_index(s.acc_forks, rng)];
  auto nu = g.neighbors(u);
  std::array<std::size_t, 2> skip = {g.pos_of(u, v), 0};
  skip[1] = random_index_excluding(nu.size(), {skip.data(), 1}, rng);
  const NodeId w = nu[skip[1]];
  const NodeId r = nu[random_index_excluding(nu.size(), skip, rng)];
  return make4(Method::kR42, v, u, w, r);
}

SampledCis randgraf_4_3(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR43, s);
  const Graph& g = cache.graph();
  auto nv = g.neighbors(v);
  const NodeId u = nv[weighted_random_index(s.acc_three_paths, rng)];
  auto nu = g.neighbors(u);
  const NodeId w = nu[weighted_index_excluding(cache.two_path_acc(u), g.pos_of(u, v), rng)];
  auto nw = g.neighbors(w);
  const std::size_t pu = g.pos_of(w, u);
  const NodeId r = nw[random_index_excluding(nw.size(), {&pu, 1}, rng)];
  if (r == v) return make3(Method::kR43, v, u, w);
  return make4(Method::kR43, v, u, w, r);
}

SampledCis randgraf_4_4(const StatsCache& cache, NodeId v, RandomSource& rng) {
  const auto& s = cache.stats(v);
  check_can_sample(Method::kR44, s);
  auto nv = cache.graph().neighbors(v);
  std::array<std::size_t, 2> skip = {rng.below(nv.size()), 0};
  skip[1] = random_index_excluding(nv.size(), {skip.data(), 1}, rng);
  const std::size_t k = random_index_excluding(nv.size(), skip, rng);
  return make4(Method::kR44, v, nv[skip[0]], nv[skip[1]], nv[k]);
}

SampledCis sample(Method m, const StatsCache& cache, NodeId v, RandomSource& rng) {
  switch (m) {
    case Method::kR31: return randgraf_3_1(cache, v, rng);
    case Method::kR32: return randgraf_3_2(cache, v, rng);
    case Method::kR41: return randgraf_4_1(cache, v, rng);
    case Method::kR42: return randgraf_4_2(cache, v, rng);
    case Method::kR43: return randgraf_4_3(cache, v, rng);
    case Method::kR44: return randgraf_4_4(cache, v, rng);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

const std::array<std::uint8_t, kUndirectedOrbits>& bias_ways(Method m) {
  //                                              orbit: 0  1  2  3  4  5  6  7  8  9 10 11 12 13 14
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r31 = {0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r32 = {0, 1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r41 = {0, 0, 0, 2, 0, 1, 0, 0, 2, 0, 1, 2, 2, 4, 6};
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r42 = {0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 2, 1, 3};
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r43 = {0, 0, 0, 2, 1, 0, 0, 0, 2, 2, 1, 0, 4, 2, 6};
  static constexpr std::array<std::uint8_t, kUndirectedOrbits> r44 = {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1};
  switch (m) {
    case Method::kR31: return r31;
    case Method::kR32: return r32;
    case Method::kR41: return r41;
    case Method::kR42: return r42;
    case Method::kR43: return r43;
    case Method::kR44: return r44;
  }
  return r31;
}

std::uint64_t bias_denominator(Method m, const NodeLocalStats& s) {
  switch (m) {
    case Method::kR31: return s.neighbor_pairs;
    case Method::kR32: return s.two_paths;
    case Method::kR41: return s.path_plus_neighbor;
    case Method::kR42: return s.forks;
    case Method::kR43: return s.three_paths;
    case Method::kR44: return s.neighbor_triples;
  }
  return 0;
}

BiasRatio bias_ratio(Method m, const NodeLocalStats& s) {
  BiasRatio r;
  r.method = m;
  r.ways = bias_ways(m);
  r.denominator = bias_denominator(m, s);
  if (r.denominator == 0) {
    throw Error(ErrorCode::kBiasUndefined,
                std::string(to_string(m)) + ": sampling bias undefined (zero normalizer)");
  }
  return r;
}

SamplerBias bias_vector(Method m, const NodeLocalStats& s) {
  const BiasRatio r = bias_ratio(m, s);
  SamplerBias b;
  b.method = m;
  for (int i = 0; i < kUndirectedOrbits; ++i) {
    b.p[i] = static_cast<double>(r.ways[i]) / static_cast<double>(r.denominator);
  }
  return b;
}

}  // namespace sand
