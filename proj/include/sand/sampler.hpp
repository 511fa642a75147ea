#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "sand/graph.hpp"
#include "sand/random.hpp"
#include "sand/stats.hpp"

namespace sand {

inline constexpr int kUndirectedOrbits = 15;  // orbit ids 0..14

// The six connected-induced-subgraph samplers, in their canonical order
// (also the tie-break order of select_sampler).
enum class Method : std::uint8_t { kR31, kR32, kR41, kR42, kR43, kR44 };

inline constexpr std::array<Method, 6> kAllMethods = {
    Method::kR31, Method::kR32, Method::kR41, Method::kR42, Method::kR43, Method::kR44};

std::string_view to_string(Method m);
// Accepts "randgraf-3-1" or the short form "r31". Throws kInvalidArgument.
Method parse_method(std::string_view name);

struct SampledCis {
  NodeId anchor = 0;
  std::array<NodeId, 4> members{};  // members[0] == anchor
  std::uint8_t size = 0;            // 3 or 4
  Method method = Method::kR31;

  std::span<const NodeId> nodes() const { return {members.data(), size}; }
};

// ---- vertex selection primitives -------------------------------------

// Uniform index in [0, d) skipping the given positions (at most two,
// distinct, each < d). Constant time.
std::size_t random_index_excluding(std::size_t d, std::span<const std::size_t> skip,
                                   RandomSource& rng);

// Uniform over neighbors \ excluded, where excluded holds at most two
// members of neighbors. Throws kCannotSample when nothing is left.
NodeId random_vertex(std::span<const NodeId> neighbors, std::span<const NodeId> excluded,
                     RandomSource& rng);

// Index i with acc[i-1] < rnd <= acc[i] for rnd uniform on [1, acc.back()];
// i.e. i is chosen with probability proportional to its weight.
std::size_t weighted_random_index(std::span<const std::uint64_t> acc, RandomSource& rng);

NodeId weighted_random_vertex(std::span<const std::uint64_t> acc,
                              std::span<const NodeId> neighbors, RandomSource& rng);

// As weighted_random_vertex, with the weight block of `exclude` removed from
// the draw range. Throws kCannotSample when the residual weight is 0.
NodeId weighted_random_vertex_excluding(std::span<const std::uint64_t> acc,
                                        std::span<const NodeId> neighbors, NodeId exclude,
                                        RandomSource& rng);

// ---- samplers ---------------------------------------------------------

// Throws kDegreeTooSmall / kCannotSample when the method cannot run at v.
void check_can_sample(Method m, const NodeLocalStats& s);
bool can_sample(Method m, const NodeLocalStats& s);

// u, w uniform distinct neighbors of v.
SampledCis randgraf_3_1(const StatsCache& cache, NodeId v, RandomSource& rng);
// u by weight d_u - 1, w uniform on N(u) \ {v}.
SampledCis randgraf_3_2(const StatsCache& cache, NodeId v, RandomSource& rng);
// u by weight d_u - 1, w uniform on N(v) \ {u}, r uniform on N(u) \ {v}.
// Yields the triangle {v, u, w} when r == w.
SampledCis randgraf_4_1(const StatsCache& cache, NodeId v, RandomSource& rng);
// u by weight C(d_u - 1, 2), then w, r distinct uniform on N(u) \ {v}.
SampledCis randgraf_4_2(const StatsCache& cache, NodeId v, RandomSource& rng);
// u by weight two_paths(u) - d_v + 1, w in N(u) \ {v} by weight d_w - 1,
// r uniform on N(w) \ {u}. Yields the triangle {v, u, w} when r == v.
SampledCis randgraf_4_3(const StatsCache& cache, NodeId v, RandomSource& rng);
// Three distinct uniform neighbors of v.
SampledCis randgraf_4_4(const StatsCache& cache, NodeId v, RandomSource& rng);

SampledCis sample(Method m, const StatsCache& cache, NodeId v, RandomSource& rng);

// ---- sampling bias ----------------------------------------------------

// Probability that one draw of `method` at v returns one specific CIS that
// holds v at orbit i, as ways[i] / denominator.
struct BiasRatio {
  Method method = Method::kR31;
  std::array<std::uint8_t, kUndirectedOrbits> ways{};
  std::uint64_t denominator = 0;
};

struct SamplerBias {
  Method method = Method::kR31;
  std::array<double, kUndirectedOrbits> p{};  // p[0] is always 0

  double operator[](int orbit) const { return p.at(static_cast<std::size_t>(orbit)); }
};

// Selection-path multiplicities per orbit; independent of the node.
const std::array<std::uint8_t, kUndirectedOrbits>& bias_ways(Method m);
// The normalizer each method's probabilities are expressed over.
std::uint64_t bias_denominator(Method m, const NodeLocalStats& s);

// Throws kBiasUndefined when the denominator is zero.
BiasRatio bias_ratio(Method m, const NodeLocalStats& s);
SamplerBias bias_vector(Method m, const NodeLocalStats& s);

}  // namespace sand
