#include "sand/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sand/error.hpp"

namespace sand {

Estimate estimate_single(std::uint64_t m, std::uint64_t K, double p) {
  if (K == 0) throw Error(ErrorCode::kEstimatorUndefined, "estimate needs at least one draw");
  if (!(p > 0.0)) throw Error(ErrorCode::kEstimatorUndefined, "estimate needs p > 0");
  if (m > K) throw Error(ErrorCode::kInvalidArgument, "more hits than draws");
  Estimate e;
  const double k = static_cast<double>(K);
  e.value = static_cast<double>(m) / (k * p);
  e.variance = std::max(0.0, e.value / k * (1.0 / p - e.value));
  return e;
}

double combination_weight(double var_a, double var_b) {
  const double total = var_a + var_b;
  if (total <= 0.0) return 0.5;
  return var_b / total;
}

Estimate combine(const Estimate& a, const Estimate& b) {
  if (!std::isfinite(a.variance) || !std::isfinite(b.variance) || a.variance < 0.0 ||
      b.variance < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "combine needs finite non-negative variances");
  }
  if (a.variance == 0.0 && b.variance == 0.0) {
    const double scale = std::max({1.0, std::abs(a.value), std::abs(b.value)});
    if (std::abs(a.value - b.value) > 1e-12 * scale) {
      throw Error(ErrorCode::kInconsistentEstimates,
                  "two exact estimates disagree: " + std::to_string(a.value) + " vs " +
                      std::to_string(b.value));
    }
    return a;
  }
  if (a.variance == 0.0) return a;
  if (b.variance == 0.0) return b;
  const double lambda = combination_weight(a.variance, b.variance);
  Estimate out;
  out.value = lambda * a.value + (1.0 - lambda) * b.value;
  out.variance = a.variance * b.variance / (a.variance + b.variance);
  out.source = "combined";
  return out;
}

BudgetConfig BudgetConfig::from_total(std::uint64_t total) {
  BudgetConfig b;
  b.k32 = total / 3 + (total % 3 > 0 ? 1 : 0);
  b.k41 = total / 3 + (total % 3 > 1 ? 1 : 0);
  b.k42 = total / 3;
  b.k31_directed = total / 2 + total % 2;
  b.k32_directed = total / 2;
  return b;
}

void SampleTally::merge(const SampleTally& other) {
  if (other.method != method) throw Error(ErrorCode::kInvalidArgument, "merging tallies of different methods");
  draws += other.draws;
  for (std::size_t i = 0; i < undirected.size(); ++i) undirected[i] += other.undirected[i];
  for (std::size_t i = 0; i < directed.size(); ++i) directed[i] += other.directed[i];
}

SampleTally collect_samples(const StatsCache& cache, NodeId v, Method method,
                            std::uint64_t draws, RandomSource& rng, bool directed) {
  const Graph& g = cache.graph();
  if (directed && !g.directed()) throw Error(ErrorCode::kMode, "directed tally on an undirected graph");
  check_can_sample(method, cache.stats(v));
  SampleTally t;
  t.method = method;
  t.draws = draws;
  for (std::uint64_t k = 0; k < draws; ++k) {
    const SampledCis s = sample(method, cache, v, rng);
    ++t.undirected[static_cast<std::size_t>(classify_undirected(g, v, s.nodes()))];
    if (directed && s.size == 3) {
      ++t.directed[static_cast<std::size_t>(classify_directed3(g, v, s.nodes()).id)];
    }
  }
  return t;
}

const Estimate& OrbitDegreeReport::orbit(int id) const {
  for (const auto& o : orbits) {
    if (o.id == id) return o.estimate;
  }
  throw Error(ErrorCode::kOrbitOutOfRange, "orbit " + std::to_string(id) + " not in report");
}

Method select_sampler(std::span<const SamplerCandidate> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::kEmptyInput, "no sampler candidates");
  const SamplerCandidate* best = nullptr;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    if (!(c.seconds_per_sample > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "per-sample time must be positive");
    }
    const double cost = c.variance * c.seconds_per_sample;
    if (best == nullptr || cost < best_cost ||
        (cost == best_cost && static_cast<int>(c.method) < static_cast<int>(best->method))) {
      best = &c;
      best_cost = cost;
    }
  }
  return best->method;
}

double measure_sample_time(const StatsCache& cache, NodeId v, Method method,
                           std::uint64_t draws, RandomSource& rng) {
  if (draws == 0) throw Error(ErrorCode::kInvalidArgument, "timing needs at least one draw");
  check_can_sample(method, cache.stats(v));
  // Warm caches (neighbor prefix arrays, branch predictors) first.
  NodeId sink = 0;
  for (std::uint64_t k = 0; k < std::max<std::uint64_t>(draws / 10, 1); ++k) {
    sink ^= sample(method, cache, v, rng).members[1];
  }
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t k = 0; k < draws; ++k) {
    sink ^= sample(method, cache, v, rng).members[1];
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  volatile NodeId keep = sink;
  (void)keep;
  return std::max(elapsed.count() / static_cast<double>(draws), 1e-12);
}

Estimate estimate_orbit(const StatsCache& cache, NodeId v, OrbitId orbit, std::uint64_t budget,
                        std::uint64_t seed, std::uint64_t pilot) {
  if (orbit < 0 || orbit >= kUndirectedOrbits) {
    throw Error(ErrorCode::kOrbitOutOfRange, "undirected orbit outside 0..14");
  }
  const NodeLocalStats& s = cache.stats(v);
  if (orbit == 0) return {static_cast<double>(s.degree), 0.0, "exact"};
  if (budget == 0) throw Error(ErrorCode::kEstimatorUndefined, "estimate needs at least one draw");

  std::vector<SamplerCandidate> candidates;
  for (Method m : kAllMethods) {
    if (bias_ways(m)[static_cast<std::size_t>(orbit)] == 0 || !can_sample(m, s)) continue;
    RandomSource rng = RandomSource::derive(seed, 100 + static_cast<std::uint64_t>(m));
    const SampleTally t = collect_samples(cache, v, m, pilot, rng);
    const double p = bias_vector(m, s)[orbit];
    Estimate e = estimate_single(t.undirected[static_cast<std::size_t>(orbit)], pilot, p);
    const double seconds = measure_sample_time(cache, v, m, std::max<std::uint64_t>(pilot, 1), rng);
    candidates.push_back({m, e.variance, seconds});
  }
  if (candidates.empty()) return {0.0, 0.0, "structural-zero"};

  const Method chosen = select_sampler(candidates);
  RandomSource rng = RandomSource::derive(seed, static_cast<std::uint64_t>(chosen));
  const SampleTally t = collect_samples(cache, v, chosen, budget, rng);
  Estimate e = estimate_single(t.undirected[static_cast<std::size_t>(orbit)], budget,
                               bias_vector(chosen, s)[orbit]);
  e.source = std::string(to_string(chosen));
  return e;
}

}  // namespace sand
