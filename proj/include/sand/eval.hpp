#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sand/estimator.hpp"
#include "sand/oracle.hpp"

namespace sand {

enum class Mode { kUndirected, kDirected3 };

std::string_view to_string(Mode m);
// "undirected" or "directed3"; throws kInvalidArgument.
Mode parse_mode(std::string_view name);

// sqrt(mean squared deviation from exact) / exact over the runs; nullopt when
// exact is 0. Throws kInvalidArgument with fewer than two runs.
std::optional<double> nrmse(std::span<const double> estimates, double exact);

struct Distances {
  double l1 = 0.0;
  double l2 = 0.0;  // Euclidean
};

// Both vectors normalized to sum 1 first. Throws kInvalidArgument on length
// mismatch or a zero sum.
Distances l1_l2(std::span<const double> estimate, std::span<const double> exact);

// Size of the intersection of the k largest entries of each vector. Ties are
// ranked by ascending index.
int topk_detection(std::span<const double> estimate, std::span<const double> exact, int k);

// Indices of the k largest entries, ties by ascending index.
std::vector<std::size_t> top_k(std::span<const double> values, int k);

struct ExperimentConfig {
  Mode mode = Mode::kUndirected;
  BudgetConfig budget;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  SandOptions options;
};

// Runs the pipeline `runs` times at v with seeds seed, seed+1, ... spread
// over `workers` threads; the result is in run order and does not depend on
// the worker count.
std::vector<OrbitDegreeReport> run_many(const StatsCache& cache, NodeId v,
                                        const ExperimentConfig& config);

struct OrbitSummary {
  int id = 0;
  std::optional<double> exact;
  double mean = 0.0;
  double empirical_variance = 0.0;  // across runs, n - 1 denominator
  double mean_reported_variance = 0.0;
  std::optional<double> nrmse;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
};

struct EvalReport {
  std::string mode;
  std::uint64_t node = 0;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<BudgetEntry> budgets;
  double seconds_per_run = 0.0;
  bool has_exact = false;
  std::vector<OrbitSummary> orbits;
  // Filled only when exact counts are known.
  std::optional<MomentSummary> l1;
  std::optional<MomentSummary> l2;
  std::vector<std::pair<int, double>> topk_mean_hits;  // k -> mean hits over runs
};

// Summaries of the reports; metrics against `exact` when given (orbit ids
// index into it directly).
EvalReport summarize(std::span<const OrbitDegreeReport> reports, const std::vector<double>* exact);

// Orbit values of a report as a vector indexed by orbit id.
std::vector<double> orbit_vector(const OrbitDegreeReport& report);

// Exact counts as a vector indexed by orbit id for the given mode.
std::vector<double> exact_vector(const OrbitCounts& counts, Mode mode);

// Repeated runs plus metrics. Exact metrics are skipped when the oracle guard
// refuses the node.
EvalReport run_experiment(const StatsCache& cache, NodeId v, const ExperimentConfig& config,
                          std::uint64_t oracle_guard = kDefaultOracleGuard);

}  // namespace sand
