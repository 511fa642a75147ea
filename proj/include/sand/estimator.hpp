#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sand/orbit.hpp"
#include "sand/sampler.hpp"
#include "sand/stats.hpp"

namespace sand {

// ---- single-set estimation and combination ----------------------------

struct Estimate {
  double value = 0.0;     // raw, may be negative for identity-derived orbits
  double variance = 0.0;  // plug-in, never negative
  std::string source;     // method name, "combined", "identity", "structural-zero", "exact"

  double clamped() const { return value < 0.0 ? 0.0 : value; }
};

// m hits out of K draws, each hit having probability p per member:
// value m / (K p), variance value/K * (1/p - value) floored at 0.
// Throws kEstimatorUndefined when K == 0 or p <= 0.
Estimate estimate_single(std::uint64_t m, std::uint64_t K, double p);

// Inverse-variance weighting of two independent unbiased estimates. A zero
// variance estimate is exact and wins; two exact estimates must agree
// (kInconsistentEstimates otherwise).
Estimate combine(const Estimate& a, const Estimate& b);

// Weight on `a` when combining estimates with variances var_a and var_b;
// equal weights when both are zero.
double combination_weight(double var_a, double var_b);

// ---- budgets and tallies -----------------------------------------------

struct BudgetConfig {
  // Undirected pipeline.
  std::uint64_t k32 = 0;
  std::uint64_t k41 = 0;
  std::uint64_t k42 = 0;
  // Directed 3-node pipeline.
  std::uint64_t k31_directed = 0;
  std::uint64_t k32_directed = 0;

  // Splits `total` evenly over each pipeline's methods, remainder going to
  // the earlier methods.
  static BudgetConfig from_total(std::uint64_t total);
};

struct SampleTally {
  Method method = Method::kR31;
  std::uint64_t draws = 0;
  std::array<std::uint64_t, kUndirectedOrbits> undirected{};
  std::array<std::uint64_t, kDirectedOrbits + 1> directed{};  // index 1..30

  void merge(const SampleTally& other);
};

// Draws `draws` samples with `method` at v and counts the anchor's orbit of
// each (directed 3-node orbits too when `directed` is set).
SampleTally collect_samples(const StatsCache& cache, NodeId v, Method method,
                            std::uint64_t draws, RandomSource& rng, bool directed = false);

// ---- reports -------------------------------------------------------------

struct OrbitEstimate {
  int id = 0;
  Estimate estimate;
};

struct CovarianceEntry {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct BudgetEntry {
  std::string method;
  std::uint64_t samples = 0;
};

struct OrbitDegreeReport {
  std::uint64_t node = 0;  // id as given in the input file
  std::string mode;        // "undirected" or "directed3"
  std::vector<BudgetEntry> budgets;
  std::uint64_t seed = 0;
  std::vector<OrbitEstimate> orbits;  // ascending id
  std::vector<CovarianceEntry> covariances;

  // Throws kOrbitOutOfRange when the id is not in the report.
  const Estimate& orbit(int id) const;
};

// ---- undirected pipeline -------------------------------------------------

enum class WeightPlugIn {
  // Each component's variance is evaluated at that component's own estimate.
  kPerComponent,
  // Both components' variances are evaluated at the pooled hit-rate
  // estimate (m1 + m2) / (K1 p1 + K2 p2), except that a component which hit
  // the orbit on every draw keeps its own (exact) estimate.
  kPooled,
};

struct SandOptions {
  WeightPlugIn plug_in = WeightPlugIn::kPooled;
  unsigned workers = 1;  // method loops run concurrently when > 1
};

// Values at which the variance formulas are evaluated. `value` is the final
// estimate of every orbit (single-method variances and all covariances use
// it). For the combined orbits (3: R41 and R32; 10, 12, 13, 14: R41 and R42)
// `first` and `second` are where each component's variance is evaluated.
// Passing the true orbit degrees everywhere gives the exact variances.
struct SandPoint {
  std::array<double, kUndirectedOrbits> value{};
  std::array<double, kUndirectedOrbits> first{};
  std::array<double, kUndirectedOrbits> second{};
};

class SandVarianceModel {
 public:
  SandVarianceModel(const SandPoint& point, const NodeLocalStats& stats,
                    const BudgetConfig& budget);

  double variance(int orbit) const { return variance_.at(static_cast<std::size_t>(orbit)); }
  double weight_first(int orbit) const { return lambda_first_.at(static_cast<std::size_t>(orbit)); }
  double weight_second(int orbit) const { return 1.0 - weight_first(orbit); }
  double component_variance_first(int orbit) const { return var_first_.at(static_cast<std::size_t>(orbit)); }
  double component_variance_second(int orbit) const { return var_second_.at(static_cast<std::size_t>(orbit)); }

  // Covariance of two estimated orbits from {3, 5, 6, 8, ..., 14}, i != j.
  // Throws kUnsupportedPair for anything else.
  double covariance(int i, int j) const;

  // Orbits the covariance formulas cover.
  static const std::vector<int>& covariance_orbits();

 private:
  std::array<double, kUndirectedOrbits> d_{};
  std::array<double, kUndirectedOrbits> variance_{};
  std::array<double, kUndirectedOrbits> lambda_first_{};
  std::array<double, kUndirectedOrbits> var_first_{};
  std::array<double, kUndirectedOrbits> var_second_{};
  double k32_ = 0.0;
  double k41_ = 0.0;
  double k42_ = 0.0;
};

// Builds the undirected report from the three tallies. Missing methods
// (normalizer zero at v) must be passed as tallies with zero draws.
OrbitDegreeReport sand_from_tallies(const NodeLocalStats& stats, const SampleTally& r32,
                                    const SampleTally& r41, const SampleTally& r42,
                                    const SandOptions& options = {});

// Full undirected pipeline at v. Each method draws from its own stream
// derived from `seed`, so the report does not depend on `options.workers`.
OrbitDegreeReport sand(const StatsCache& cache, NodeId v, const BudgetConfig& budget,
                       std::uint64_t seed, const SandOptions& options = {});

// ---- directed 3-node pipeline -------------------------------------------

struct Sand3dPoint {
  std::array<double, kDirectedOrbits + 1> value{};
  std::array<double, kDirectedOrbits + 1> first{};   // from R31
  std::array<double, kDirectedOrbits + 1> second{};  // from R32
};

// Variances of the directed estimates evaluated at `point`.
std::array<double, kDirectedOrbits + 1> sand3d_variances(const Sand3dPoint& point,
                                                         const NodeLocalStats& stats,
                                                         const BudgetConfig& budget);

OrbitDegreeReport sand3d_from_tallies(const NodeLocalStats& stats, const SampleTally& r31,
                                      const SampleTally& r32, const SandOptions& options = {});

// Throws kMode when the graph is undirected.
OrbitDegreeReport sand3d(const StatsCache& cache, NodeId v, const BudgetConfig& budget,
                         std::uint64_t seed, const SandOptions& options = {});

// ---- sampler selection ---------------------------------------------------

struct SamplerCandidate {
  Method method = Method::kR31;
  double variance = 0.0;            // plug-in variance at a common budget
  double seconds_per_sample = 0.0;  // measured
};

// Method with the smallest variance * time; ties go to the earlier method.
// Throws kEmptyInput on an empty list, kInvalidArgument on time <= 0.
Method select_sampler(std::span<const SamplerCandidate> candidates);

// Mean seconds per draw over `draws` draws after a short warm-up.
double measure_sample_time(const StatsCache& cache, NodeId v, Method method,
                           std::uint64_t draws, RandomSource& rng);

// Estimates one undirected orbit alone: every method that can sample it at
// v runs a pilot of `pilot` draws, the cheapest per unit variance is kept and
// drawn `budget` times.
Estimate estimate_orbit(const StatsCache& cache, NodeId v, OrbitId orbit,
                        std::uint64_t budget, std::uint64_t seed, std::uint64_t pilot = 10000);

}  // namespace sand
