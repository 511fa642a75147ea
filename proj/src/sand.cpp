#include <algorithm>
#include <exception>
#include <thread>

#include "sand/error.hpp"
#include "sand/estimator.hpp"

namespace sand {

namespace {

constexpr std::size_t idx(int orbit) { return static_cast<std::size_t>(orbit); }

// Variance of m/(K p) at true value d: d/K (1/p - d), floored at 0. A
// method that cannot run (p or K zero) only ever yields exact zeros.
double hit_variance(double d, double K, double p) {
  if (d == 0.0 || K <= 0.0 || p <= 0.0) return 0.0;
  return std::max(0.0, d / K * (1.0 / p - d));
}

double probability(Method m, const NodeLocalStats& s, int orbit) {
  const std::uint64_t den = bias_denominator(m, s);
  if (den == 0) return 0.0;
  return static_cast<double>(bias_ways(m)[idx(orbit)]) / static_cast<double>(den);
}

constexpr std::array<int, 3> kFrom41 = {5, 8, 11};
constexpr std::array<int, 2> kFrom42 = {6, 9};
constexpr std::array<int, 4> kMixed = {10, 12, 13, 14};

bool in(std::span<const int> set, int x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

constexpr std::array<std::pair<int, double>, 7> kThreePathTerms = {
    {{3, 2.0}, {8, 2.0}, {9, 2.0}, {10, 1.0}, {12, 4.0}, {13, 2.0}, {14, 6.0}}};
constexpr std::array<int, 3> kTripleTerms = {11, 13, 14};

void check_draws(const SampleTally& t, Method expected, std::uint64_t denominator) {
  if (t.method != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                "tally for " + std::string(to_string(t.method)) + " passed as " +
                    std::string(to_string(expected)));
  }
  if (denominator > 0 && t.draws == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(to_string(expected)) + " can sample at this node but has no draws");
  }
}

// Hit-rate estimate m / (K p), 0 for a method that cannot run.
double rate(std::uint64_t m, std::uint64_t K, double p) {
  if (K == 0 || p <= 0.0) return 0.0;
  return static_cast<double>(m) / (static_cast<double>(K) * p);
}

double pooled(std::uint64_t m1, std::uint64_t K1, double p1, std::uint64_t m2, std::uint64_t K2,
              double p2) {
  const double mass = (p1 > 0.0 ? static_cast<double>(K1) * p1 : 0.0) +
                      (p2 > 0.0 ? static_cast<double>(K2) * p2 : 0.0);
  if (mass <= 0.0) return 0.0;
  const double hits = static_cast<double>((p1 > 0.0 ? m1 : 0) + (p2 > 0.0 ? m2 : 0));
  return hits / mass;
}

bool saturated(const SampleTally& t, int orbit) {
  return t.draws > 0 && t.undirected[idx(orbit)] == t.draws;
}

std::vector<SampleTally> run_methods(const StatsCache& cache, NodeId v,
                                     std::span<const std::pair<Method, std::uint64_t>> plan,
                                     std::uint64_t seed, bool directed, unsigned workers) {
  const NodeLocalStats& s = cache.stats(v);
  std::vector<SampleTally> out(plan.size());
  auto job = [&](std::size_t i) {
    const auto [method, draws] = plan[i];
    if (bias_denominator(method, s) == 0 || draws == 0) {
      out[i].method = method;
      return;
    }
    RandomSource rng = RandomSource::derive(seed, static_cast<std::uint64_t>(method));
    out[i] = collect_samples(cache, v, method, draws, rng, directed);
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < plan.size(); ++i) job(i);
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    threads.emplace_back([&, i] {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

// ---- variance model -------------------------------------------------------

SandVarianceModel::SandVarianceModel(const SandPoint& point, const NodeLocalStats& stats,
                                     const BudgetConfig& budget)
    : d_(point.value),
      k32_(static_cast<double>(budget.k32)),
      k41_(static_cast<double>(budget.k41)),
      k42_(static_cast<double>(budget.k42)) {
  auto p = [&](Method m, int orbit) { return probability(m, stats, orbit); };

  variance_[idx(1)] = hit_variance(d_[idx(1)], k32_, p(Method::kR32, 1));
  for (int i : kFrom41) variance_[idx(i)] = hit_variance(d_[idx(i)], k41_, p(Method::kR41, i));
  for (int i : kFrom42) variance_[idx(i)] = hit_variance(d_[idx(i)], k42_, p(Method::kR42, i));

  auto mix = [&](int i, double k_second, Method second) {
    var_first_[idx(i)] = hit_variance(point.first[idx(i)], k41_, p(Method::kR41, i));
    var_second_[idx(i)] = hit_variance(point.second[idx(i)], k_second, p(second, i));
    lambda_first_[idx(i)] = combination_weight(var_first_[idx(i)], var_second_[idx(i)]);
    const double total = var_first_[idx(i)] + var_second_[idx(i)];
    variance_[idx(i)] = total > 0.0 ? var_first_[idx(i)] * var_second_[idx(i)] / total : 0.0;
  };
  mix(3, k32_, Method::kR32);
  for (int i : kMixed) mix(i, k42_, Method::kR42);

  variance_[idx(2)] = variance_[idx(3)];

  double v4 = 0.0;
  for (auto [j, cj] : kThreePathTerms) {
    v4 += cj * cj * variance_[idx(j)];
    for (auto [l, cl] : kThreePathTerms) {
      if (l != j) v4 += cj * cl * covariance(j, l);
    }
  }
  variance_[idx(4)] = std::max(0.0, v4);

  double v7 = 0.0;
  for (int j : kTripleTerms) {
    v7 += variance_[idx(j)];
    for (int l : kTripleTerms) {
      if (l != j) v7 += covariance(j, l);
    }
  }
  variance_[idx(7)] = std::max(0.0, v7);
}

const std::vector<int>& SandVarianceModel::covariance_orbits() {
  static const std::vector<int> kOrbits = {3, 5, 6, 8, 9, 10, 11, 12, 13, 14};
  return kOrbits;
}

double SandVarianceModel::covariance(int i, int j) const {
  const auto& ok = covariance_orbits();
  if (i == j || std::find(ok.begin(), ok.end(), i) == ok.end() ||
      std::find(ok.begin(), ok.end(), j) == ok.end()) {
    throw Error(ErrorCode::kUnsupportedPair,
                "no covariance formula for orbits " + std::to_string(i) + " and " +
                    std::to_string(j));
  }
  if (in(kMixed, i) && !in(kMixed, j)) std::swap(i, j);
  if (i == 3) std::swap(i, j);
  // Now j is 3 or a mixed orbit whenever either of them is.
  const double dd = d_[idx(i)] * d_[idx(j)];
  if (dd == 0.0) return 0.0;
  auto l1 = [&](int o) { return lambda_first_[idx(o)]; };
  auto l2 = [&](int o) { return 1.0 - lambda_first_[idx(o)]; };

  if (in(kFrom41, i) && in(kFrom41, j)) return -dd / k41_;
  if (in(kFrom42, i) && in(kFrom42, j)) return -dd / k42_;
  if (in(kFrom41, i) && j == 3) return -l1(3) * dd / k41_;
  if (in(kFrom42, i) && j == 3) return 0.0;
  if ((in(kFrom41, i) && in(kFrom42, j)) || (in(kFrom42, i) && in(kFrom41, j))) return 0.0;
  if (in(kMixed, i) && in(kMixed, j)) {
    return -l1(i) * l1(j) * dd / k41_ - l2(i) * l2(j) * dd / k42_;
  }
  if (in(kFrom41, i) && in(kMixed, j)) return -l1(j) * dd / k41_;
  if (in(kFrom42, i) && in(kMixed, j)) return -l2(j) * dd / k42_;
  if (i == 3 && in(kMixed, j)) return -l1(3) * l1(j) * dd / k41_;
  if (in(kMixed, i) && j == 3) return -l1(3) * l1(i) * dd / k41_;
  throw Error(ErrorCode::kUnsupportedPair, "unreachable covariance case");
}

// ---- undirected pipeline --------------------------------------------------

OrbitDegreeReport sand_from_tallies(const NodeLocalStats& stats, const SampleTally& r32,
                                    const SampleTally& r41, const SampleTally& r42,
                                    const SandOptions& options) {
  const std::uint64_t den32 = bias_denominator(Method::kR32, stats);
  const std::uint64_t den41 = bias_denominator(Method::kR41, stats);
  const std::uint64_t den42 = bias_denominator(Method::kR42, stats);
  check_draws(r32, Method::kR32, den32);
  check_draws(r41, Method::kR41, den41);
  check_draws(r42, Method::kR42, den42);

  BudgetConfig budget;
  budget.k32 = r32.draws;
  budget.k41 = r41.draws;
  budget.k42 = r42.draws;

  auto p = [&](Method m, int orbit) { return probability(m, stats, orbit); };
  auto single = [&](const SampleTally& t, int orbit) {
    return rate(t.undirected[idx(orbit)], t.draws, p(t.method, orbit));
  };

  SandPoint point;
  std::array<std::string, kUndirectedOrbits> source;
  auto name = [](Method m) { return std::string(to_string(m)); };

  point.value[idx(1)] = single(r32, 1);
  source[idx(1)] = den32 ? name(Method::kR32) : "structural-zero";
  for (int i : kFrom41) {
    point.value[idx(i)] = single(r41, i);
    source[idx(i)] = den41 ? name(Method::kR41) : "structural-zero";
  }
  for (int i : kFrom42) {
    point.value[idx(i)] = single(r42, i);
    source[idx(i)] = den42 ? name(Method::kR42) : "structural-zero";
  }

  auto mix_point = [&](int i, const SampleTally& second, bool have_second) {
    point.first[idx(i)] = single(r41, i);
    point.second[idx(i)] = single(second, i);
    if (options.plug_in == WeightPlugIn::kPooled) {
      const double q = pooled(r41.undirected[idx(i)], r41.draws, p(Method::kR41, i),
                              second.undirected[idx(i)], second.draws, p(second.method, i));
      // A method that cannot run contributes an exact zero whatever the
      // plug-in value, so only runnable components take the pooled rate.
      // One that hit the orbit on every draw is exact and keeps its own value.
      if (!saturated(r41, i)) point.first[idx(i)] = den41 ? q : 0.0;
      if (!saturated(second, i)) point.second[idx(i)] = have_second ? q : 0.0;
    }
    source[idx(i)] = den41 && have_second ? "combined" : "structural-zero";
  };
  mix_point(3, r32, den32 != 0);
  for (int i : kMixed) mix_point(i, r42, den42 != 0);

  // Weights come from the plug-in point; the combined values then feed
  // every covariance.
  {
    const SandVarianceModel weights(point, stats, budget);
    auto combine_at = [&](int i, const SampleTally& second) {
      const double lam = weights.weight_first(i);
      point.value[idx(i)] = lam * single(r41, i) + (1.0 - lam) * single(second, i);
    };
    combine_at(3, r32);
    for (int i : kMixed) combine_at(i, r42);
  }

  const double phi = static_cast<double>(stats.neighbor_pairs);
  const double three_paths = static_cast<double>(stats.three_paths);
  const double triples = static_cast<double>(stats.neighbor_triples);
  point.value[idx(2)] = phi - point.value[idx(3)];
  double d4 = three_paths;
  for (auto [j, cj] : kThreePathTerms) d4 -= cj * point.value[idx(j)];
  point.value[idx(4)] = d4;
  double d7 = triples;
  for (int j : kTripleTerms) d7 -= point.value[idx(j)];
  point.value[idx(7)] = d7;
  source[idx(2)] = source[idx(4)] = source[idx(7)] = "identity";

  const SandVarianceModel model(point, stats, budget);

  OrbitDegreeReport report;
  report.mode = "undirected";
  report.budgets = {{name(Method::kR32), budget.k32},
                    {name(Method::kR41), budget.k41},
                    {name(Method::kR42), budget.k42}};
  report.orbits.push_back({0, {static_cast<double>(stats.degree), 0.0, "exact"}});
  for (int i = 1; i < kUndirectedOrbits; ++i) {
    report.orbits.push_back({i, {point.value[idx(i)], model.variance(i), source[idx(i)]}});
  }
  const auto& cov = SandVarianceModel::covariance_orbits();
  for (std::size_t a = 0; a < cov.size(); ++a) {
    for (std::size_t b = a + 1; b < cov.size(); ++b) {
      report.covariances.push_back({cov[a], cov[b], model.covariance(cov[a], cov[b])});
    }
  }
  return report;
}

OrbitDegreeReport sand(const StatsCache& cache, NodeId v, const BudgetConfig& budget,
                       std::uint64_t seed, const SandOptions& options) {
  cache.graph().check_node(v);
  const std::array<std::pair<Method, std::uint64_t>, 3> plan = {
      {{Method::kR32, budget.k32}, {Method::kR41, budget.k41}, {Method::kR42, budget.k42}}};
  const auto tallies = run_methods(cache, v, plan, seed, false, options.workers);
  OrbitDegreeReport report = sand_from_tallies(cache.stats(v), tallies[0], tallies[1], tallies[2], options);
  report.node = v;
  report.seed = seed;
  return report;
}

// ---- directed pipeline ----------------------------------------------------

namespace {

double center_probability(const NodeLocalStats& s) {
  return s.neighbor_pairs ? 1.0 / static_cast<double>(s.neighbor_pairs) : 0.0;
}
double end_probability(const NodeLocalStats& s) {
  return s.two_paths ? 1.0 / static_cast<double>(s.two_paths) : 0.0;
}

}  // namespace

std::array<double, kDirectedOrbits + 1> sand3d_variances(const Sand3dPoint& point,
                                                         const NodeLocalStats& stats,
                                                         const BudgetConfig& budget) {
  const double k31 = static_cast<double>(budget.k31_directed);
  const double k32 = static_cast<double>(budget.k32_directed);
  const double p31 = center_probability(stats);
  const double p32 = end_probability(stats);
  std::array<double, kDirectedOrbits + 1> var{};
  for (int i = 1; i <= kDirectedOrbits; ++i) {
    switch (unorbit(i)) {
      case 2: var[idx(i)] = hit_variance(point.value[idx(i)], k31, p31); break;
      case 1: var[idx(i)] = hit_variance(point.value[idx(i)], k32, p32); break;
      default: {
        const double a = hit_variance(point.first[idx(i)], k31, p31);
        const double b = hit_variance(point.second[idx(i)], k32, 2.0 * p32);
        var[idx(i)] = a + b > 0.0 ? a * b / (a + b) : 0.0;
      }
    }
  }
  return var;
}

OrbitDegreeReport sand3d_from_tallies(const NodeLocalStats& stats, const SampleTally& r31,
                                      const SampleTally& r32, const SandOptions& options) {
  const std::uint64_t den31 = bias_denominator(Method::kR31, stats);
  const std::uint64_t den32 = bias_denominator(Method::kR32, stats);
  check_draws(r31, Method::kR31, den31);
  check_draws(r32, Method::kR32, den32);

  BudgetConfig budget;
  budget.k31_directed = r31.draws;
  budget.k32_directed = r32.draws;
  const double p31 = center_probability(stats);
  const double p32 = end_probability(stats);
  const double k31 = static_cast<double>(r31.draws);
  const double k32 = static_cast<double>(r32.draws);

  Sand3dPoint point;
  std::array<std::string, kDirectedOrbits + 1> source;
  for (int i = 1; i <= kDirectedOrbits; ++i) {
    const auto u = idx(i);
    switch (unorbit(i)) {
      case 2:
        point.value[u] = rate(r31.directed[u], r31.draws, p31);
        source[u] = den31 ? std::string(to_string(Method::kR31)) : "structural-zero";
        break;
      case 1:
        point.value[u] = rate(r32.directed[u], r32.draws, p32);
        source[u] = den32 ? std::string(to_string(Method::kR32)) : "structural-zero";
        break;
      default: {
        const double a = rate(r31.directed[u], r31.draws, p31);
        const double b = rate(r32.directed[u], r32.draws, 2.0 * p32);
        point.first[u] = a;
        point.second[u] = b;
        if (options.plug_in == WeightPlugIn::kPooled) {
          const double q = pooled(r31.directed[u], r31.draws, p31, r32.directed[u], r32.draws, 2.0 * p32);
          if (r31.draws == 0 || r31.directed[u] != r31.draws) point.first[u] = den31 ? q : 0.0;
          if (r32.draws == 0 || r32.directed[u] != r32.draws) point.second[u] = den32 ? q : 0.0;
        }
        const double va = hit_variance(point.first[u], k31, p31);
        const double vb = hit_variance(point.second[u], k32, 2.0 * p32);
        const double lam = combination_weight(va, vb);
        point.value[u] = lam * a + (1.0 - lam) * b;
        source[u] = den31 && den32 ? "combined" : "structural-zero";
      }
    }
  }
  const auto var = sand3d_variances(point, stats, budget);

  OrbitDegreeReport report;
  report.mode = "directed3";
  report.budgets = {{std::string(to_string(Method::kR31)), r31.draws},
                    {std::string(to_string(Method::kR32)), r32.draws}};
  for (int i = 1; i <= kDirectedOrbits; ++i) {
    report.orbits.push_back({i, {point.value[idx(i)], var[idx(i)], source[idx(i)]}});
  }
  return report;
}

OrbitDegreeReport sand3d(const StatsCache& cache, NodeId v, const BudgetConfig& budget,
                         std::uint64_t seed, const SandOptions& options) {
  if (!cache.graph().directed()) throw Error(ErrorCode::kMode, "directed pipeline needs a directed graph");
  cache.graph().check_node(v);
  const std::array<std::pair<Method, std::uint64_t>, 2> plan = {
      {{Method::kR31, budget.k31_directed}, {Method::kR32, budget.k32_directed}}};
  const auto tallies = run_methods(cache, v, plan, seed, true, options.workers);
  OrbitDegreeReport report = sand3d_from_tallies(cache.stats(v), tallies[0], tallies[1], options);
  report.node = v;
  report.seed = seed;
  return report;
}

}  // namespace sand
