#include "sand/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "sand/error.hpp"

namespace sand {

std::string_view to_string(Mode m) {
  return m == Mode::kUndirected ? "undirected" : "directed3";
}

Mode parse_mode(std::string_view name) {
  if (name == "undirected") return Mode::kUndirected;
  if (name == "directed3") return Mode::kDirected3;
  throw Error(ErrorCode::kInvalidArgument, "unknown mode '" + std::string(name) + "'");
}

std::optional<double> nrmse(std::span<const double> estimates, double exact) {
  if (estimates.size() < 2) throw Error(ErrorCode::kInvalidArgument, "NRMSE needs at least two runs");
  if (exact == 0.0) return std::nullopt;
  double sq = 0.0;
  for (double e : estimates) sq += (e - exact) * (e - exact);
  return std::sqrt(sq / static_cast<double>(estimates.size())) / exact;
}

Distances l1_l2(std::span<const double> estimate, std::span<const double> exact) {
  if (estimate.size() != exact.size()) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  const double se = std::accumulate(estimate.begin(), estimate.end(), 0.0);
  const double sx = std::accumulate(exact.begin(), exact.end(), 0.0);
  if (se == 0.0 || sx == 0.0) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero-sum vector");
  Distances d;
  double sq = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double diff = estimate[i] / se - exact[i] / sx;
    d.l1 += std::abs(diff);
    sq += diff * diff;
  }
  d.l2 = std::sqrt(sq);
  return d;
}

std::vector<std::size_t> top_k(std::span<const double> values, int k) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(k, 0))));
  return order;
}

int topk_detection(std::span<const double> estimate, std::span<const double> exact, int k) {
  if (estimate.size() != exact.size()) throw Error(ErrorCode::kInvalidArgument, "vector length mismatch");
  if (k < 0 || static_cast<std::size_t>(k) > exact.size()) {
    throw Error(ErrorCode::kInvalidArgument, "k outside 0.." + std::to_string(exact.size()));
  }
  auto a = top_k(estimate, k);
  auto b = top_k(exact, k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return static_cast<int>(both.size());
}

std::vector<OrbitDegreeReport> run_many(const StatsCache& cache, NodeId v,
                                        const ExperimentConfig& config) {
  std::vector<OrbitDegreeReport> out(config.runs);
  SandOptions inner = config.options;
  inner.workers = 1;
  auto one = [&](std::uint64_t r) {
    const std::uint64_t seed = config.seed + r;
    out[r] = config.mode == Mode::kUndirected ? sand(cache, v, config.budget, seed, inner)
                                              : sand3d(cache, v, config.budget, seed, inner);
  };
  const unsigned workers = std::max(1u, config.workers);
  if (workers == 1 || config.runs < 2) {
    for (std::uint64_t r = 0; r < config.runs; ++r) one(r);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t r = next++; r < config.runs && !failed; r = next++) {
        try {
          one(r);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
      (void)w;
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> orbit_vector(const OrbitDegreeReport& report) {
  int top = 0;
  for (const auto& o : report.orbits) top = std::max(top, o.id);
  std::vector<double> v(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto& o : report.orbits) v[static_cast<std::size_t>(o.id)] = o.estimate.value;
  return v;
}

std::vector<double> exact_vector(const OrbitCounts& counts, Mode mode) {
  if (mode == Mode::kUndirected) return {counts.undirected.begin(), counts.undirected.end()};
  if (!counts.directed3) throw Error(ErrorCode::kMode, "counts carry no directed orbits");
  return {counts.directed3->begin(), counts.directed3->end()};
}

EvalReport summarize(std::span<const OrbitDegreeReport> reports, const std::vector<double>* exact) {
  if (reports.empty()) throw Error(ErrorCode::kEmptyInput, "no runs to summarize");
  EvalReport e;
  const auto& first = reports.front();
  e.mode = first.mode;
  e.node = first.node;
  e.runs = reports.size();
  e.seed = first.seed;
  e.budgets = first.budgets;
  e.has_exact = exact != nullptr;

  for (std::size_t k = 0; k < first.orbits.size(); ++k) {
    OrbitSummary s;
    s.id = first.orbits[k].id;
    std::vector<double> values;
    values.reserve(reports.size());
    for (const auto& r : reports) {
      values.push_back(r.orbits.at(k).estimate.value);
      s.mean_reported_variance += r.orbits[k].estimate.variance;
    }
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    s.mean_reported_variance /= n;
    if (values.size() > 1) {
      double sq = 0.0;
      for (double x : values) sq += (x - s.mean) * (x - s.mean);
      s.empirical_variance = sq / (n - 1.0);
    }
    if (exact != nullptr) {
      s.exact = exact->at(static_cast<std::size_t>(s.id));
      if (values.size() > 1) s.nrmse = nrmse(values, *s.exact);
    }
    e.orbits.push_back(s);
  }

  if (exact != nullptr) {
    // Distances and rankings skip orbit 0 (the degree, known exactly).
    constexpr std::size_t lo = 1;
    std::span<const double> truth(exact->data() + lo, exact->size() - lo);
    const double truth_sum = std::accumulate(truth.begin(), truth.end(), 0.0);
    std::vector<Distances> dist;
    std::array<double, 3> hits{};
    constexpr std::array<int, 3> kTops = {5, 10, 15};
    for (const auto& r : reports) {
      const auto est = orbit_vector(r);
      std::span<const double> guess(est.data() + lo, est.size() - lo);
      const double guess_sum = std::accumulate(guess.begin(), guess.end(), 0.0);
      if (truth_sum > 0.0 && guess_sum > 0.0) dist.push_back(l1_l2(guess, truth));
      for (std::size_t t = 0; t < kTops.size(); ++t) {
        if (static_cast<std::size_t>(kTops[t]) <= truth.size()) hits[t] += topk_detection(guess, truth, kTops[t]);
      }
    }
    if (!dist.empty()) {
      auto moments = [&](auto field) {
        MomentSummary m;
        for (const auto& d : dist) m.mean += field(d);
        m.mean /= static_cast<double>(dist.size());
        for (const auto& d : dist) m.variance += (field(d) - m.mean) * (field(d) - m.mean);
        if (dist.size() > 1) m.variance /= static_cast<double>(dist.size() - 1);
        return m;
      };
      e.l1 = moments([](const Distances& d) { return d.l1; });
      e.l2 = moments([](const Distances& d) { return d.l2; });
    }
    for (std::size_t t = 0; t < kTops.size(); ++t) {
      if (static_cast<std::size_t>(kTops[t]) <= truth.size()) {
        e.topk_mean_hits.emplace_back(kTops[t], hits[t] / static_cast<double>(reports.size()));
      }
    }
  }
  return e;
}

EvalReport run_experiment(const StatsCache& cache, NodeId v, const ExperimentConfig& config,
                          std::uint64_t oracle_guard) {
  if (config.runs == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one run");
  if (config.mode == Mode::kDirected3 && !cache.graph().directed()) {
    throw Error(ErrorCode::kMode, "directed3 mode needs a directed graph");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_many(cache, v, config);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  std::optional<std::vector<double>> exact;
  try {
    exact = exact_vector(exact_orbit_degrees(cache.graph(), v, oracle_guard), config.mode);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kGuardExceeded) throw;
  }
  EvalReport e = summarize(reports, exact ? &*exact : nullptr);
  e.seconds_per_run = elapsed.count() / static_cast<double>(config.runs);
  return e;
}

}  // namespace sand
