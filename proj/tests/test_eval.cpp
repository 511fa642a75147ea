#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sand/error.hpp"
#include "sand/eval.hpp"
#include "sand/report.hpp"
#include "support/graphs.hpp"

using namespace sand;
using namespace testing;

TEST_CASE("metric examples") {
  std::vector<double> runs = {9, 11};
  CHECK(*nrmse(runs, 10) == doctest::Approx(0.1));
  CHECK_FALSE(nrmse(runs, 0).has_value());
  std::vector<double> one = {3};
  CHECK_THROWS_AS(nrmse(one, 3), Error);

  std::vector<double> a = {0.6, 0.4}, b = {0.5, 0.5};
  auto d = l1_l2(a, b);
  CHECK(d.l1 == doctest::Approx(0.2));
  CHECK(d.l2 == doctest::Approx(std::sqrt(0.02)));
  std::vector<double> scaled = {6, 4};
  CHECK(l1_l2(scaled, b).l1 == doctest::Approx(0.2));
  std::vector<double> zero = {0, 0}, three = {1, 1, 1};
  CHECK_THROWS_AS(l1_l2(zero, b), Error);
  CHECK_THROWS_AS(l1_l2(three, b), Error);

  std::vector<double> exact(30), swapped(30);
  for (int i = 0; i < 30; ++i) exact[static_cast<std::size_t>(i)] = 100 - i;
  swapped = exact;
  std::swap(swapped[4], swapped[5]);
  CHECK(topk_detection(swapped, exact, 5) == 4);
  CHECK(topk_detection(swapped, exact, 30) == 30);
  CHECK(topk_detection(exact, exact, 10) == 10);

  std::vector<double> ties = {1, 2, 2, 0};
  CHECK(top_k(ties, 2) == std::vector<std::size_t>{1, 2});
  CHECK(top_k(ties, 3) == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("modes") {
  CHECK(parse_mode("undirected") == Mode::kUndirected);
  CHECK(parse_mode("directed3") == Mode::kDirected3);
  CHECK(to_string(Mode::kDirected3) == "directed3");
  CHECK_THROWS_AS(parse_mode("both"), Error);
}

TEST_CASE("experiment on a complete graph is exact") {
  const Graph g = k4();
  StatsCache cache(g);
  ExperimentConfig config;
  config.budget = BudgetConfig::from_total(300);
  config.runs = 5;
  config.seed = 3;
  auto r = run_experiment(cache, 0, config);
  CHECK(r.has_exact);
  CHECK(r.runs == 5);
  for (const auto& o : r.orbits) {
    if (o.id == 14) {
      CHECK(o.mean == doctest::Approx(1.0));
      CHECK(*o.nrmse == doctest::Approx(0.0));
    }
    if (o.id == 5) CHECK_FALSE(o.nrmse.has_value());
  }
  REQUIRE(r.l1.has_value());
  CHECK(r.l1->mean == doctest::Approx(0.0));
}

TEST_CASE("error shrinks with the square root of the budget") {
  const Graph g = erdos_renyi(60, 0.12, 7);
  StatsCache cache(g);
  const NodeId v = g.max_degree_node();
  const NodeLocalStats& s = cache.stats(v);
  auto exact = exact_vector(exact_orbit_degrees(g, v), Mode::kUndirected);

  ExperimentConfig small;
  small.runs = 1000;
  small.seed = 11;
  small.budget = BudgetConfig::from_total(1500);
  ExperimentConfig large = small;
  large.seed = 50000;
  large.budget = BudgetConfig::from_total(3000);
  auto a = run_experiment(cache, v, small);
  auto b = run_experiment(cache, v, large);

  int checked = 0;
  for (int i = 1; i < kUndirectedOrbits; ++i) {
    double hit = 0.0;
    for (Method m : {Method::kR32, Method::kR41, Method::kR42}) {
      if (can_sample(m, s)) hit = std::max(hit, bias_vector(m, s)[i] * exact[static_cast<std::size_t>(i)]);
    }
    if (hit < 0.01) continue;
    const double ratio = *b.orbits[static_cast<std::size_t>(i)].nrmse / *a.orbits[static_cast<std::size_t>(i)].nrmse;
    CAPTURE(i);
    CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
    ++checked;
  }
  CHECK(checked >= 8);
}

TEST_CASE("runs do not depend on the worker count") {
  const Graph g = erdos_renyi(40, 0.15, 2);
  StatsCache cache(g);
  ExperimentConfig config;
  config.runs = 9;
  config.seed = 4;
  config.budget = BudgetConfig::from_total(600);
  auto one = run_many(cache, g.max_degree_node(), config);
  config.workers = 4;
  auto four = run_many(cache, g.max_degree_node(), config);
  REQUIRE(one.size() == 9);
  for (std::size_t r = 0; r < one.size(); ++r) CHECK(to_json(one[r]).dump() == to_json(four[r]).dump());
  CHECK(one[0].seed == 4);
  CHECK(one[8].seed == 12);
}

TEST_CASE("directed experiment") {
  const Graph g = random_digraph(40, 0.15, 0.25, 0.5, 3);
  StatsCache cache(g);
  ExperimentConfig config;
  config.mode = Mode::kDirected3;
  config.runs = 20;
  config.seed = 1;
  config.budget = BudgetConfig::from_total(2000);
  auto r = run_experiment(cache, g.max_degree_node(), config);
  CHECK(r.mode == "directed3");
  CHECK(r.has_exact);
  CHECK(r.orbits.size() == 30);
  REQUIRE(r.l1.has_value());
  CHECK(r.l1->mean < 0.2);
}

TEST_CASE("report serialization") {
  const Graph g = erdos_renyi(30, 0.2, 5);
  StatsCache cache(g);
  auto report = sand::sand(cache, g.max_degree_node(), BudgetConfig::from_total(900), 8);
  const Json doc = to_json(report);
  auto back = report_from_json(Json::parse(doc.dump()));
  CHECK(to_json(back).dump() == doc.dump());
  CHECK(doc["orbits"].size() == 15);
  CHECK(doc["covariances"].size() == 45);
  CHECK_THROWS_AS(report_from_json(Json::parse(R"({"node": 1})")), Error);

  std::ostringstream csv;
  write_csv(csv, report);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  CHECK(line == "kind,node,mode,seed,id,j,estimate,estimate_clamped,variance,source");
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
    ++rows;
  }
  CHECK(rows == 60);

  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("evaluation report serialization") {
  const Graph g = erdos_renyi(30, 0.2, 5);
  StatsCache cache(g);
  ExperimentConfig config;
  config.runs = 4;
  config.budget = BudgetConfig::from_total(300);
  auto r = run_experiment(cache, g.max_degree_node(), config);
  auto doc = to_json(r);
  CHECK_FALSE(doc.contains("seconds_per_run"));
  CHECK(to_json(r, true).contains("seconds_per_run"));
  CHECK(doc["orbits"].size() == 15);
  std::ostringstream csv;
  write_csv(csv, r);
  CHECK_FALSE(csv.str().empty());
}
