#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "orbit-degrees");
  std::ostringstream out, err;
  Result r;
  r.code = sand::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("orbit-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

// K4 on ids 10..13 plus a pendant 14 on 13, with a comment and a self loop.
std::string small_graph() {
  return write_file("small.txt",
                    "# comment\n10 11\n10 12\n10 13\n11 12\n11 13\n12 13\n13 14\n14 14\n");
}

// Random directed graph, 40 nodes.
std::string directed_graph() {
  std::ostringstream s;
  std::uint64_t x = 12345;
  for (int u = 0; u < 40; ++u) {
    for (int v = 0; v < 40; ++v) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      if (u != v && (x >> 33) % 100 < 10) s << u << ' ' << v << '\n';
    }
  }
  return write_file("directed.txt", s.str());
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run({}).code == sand::cli::kUsage);
  CHECK(run({"estimate"}).code == sand::cli::kUsage);
  CHECK(run({"estimate", "--graph", small_graph()}).code == sand::cli::kUsage);
  CHECK(run({"estimate", "--graph", small_graph(), "--node", "10", "--format", "xml"}).code ==
        sand::cli::kUsage);
  CHECK(run({"estimate", "--graph", small_graph(), "--node", "10", "--mode", "directed3"}).code ==
        sand::cli::kUsage);
  CHECK(run({"estimate", "--graph", small_graph(), "--node", "10", "--budget-split", "1,2"}).code ==
        sand::cli::kUsage);
  auto missing = run({"estimate", "--graph", (scratch() / "absent.txt").string(), "--node", "1"});
  CHECK(missing.code == sand::cli::kDataError);
  CHECK_FALSE(missing.err.empty());
  CHECK(run({"estimate", "--graph", write_file("bad.txt", "1 x\n"), "--node", "1"}).code ==
        sand::cli::kDataError);
  CHECK(run({"estimate", "--graph", small_graph(), "--node", "99"}).code == sand::cli::kDataError);
  CHECK(run({"exact", "--graph", small_graph(), "--node", "13", "--oracle-guard", "2"}).code ==
        sand::cli::kGuardExceeded);
  CHECK(run({"--help"}).code == sand::cli::kOk);
}

TEST_CASE("estimate") {
  auto r = run({"estimate", "--graph", small_graph(), "--node", "10", "--budget", "3000", "--seed", "5"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["node"] == 10);
  CHECK(doc["mode"] == "undirected");
  CHECK(doc["seed"] == 5);
  CHECK(doc["orbits"].size() == 15);
  CHECK(doc["orbits"][14]["estimate"].get<double>() == doctest::Approx(1.0).epsilon(0.2));
  CHECK(doc["budgets"].size() == 3);

  auto split = run({"estimate", "--graph", small_graph(), "--max-degree-node", "--budget-split",
                    "100,200,300"});
  REQUIRE(split.code == 0);
  auto sdoc = nlohmann::json::parse(split.out);
  CHECK(sdoc["node"] == 13);
  CHECK(sdoc["budgets"][1]["samples"] == 200);

  auto csv = run({"estimate", "--graph", small_graph(), "--node", "10", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("kind,node,mode,seed,id,j,", 0) == 0);

  const std::string path = (scratch() / "report.json").string();
  const std::string map = (scratch() / "ids.txt").string();
  REQUIRE(run({"estimate", "--graph", small_graph(), "--node", "10", "--output", path, "--id-map", map})
              .code == 0);
  std::ifstream f(path);
  CHECK(nlohmann::json::parse(f)["orbits"].size() == 15);
  CHECK(fs::file_size(map) > 0);
}

TEST_CASE("reports do not depend on the worker count") {
  const std::string g = directed_graph();
  for (const char* mode : {"undirected", "directed3"}) {
    auto one = run({"estimate", "--graph", g, "--directed", "--mode", mode, "--max-degree-node",
                    "--budget", "20000", "--seed", "9", "--workers", "1"});
    auto four = run({"estimate", "--graph", g, "--directed", "--mode", mode, "--max-degree-node",
                     "--budget", "20000", "--seed", "9", "--workers", "4"});
    REQUIRE(one.code == 0);
    CHECK(one.out == four.out);
  }
  auto a = run({"evaluate", "--graph", g, "--max-degree-node", "--budget", "600", "--runs", "6", "--workers", "1"});
  auto b = run({"evaluate", "--graph", g, "--max-degree-node", "--budget", "600", "--runs", "6", "--workers", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exact") {
  auto r = run({"exact", "--graph", small_graph(), "--node", "13"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["orbits"][0]["estimate"] == 4);
  CHECK(doc["orbits"][14]["estimate"] == 1);
  CHECK(doc["orbits"][11]["estimate"] == 3);
  auto d = run({"exact", "--graph", directed_graph(), "--directed", "--node", "0"});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["mode"] == "directed3");
}

TEST_CASE("evaluate") {
  auto r = run({"evaluate", "--graph", small_graph(), "--node", "10", "--budget", "300", "--runs", "3"});
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["runs"] == 3);
  CHECK_FALSE(doc.contains("seconds_per_run"));
  auto t = run({"evaluate", "--graph", small_graph(), "--node", "10", "--budget", "300", "--runs", "3", "--timing"});
  CHECK(nlohmann::json::parse(t.out).contains("seconds_per_run"));
  auto guarded = run({"evaluate", "--graph", small_graph(), "--node", "13", "--budget", "300", "--runs", "2",
                      "--oracle-guard", "1"});
  CHECK(guarded.code == 0);
  CHECK_FALSE(guarded.err.empty());
  auto csv = run({"evaluate", "--graph", small_graph(), "--node", "10", "--runs", "2", "--format", "csv"});
  CHECK(csv.code == 0);
}

TEST_CASE("orbit table and bench") {
  auto t = run({"orbit-table"});
  REQUIRE(t.code == 0);
  int rows = 0;
  std::istringstream lines(t.out);
  for (std::string line; std::getline(lines, line);) rows += !line.empty() && line[0] != '#';
  CHECK(rows == 31);

  auto b = run({"bench", "--graph", small_graph(), "--node", "13", "--budget", "1000"});
  REQUIRE(b.code == 0);
  auto doc = nlohmann::json::parse(b.out);
  CHECK(doc["methods"].size() == 6);
  auto only = run({"bench", "--graph", small_graph(), "--node", "13", "--method", "r32"});
  REQUIRE(only.code == 0);
  CHECK(nlohmann::json::parse(only.out)["methods"].size() == 1);
  CHECK(run({"bench", "--graph", small_graph(), "--node", "13", "--method", "r99"}).code == sand::cli::kUsage);
}
