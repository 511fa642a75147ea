#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sand/error.hpp"
#include "sand/eval.hpp"
#include "sand/oracle.hpp"
#include "sand/report.hpp"

namespace sand::cli {

namespace {

struct GraphArgs {
  std::string path;
  bool directed = false;
  std::string id_map;
};

struct NodeArgs {
  std::int64_t node = -1;
  bool max_degree = false;
};

struct OutputArgs {
  std::string path;
  std::string format = "json";
};

struct Options {
  GraphArgs graph;
  NodeArgs node;
  OutputArgs output;
  std::string mode;
  std::uint64_t budget = 100000;
  std::vector<std::uint64_t> split;
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  std::uint64_t guard = kDefaultOracleGuard;
  unsigned workers = 1;
  std::string plug_in = "pooled";
  std::string method;
  bool timing = false;
};

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph.path, "edge list file (SNAP format)")->required();
  cmd->add_flag("--directed", o.graph.directed, "read each line as an arc u -> v");
  cmd->add_option("--id-map", o.graph.id_map, "write the original/dense id map here");
}

void add_node_flags(CLI::App* cmd, Options& o) {
  auto* node = cmd->add_option("--node", o.node.node, "anchor node (id as in the file)");
  auto* top = cmd->add_flag("--max-degree-node", o.node.max_degree, "anchor the highest-degree node");
  node->excludes(top);
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output.path, "write the report here instead of stdout");
  cmd->add_option("--format", o.output.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_mode_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "undirected or directed3 (default: directed3 with --directed)")
      ->check(CLI::IsMember({"undirected", "directed3"}));
}

void add_budget_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--budget", o.budget, "total samples, split evenly over the pipeline's methods");
  cmd->add_option("--budget-split", o.split,
                  "explicit per-method samples: K32,K41,K42 (undirected) or K31,K32 (directed3)")
      ->delimiter(',');
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--plug-in", o.plug_in, "combination weights: pooled or per-component")
      ->check(CLI::IsMember({"pooled", "per-component"}));
}

Mode resolve_mode(const Options& o) {
  if (o.mode.empty()) return o.graph.directed ? Mode::kDirected3 : Mode::kUndirected;
  const Mode m = parse_mode(o.mode);
  if (m == Mode::kDirected3 && !o.graph.directed) {
    throw Error(ErrorCode::kMode, "--mode directed3 needs --directed");
  }
  return m;
}

BudgetConfig resolve_budget(const Options& o, Mode mode) {
  BudgetConfig b = BudgetConfig::from_total(o.budget);
  if (o.split.empty()) return b;
  if (mode == Mode::kUndirected) {
    if (o.split.size() != 3) throw Error(ErrorCode::kInvalidArgument, "--budget-split needs K32,K41,K42");
    b.k32 = o.split[0];
    b.k41 = o.split[1];
    b.k42 = o.split[2];
  } else {
    if (o.split.size() != 2) throw Error(ErrorCode::kInvalidArgument, "--budget-split needs K31,K32");
    b.k31_directed = o.split[0];
    b.k32_directed = o.split[1];
  }
  return b;
}

SandOptions resolve_options(const Options& o) {
  SandOptions s;
  s.plug_in = o.plug_in == "per-component" ? WeightPlugIn::kPerComponent : WeightPlugIn::kPooled;
  s.workers = o.workers;
  return s;
}

LoadedGraph load(const Options& o) {
  LoadedGraph g = load_edge_list(std::filesystem::path(o.graph.path), o.graph.directed);
  if (!o.graph.id_map.empty()) {
    std::ofstream f(o.graph.id_map);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + o.graph.id_map);
    g.ids.save(f);
  }
  return g;
}

NodeId resolve_node(const Options& o, const LoadedGraph& g) {
  if (o.node.max_degree) return g.graph.max_degree_node();
  if (o.node.node < 0) throw Error(ErrorCode::kInvalidArgument, "give --node or --max-degree-node");
  return g.ids.dense(static_cast<std::uint64_t>(o.node.node));
}

template <class Write>
void emit(const Options& o, std::ostream& out, Write&& write) {
  if (o.output.path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(o.output.path);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + o.output.path);
  write(f);
}

void emit_report(const Options& o, std::ostream& out, const OrbitDegreeReport& r) {
  emit(o, out, [&](std::ostream& s) {
    if (o.output.format == "csv") {
      write_csv(s, r);
    } else {
      s << to_json(r).dump(2) << '\n';
    }
  });
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const LoadedGraph g = load(o);
  const Mode mode = resolve_mode(o);
  const NodeId v = resolve_node(o, g);
  const StatsCache cache(g.graph);
  OrbitDegreeReport r = mode == Mode::kUndirected
                            ? sand(cache, v, resolve_budget(o, mode), o.seed, resolve_options(o))
                            : sand3d(cache, v, resolve_budget(o, mode), o.seed, resolve_options(o));
  r.node = g.ids.original(v);
  emit_report(o, out, r);
  return kOk;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const LoadedGraph g = load(o);
  const Mode mode = resolve_mode(o);
  const NodeId v = resolve_node(o, g);
  OrbitDegreeReport r = exact_report(exact_orbit_degrees(g.graph, v, o.guard), mode == Mode::kDirected3);
  r.node = g.ids.original(v);
  r.seed = o.seed;
  emit_report(o, out, r);
  return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  const LoadedGraph g = load(o);
  ExperimentConfig cfg;
  cfg.mode = resolve_mode(o);
  const NodeId v = resolve_node(o, g);
  cfg.budget = resolve_budget(o, cfg.mode);
  cfg.runs = o.runs;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  cfg.options = resolve_options(o);
  const StatsCache cache(g.graph);
  EvalReport e = run_experiment(cache, v, cfg, o.guard);
  e.node = g.ids.original(v);
  if (!e.has_exact) err << "warning: oracle guard exceeded, reporting estimates only\n";
  emit(o, out, [&](std::ostream& s) {
    if (o.output.format == "csv") {
      write_csv(s, e);
    } else {
      s << to_json(e, o.timing).dump(2) << '\n';
    }
  });
  return kOk;
}

int cmd_orbit_table(const Options& o, std::ostream& out) {
  emit(o, out, [&](std::ostream& s) {
    s << "# directed 3-node orbits; codes: > out, < in, = mutual\n";
    s << "# path-end: (anchor-mid, mid-far); path-center: anchor's two edges; triangle: (anchor-a, anchor-b, a-b)\n";
    s << "id\tclass\tcode\tundirected\n";
    for (const auto& row : directed_orbit_table()) {
      std::string code;
      for (Direction d : row.code) code += direction_symbol(d);
      s << row.id << '\t' << to_string(row.cls) << '\t' << code << '\t' << row.undirected << '\n';
    }
  });
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const LoadedGraph g = load(o);
  const NodeId v = resolve_node(o, g);
  const StatsCache cache(g.graph);
  std::vector<Method> methods;
  if (o.method.empty()) {
    methods.assign(kAllMethods.begin(), kAllMethods.end());
  } else {
    methods.push_back(parse_method(o.method));
  }
  const std::uint64_t draws = std::max<std::uint64_t>(o.budget, 1);
  emit(o, out, [&](std::ostream& s) {
    Json rows = Json::array();
    for (Method m : methods) {
      Json row = {{"method", std::string(to_string(m))}};
      if (!can_sample(m, cache.stats(v))) {
        row["samples_per_second"] = nullptr;
      } else {
        RandomSource rng = RandomSource::derive(o.seed, static_cast<std::uint64_t>(m));
        row["samples_per_second"] = 1.0 / measure_sample_time(cache, v, m, draws, rng);
      }
      rows.push_back(row);
    }
    Json doc = {{"node", g.ids.original(v)}, {"draws", draws}, {"methods", rows}};
    s << doc.dump(2) << '\n';
  });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Per-node graphlet orbit degree estimation"};
  app.require_subcommand(1);

  auto* estimate = app.add_subcommand("estimate", "sample and estimate orbit degrees at one node");
  add_graph_flags(estimate, o);
  add_node_flags(estimate, o);
  add_mode_flag(estimate, o);
  add_budget_flags(estimate, o);
  add_output_flags(estimate, o);

  auto* exact = app.add_subcommand("exact", "exact orbit degrees by enumeration");
  add_graph_flags(exact, o);
  add_node_flags(exact, o);
  add_mode_flag(exact, o);
  add_output_flags(exact, o);
  exact->add_option("--oracle-guard", o.guard, "refuse nodes with more candidate subgraphs");
  exact->add_option("--seed", o.seed, "recorded in the report");

  auto* evaluate = app.add_subcommand("evaluate", "repeated runs scored against the exact counts");
  add_graph_flags(evaluate, o);
  add_node_flags(evaluate, o);
  add_mode_flag(evaluate, o);
  add_budget_flags(evaluate, o);
  add_output_flags(evaluate, o);
  evaluate->add_option("--runs", o.runs, "number of runs (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
  evaluate->add_option("--oracle-guard", o.guard, "skip exact metrics above this many candidate subgraphs");
  evaluate->add_flag("--timing", o.timing, "include wall-clock seconds per run");

  auto* table = app.add_subcommand("orbit-table", "list directed orbit ids and their canonical codes");
  table->add_option("--output", o.output.path, "write the table here instead of stdout");

  auto* bench = app.add_subcommand("bench", "per-method sampling throughput at one node");
  add_graph_flags(bench, o);
  add_node_flags(bench, o);
  bench->add_option("--budget", o.budget, "timed draws per method");
  bench->add_option("--seed", o.seed, "random seed");
  bench->add_option("--method", o.method, "only this method (e.g. r32)");
  bench->add_option("--output", o.output.path, "write the result here instead of stdout");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*estimate) return cmd_estimate(o, out);
    if (*exact) return cmd_exact(o, out);
    if (*evaluate) return cmd_evaluate(o, out, err);
    if (*table) return cmd_orbit_table(o, out);
    if (*bench) return cmd_bench(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::kGuardExceeded) return kGuardExceeded;
    if (e.code() == ErrorCode::kInvalidArgument || e.code() == ErrorCode::kMode) return kUsage;
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace sand::cli
