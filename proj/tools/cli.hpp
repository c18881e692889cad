#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subquest/subquest.hpp"

namespace subquest::cli {

using Json = nlohmann::ordered_json;

/// Bad flag combination or input that does not suit the command (exit 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string format;
  std::size_t k = 1;
  bool no_prune = false;
  bool no_priority = false;
  std::size_t max_mem_entries = 1'000'000;
  std::string spill_dir;
  std::string output;
  std::string stats_json;
  // mine
  std::size_t edges = 0;
  // iso / index
  std::string query;
  std::string index;
  std::size_t hops = 0;
  std::string out;
  unsigned threads = 1;
  // oracle
  std::string task;
  std::size_t budget_vertices = 12;
  std::size_t budget_edges = 20;
};

namespace detail {

inline std::string resolved_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  return std::filesystem::path(o.graph).extension() == ".lg" ? "lg" : "edgelist";
}

inline Graph load_graph(const Options& o) {
  return resolved_format(o) == "lg" ? load_lg(o.graph) : load_edge_list(o.graph);
}

inline Json number(double v) {
  if (std::trunc(v) == v && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

inline Json priority_json(const Priority& p) {
  Json arr = Json::array();
  for (double v : p.values()) arr.push_back(number(v));
  return arr;
}

inline Json vertices_json(const Graph& g, const std::vector<VertexId>& vs) {
  Json arr = Json::array();
  for (auto v : vs) arr.push_back(g.original_id(v));
  return arr;
}

inline Json edges_json(const Graph& g, const std::vector<EdgeRef>& es) {
  Json arr = Json::array();
  for (auto e : es) {
    auto a = g.original_id(e.u);
    auto b = g.original_id(e.v);
    arr.push_back(Json::array({std::min(a, b), std::max(a, b)}));
  }
  return arr;
}

inline Json stats_json(const ExplorationStats& s) {
  return Json{{"candidate_subgraphs", s.candidate_subgraphs},
              {"pruned_at_parent", s.pruned_at_parent},
              {"pruned_at_child", s.pruned_at_child},
              {"dequeues", s.dequeues}};
}

/// Output file, or the given stream when no path is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open output file " + path);
    stream_ = &file_;
  }

  std::ostream& get() { return *stream_; }

  void close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline void write_lines(const std::vector<Json>& records, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  for (const auto& r : records) sink.get() << r.dump() << '\n';
  sink.close();
}

struct Report {
  std::string command;
  Json config;
  ExplorationStats stats;
  std::optional<VpqStats> queue;
  std::size_t results = 0;
  double wall_ms = 0;
};

inline Json config_json(const Options& o, const std::string& command) {
  Json c{{"graph", o.graph}, {"format", resolved_format(o)}, {"k", o.k},
         {"prune", !o.no_prune}, {"priority", !o.no_priority},
         {"max_mem_entries", o.max_mem_entries}};
  if (!o.spill_dir.empty()) c["spill_dir"] = o.spill_dir;
  if (command == "mine") c["edges"] = o.edges;
  if (command == "iso") {
    c["query"] = o.query;
    if (!o.index.empty()) c["index"] = o.index;
    if (o.hops) c["hops"] = o.hops;
  }
  return c;
}

/// Summary on `err`; the JSON file omits wall time so reruns are identical.
inline void emit_report(const Report& r, const Options& o, std::ostream& err) {
  err << r.command << ": results=" << r.results << " candidates=" << r.stats.candidate_subgraphs
      << " pruned_at_parent=" << r.stats.pruned_at_parent
      << " pruned_at_child=" << r.stats.pruned_at_child << " dequeues=" << r.stats.dequeues;
  if (r.queue) err << " spills=" << r.queue->spills;
  err << " time_ms=" << r.wall_ms << '\n';
  if (o.stats_json.empty()) return;
  Json j{{"command", r.command}, {"config", r.config}, {"results", r.results},
         {"stats", stats_json(r.stats)}};
  if (r.queue) {
    j["queue"] = Json{{"spills", r.queue->spills},
                      {"records_spilled", r.queue->records_spilled},
                      {"run_reads", r.queue->run_reads},
                      {"peak_memory_entries", r.queue->peak_memory_entries}};
  }
  std::ofstream file(o.stats_json, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open stats file " + o.stats_json);
  file << j.dump(2) << '\n';
  if (!file.flush()) throw IoError("write failed on " + o.stats_json);
}

/// Runs `body` with the queue the options select, recording queue stats.
template <class T, class Body>
auto with_queue(const Options& o, Report& report, Body&& body) {
  if (o.no_priority) {
    FifoQueue<T> q;
    return body(q);
  }
  VpqConfig cfg;
  cfg.max_mem_entries = o.max_mem_entries;
  cfg.spill_dir = o.spill_dir.empty() ? default_spill_dir() : std::filesystem::path(o.spill_dir);
  VirtualPriorityQueue<T> q(cfg);
  auto result = body(q);
  report.queue = q.stats();
  return result;
}

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace detail

inline int cmd_clique(const Options& o, std::ostream& out, std::ostream& err) {
  auto start = detail::Clock::now();
  auto g = detail::load_graph(o);
  detail::Report report{"clique", detail::config_json(o, "clique"), {}, {}, 0, 0};
  CliqueComputation c;
  auto run = detail::with_queue<CliqueSubgraph>(o, report, [&](auto& q) {
    return run_basic(g, c, o.k, q, RunOptions{!o.no_prune});
  });
  std::vector<Json> records;
  for (const auto& e : run.results.entries()) {
    records.push_back(Json{{"rank", records.size() + 1},
                           {"priority", detail::priority_json(e.priority)},
                           {"vertices", detail::vertices_json(g, e.item.vertices)},
                           {"edges", detail::edges_json(g, e.item.edges)}});
  }
  detail::write_lines(records, o.output, out);
  report.stats = run.stats;
  report.results = records.size();
  report.wall_ms = detail::elapsed_ms(start);
  detail::emit_report(report, o, err);
  return 0;
}

inline int cmd_mine(const Options& o, std::ostream& out, std::ostream& err) {
  auto start = detail::Clock::now();
  auto g = detail::load_graph(o);
  if (!g.has_vertex_labels()) throw UsageError("mine needs a labeled graph (lg format)");
  detail::Report report{"mine", detail::config_json(o, "mine"), {}, {}, 0, 0};
  MiningComputation c(o.edges);
  auto run = detail::with_queue<PatternGroup>(o, report, [&](auto& q) {
    return run_aggregate(g, c, o.k, q, RunOptions{!o.no_prune});
  });
  std::vector<Json> records;
  for (const auto& e : run.results.entries()) {
    const auto& witness = e.item.members().front();
    records.push_back(Json{{"rank", records.size() + 1},
                           {"priority", detail::priority_json(e.priority)},
                           {"vertices", detail::vertices_json(g, witness.vertices)},
                           {"edges", detail::edges_json(g, witness.edges)},
                           {"pattern", to_string(e.item.key())},
                           {"frequency", e.item.frequency()}});
  }
  detail::write_lines(records, o.output, out);
  report.stats = run.stats;
  report.results = records.size();
  report.wall_ms = detail::elapsed_ms(start);
  detail::emit_report(report, o, err);
  return 0;
}

inline int cmd_iso(const Options& o, std::ostream& out, std::ostream& err) {
  auto start = detail::Clock::now();
  auto g = detail::load_graph(o);
  auto query = load_lg(o.query);
  VertexIndex idx;
  if (!o.index.empty()) {
    std::ifstream in(o.index);
    if (!in) throw IoError("cannot open index file " + o.index);
    idx = read_index(in);
    if (idx.vertex_count() > g.vertex_count()) throw Error("index has more vertices than the graph");
  } else {
    idx = build_index(g, o.hops ? o.hops : IsoComputation::required_hops(query));
  }
  detail::Report report{"iso", detail::config_json(o, "iso"), {}, {}, 0, 0};
  IsoComputation c(query, idx);
  auto run = detail::with_queue<MatchSubgraph>(o, report, [&](auto& q) {
    return run_basic(g, c, o.k, q, RunOptions{!o.no_prune});
  });
  std::vector<Json> records;
  for (const auto& e : run.results.entries()) {
    records.push_back(Json{{"rank", records.size() + 1},
                           {"priority", detail::priority_json(e.priority)},
                           {"vertices", detail::vertices_json(g, e.item.vertices)},
                           {"edges", detail::edges_json(g, e.item.edges)},
                           {"score", iso_score(e.item)}});
  }
  detail::write_lines(records, o.output, out);
  report.stats = run.stats;
  report.results = records.size();
  report.wall_ms = detail::elapsed_ms(start);
  detail::emit_report(report, o, err);
  return 0;
}

inline int cmd_index(const Options& o, std::ostream& out, std::ostream& err) {
  auto start = detail::Clock::now();
  auto g = detail::load_graph(o);
  auto idx = build_index(g, o.hops, o.threads);
  detail::Sink sink(o.out, out);
  write_index(sink.get(), idx);
  sink.close();
  err << "index: vertices=" << g.vertex_count() << " hops=" << o.hops
      << " time_ms=" << detail::elapsed_ms(start) << '\n';
  return 0;
}

inline int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  auto g = detail::load_graph(o);
  oracle::EnumerationBudget budget;
  budget.max_vertices = o.budget_vertices;
  budget.max_edges = o.budget_edges;
  std::vector<Json> records;
  if (o.task == "clique") {
    auto best = oracle::brute_max_clique(g, budget);
    records.push_back(Json{{"size", best.size}, {"vertices", detail::vertices_json(g, best.witness)}});
  } else if (o.task == "mine") {
    if (!g.has_vertex_labels()) throw UsageError("mine needs a labeled graph (lg format)");
    if (o.edges == 0) throw UsageError("--edges is required for the mine task");
    for (const auto& pc : oracle::brute_topk_patterns(g, o.edges, o.k, budget)) {
      records.push_back(Json{{"rank", records.size() + 1},
                             {"pattern", to_string(min_dfs_code(pc.pattern))},
                             {"frequency", pc.frequency}});
    }
  } else {
    if (o.query.empty()) throw UsageError("--query is required for the iso task");
    auto query = load_lg(o.query);
    auto matches = oracle::brute_iso_matches(g, query, budget);
    matches = oracle::top_k_with_ties(std::move(matches), o.k,
                                      [](const oracle::IsoMatch& m) { return m.score; });
    for (const auto& m : matches) {
      records.push_back(Json{{"rank", records.size() + 1},
                             {"score", m.score},
                             {"vertices", detail::vertices_json(g, m.subgraph.vertices)},
                             {"edges", detail::edges_json(g, m.subgraph.edges)}});
    }
  }
  detail::write_lines(records, o.output, out);
  err << "oracle " << o.task << ": results=" << records.size() << '\n';
  return 0;
}

/// Parses `argv` and runs one subcommand. Returns 0 on success, 1 on usage
/// errors and 2 on runtime errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Top-k subgraph discovery", "subquest"};
  app.require_subcommand(1);
  Options o;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "Data graph file")->required();
    sub->add_option("--format", o.format, "Input format (default: from extension)")
        ->check(CLI::IsMember({"edgelist", "lg"}));
  };
  auto add_run = [&](CLI::App* sub) {
    add_graph(sub);
    sub->add_option("--k", o.k, "Number of results")->check(CLI::PositiveNumber);
    sub->add_flag("--no-prune", o.no_prune, "Disable domination pruning");
    sub->add_flag("--no-priority", o.no_priority, "Process subgraphs in FIFO order");
    sub->add_option("--max-mem-entries", o.max_mem_entries, "In-memory queue records before spilling")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    sub->add_option("--spill-dir", o.spill_dir, "Directory for queue run files");
    sub->add_option("--output", o.output, "JSON Lines result file (default: stdout)");
    sub->add_option("--stats-json", o.stats_json, "Write run statistics as JSON");
  };

  auto* clique = app.add_subcommand("clique", "Largest cliques");
  add_run(clique);
  auto* mine = app.add_subcommand("mine", "Most frequent patterns with a given edge count");
  add_run(mine);
  mine->add_option("--edges", o.edges, "Pattern size in edges")->required()->check(CLI::PositiveNumber);
  auto* iso = app.add_subcommand("iso", "Highest-scoring subgraphs isomorphic to a query");
  add_run(iso);
  iso->add_option("--query", o.query, "Query graph (lg)")->required();
  auto* iso_index = iso->add_option("--index", o.index, "Prebuilt vertex index");
  iso->add_option("--hops", o.hops, "Index depth when building in-process")
      ->check(CLI::PositiveNumber)
      ->excludes(iso_index);
  auto* index = app.add_subcommand("index", "Build the vertex index used by iso");
  add_graph(index);
  index->add_option("--hops", o.hops, "Index depth")->required()->check(CLI::PositiveNumber);
  index->add_option("--out", o.out, "Index file (default: stdout)");
  index->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* orc = app.add_subcommand("oracle", "Brute-force reference answers for small graphs");
  add_graph(orc);
  orc->add_option("--task", o.task, "clique, mine or iso")
      ->required()
      ->check(CLI::IsMember({"clique", "mine", "iso"}));
  orc->add_option("--k", o.k, "Number of results")->check(CLI::PositiveNumber);
  orc->add_option("--edges", o.edges, "Pattern size for the mine task")->check(CLI::PositiveNumber);
  orc->add_option("--query", o.query, "Query graph for the iso task");
  orc->add_option("--output", o.output, "JSON Lines result file (default: stdout)");
  orc->add_option("--budget-vertices", o.budget_vertices, "Largest graph accepted")
      ->check(CLI::PositiveNumber);
  orc->add_option("--budget-edges", o.budget_edges, "Most edges accepted")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*clique) return cmd_clique(o, out, err);
    if (*mine) return cmd_mine(o, out, err);
    if (*iso) return cmd_iso(o, out, err);
    if (*index) return cmd_index(o, out, err);
    return cmd_oracle(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace subquest::cli
