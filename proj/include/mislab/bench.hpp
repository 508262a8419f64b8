#pragma once

// Benchmark protocol: a manifest of graph cells and solver configurations,
// executed as a (cell, graph, config) job matrix. Records are keyed so that
// the output is identical for any worker count.
//
// Manifest JSON:
//   { "cells":   [ {"family": "er", "n": 100, "d": 10, "count": 8, "seed": 1},
//                  {"family": "ba", "n": 300, "m": 15, "count": 8, "seed": 2},
//                  {"family": "file", "path": "g.el", "count": 1} ],
//     "configs": [ {"solver": "deg-greedy", "k": 20, "seed": 7,
//                   "params": {}, "time_limit": 0, "local_search": true,
//                   "serialize_reps": 1000, "label": "deg-greedy"} ] }
//
// Solver "external" reads solution files named by params.pattern, where
// "{cell}" and "{graph}" are substituted.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mislab/generators.hpp"
#include "mislab/independent_set.hpp"
#include "mislab/serialization.hpp"
#include "mislab/solvers.hpp"

namespace mislab {

inline constexpr std::size_t kDefaultGraphCount = 8;
inline constexpr std::size_t kDefaultBestOf = 20;

struct CellSpec {
  GraphParams params;  // params.seed is the cell's base seed
  std::size_t count = kDefaultGraphCount;

  std::string id() const { return params.cell_id(); }
  /// Parameters of the i-th graph: seed child_seed(base, i).
  GraphParams graph_params(std::size_t index) const;
};

struct RunConfig {
  std::string solver;
  nlohmann::json params = nlohmann::json::object();
  std::size_t k = kDefaultBestOf;
  double time_limit = 0.0;  // seconds, soft; 0 = none
  Seed seed = 0;
  bool local_search = false;
  std::size_t serialize_reps = 0;  // 0 = no serialization analysis
  std::string label;               // report column; defaults to solver

  std::string name() const { return label.empty() ? solver : label; }
};

struct DatasetManifest {
  std::vector<CellSpec> cells;
  std::vector<RunConfig> configs;

  static DatasetManifest from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

struct ThirdsSummary {
  double p1 = 0, p2 = 0, p3 = 0, overall = 0;
  friend bool operator==(const ThirdsSummary&, const ThirdsSummary&) = default;
};

struct BenchRecord {
  std::string cell;
  std::string family;
  std::size_t n = 0;
  std::optional<double> d;
  std::optional<std::size_t> m;
  std::size_t graph_index = 0;
  std::string solver;     // report label
  std::string solver_id;  // algorithm
  std::size_t size = 0;
  double wall_time = 0.0;
  Seed seed = 0;
  bool ls_applied = false;
  std::optional<std::size_t> ls_improvement;
  std::string status = "ok";  // ok | timeout | failed
  std::string error;
  std::optional<ThirdsSummary> thirds;

  /// Deterministic fields only; wall_time lives in the timing sidecar.
  nlohmann::json to_json() const;
  static BenchRecord from_json(const nlohmann::json& j);
  /// (cell, graph, solver, ls) key used to join timings and LS pairs.
  std::string key() const;
};

struct BenchOptions {
  int workers = 1;
  std::string cache_dir;  // empty = no graph cache
};

/// Solver spec from a config's solver id and JSON params.
SolverSpec solver_spec_from(const std::string& solver, const nlohmann::json& params);

/// Builds every graph of every cell; result[c][i] is graph i of cell c.
std::vector<std::vector<Graph>> materialize_graphs(const DatasetManifest& manifest,
                                                   const BenchOptions& options = {});

std::vector<BenchRecord> run_benchmark(const DatasetManifest& manifest,
                                       const BenchOptions& options = {});

/// Parses and certifies a solution file against g.
struct IngestedSolution {
  IndependentSet solution;
  BenchRecord record;
};
IngestedSolution ingest_solution_file(const Graph& g, std::string_view text,
                                      const std::string& solver = "external");

ThirdsSummary summarize_thirds(const SerTrace& trace);

std::string records_to_jsonl(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_jsonl(std::string_view text);
std::string timings_to_jsonl(const std::vector<BenchRecord>& records);
/// Copies wall_time from a timing sidecar into matching records.
void apply_timings(std::vector<BenchRecord>& records, std::string_view timing_jsonl);

}  // namespace mislab
