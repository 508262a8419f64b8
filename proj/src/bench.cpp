#include "mislab/bench.hpp"

#include <filesystem>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "mislab/errors.hpp"
#include "mislab/graph_io.hpp"
#include "mislab/local_search.hpp"

namespace mislab {

using nlohmann::json;

GraphParams CellSpec::graph_params(std::size_t index) const {
  GraphParams p = params;
  if (p.family != GraphFamily::File) p.seed = child_seed(params.seed, index);
  return p;
}

DatasetManifest DatasetManifest::from_json(const json& j) {
  DatasetManifest manifest;
  try {
    for (const auto& c : j.at("cells")) {
      CellSpec cell;
      cell.params.family = parse_family(c.at("family").get<std::string>());
      if (cell.params.family == GraphFamily::File) {
        cell.params.source_path = c.at("path").get<std::string>();
        cell.count = c.value("count", std::size_t{1});
      } else {
        cell.params.n = c.at("n").get<std::size_t>();
        cell.count = c.value("count", kDefaultGraphCount);
      }
      if (c.contains("d")) cell.params.d = c.at("d").get<double>();
      if (c.contains("m")) cell.params.m = c.at("m").get<std::size_t>();
      cell.params.seed = c.value("seed", Seed{0});
      manifest.cells.push_back(std::move(cell));
    }
    for (const auto& c : j.at("configs")) {
      RunConfig cfg;
      cfg.solver = c.at("solver").get<std::string>();
      cfg.params = c.value("params", json::object());
      cfg.k = c.value("k", kDefaultBestOf);
      cfg.time_limit = c.value("time_limit", 0.0);
      cfg.seed = c.value("seed", Seed{0});
      cfg.local_search = c.value("local_search", false);
      cfg.serialize_reps = c.value("serialize_reps", std::size_t{0});
      cfg.label = c.value("label", std::string{});
      manifest.configs.push_back(std::move(cfg));
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("manifest: ") + e.what());
  }
  manifest.validate();
  return manifest;
}

json DatasetManifest::to_json() const {
  json j;
  j["cells"] = json::array();
  for (const auto& cell : cells) {
    json c;
    c["family"] = family_name(cell.params.family);
    if (cell.params.family == GraphFamily::File) c["path"] = cell.params.source_path;
    else c["n"] = cell.params.n;
    if (cell.params.d) c["d"] = *cell.params.d;
    if (cell.params.m) c["m"] = *cell.params.m;
    c["count"] = cell.count;
    c["seed"] = cell.params.seed;
    j["cells"].push_back(c);
  }
  j["configs"] = json::array();
  for (const auto& cfg : configs) {
    j["configs"].push_back({{"solver", cfg.solver},
                            {"params", cfg.params},
                            {"k", cfg.k},
                            {"time_limit", cfg.time_limit},
                            {"seed", cfg.seed},
                            {"local_search", cfg.local_search},
                            {"serialize_reps", cfg.serialize_reps},
                            {"label", cfg.label}});
  }
  return j;
}

void DatasetManifest::validate() const {
  for (const auto& cell : cells) {
    if (cell.count < 1) throw ParameterError("cell " + cell.id() + ": count must be >= 1");
    const auto& p = cell.params;
    if (p.family == GraphFamily::ER &&
        (!p.d || p.n < 2 || !(*p.d > 0) || *p.d >= static_cast<double>(p.n))) {
      throw ParameterError("cell " + cell.id() + ": ER needs 0 < d < n");
    }
    if (p.family == GraphFamily::BA && (!p.m || *p.m < 1 || *p.m >= p.n)) {
      throw ParameterError("cell " + cell.id() + ": BA needs 1 <= m < n");
    }
  }
  for (const auto& cfg : configs) {
    if (cfg.k < 1) throw ParameterError("config " + cfg.name() + ": k must be >= 1");
    if (cfg.solver != "external") solver_spec_from(cfg.solver, cfg.params);
  }
}

SolverSpec solver_spec_from(const std::string& solver, const json& params) {
  SolverSpec spec = SolverSpec::named(solver);
  try {
    auto& p = spec.pcqo;
    p.learning_rate = params.value("learning_rate", p.learning_rate);
    p.momentum = params.value("momentum", p.momentum);
    p.gamma = params.value("gamma", p.gamma);
    p.gamma_prime = params.value("gamma_prime", p.gamma_prime);
    p.steps = params.value("steps", p.steps);
    p.batch = params.value("batch", p.batch);
    p.check_interval = params.value("check_interval", p.check_interval);
    auto& a = spec.anneal;
    a.sweeps = params.value("sweeps", a.sweeps);
    a.t_start = params.value("t_start", a.t_start);
    a.t_end = params.value("t_end", a.t_end);
    a.penalty = params.value("penalty", a.penalty);
    a.restarts = params.value("restarts", a.restarts);
  } catch (const json::exception& e) {
    throw ParameterError("solver params for " + solver + ": " + e.what());
  }
  if (spec.kind == SolverKind::Pcqo) spec.pcqo.validate();
  if (spec.kind == SolverKind::Anneal) spec.anneal.validate();
  return spec;
}

json BenchRecord::to_json() const {
  json j;
  j["cell"] = cell;
  j["family"] = family;
  j["n"] = n;
  if (d) j["d"] = *d;
  if (m) j["m"] = *m;
  j["graph"] = graph_index;
  j["solver"] = solver;
  j["solver_id"] = solver_id;
  j["size"] = size;
  j["seed"] = seed;
  j["ls_applied"] = ls_applied;
  if (ls_improvement) j["ls_improvement"] = *ls_improvement;
  j["status"] = status;
  if (!error.empty()) j["error"] = error;
  if (thirds) {
    j["thirds"] = {{"p1", thirds->p1}, {"p2", thirds->p2}, {"p3", thirds->p3},
                   {"overall", thirds->overall}};
  }
  return j;
}

BenchRecord BenchRecord::from_json(const json& j) {
  BenchRecord r;
  r.cell = j.at("cell").get<std::string>();
  r.family = j.value("family", std::string{});
  r.n = j.value("n", std::size_t{0});
  if (j.contains("d")) r.d = j.at("d").get<double>();
  if (j.contains("m")) r.m = j.at("m").get<std::size_t>();
  r.graph_index = j.at("graph").get<std::size_t>();
  r.solver = j.at("solver").get<std::string>();
  r.solver_id = j.value("solver_id", r.solver);
  r.size = j.at("size").get<std::size_t>();
  r.seed = j.value("seed", Seed{0});
  r.ls_applied = j.value("ls_applied", false);
  if (j.contains("ls_improvement")) r.ls_improvement = j.at("ls_improvement").get<std::size_t>();
  r.status = j.value("status", std::string("ok"));
  r.error = j.value("error", std::string{});
  r.wall_time = j.value("wall_time", 0.0);
  if (j.contains("thirds")) {
    const auto& t = j.at("thirds");
    r.thirds = ThirdsSummary{t.at("p1").get<double>(), t.at("p2").get<double>(),
                             t.at("p3").get<double>(), t.at("overall").get<double>()};
  }
  return r;
}

std::string BenchRecord::key() const {
  return cell + '|' + std::to_string(graph_index) + '|' + solver + '|' + (ls_applied ? "ls" : "base");
}

ThirdsSummary summarize_thirds(const SerTrace& trace) {
  if (trace.size() == 0) return {};
  auto r = thirds_breakdown(trace);
  return {r.p1, r.p2, r.p3, r.overall};
}

IngestedSolution ingest_solution_file(const Graph& g, std::string_view text,
                                      const std::string& solver) {
  auto ids = parse_solution_text(text);
  for (Vertex v : ids) {
    if (v >= g.num_vertices()) {
      throw InvalidSolution("vertex " + std::to_string(v) + " out of range (n=" +
                            std::to_string(g.num_vertices()) + ")");
    }
  }
  IngestedSolution out{IndependentSet::certify(g, std::move(ids)), {}};
  out.record.n = g.num_vertices();
  out.record.solver = solver;
  out.record.solver_id = solver;
  out.record.size = out.solution.size();
  return out;
}

namespace {

std::string substitute(std::string pattern, const std::string& key, const std::string& value) {
  for (auto pos = pattern.find(key); pos != std::string::npos; pos = pattern.find(key, pos)) {
    pattern.replace(pos, key.size(), value);
    pos += value.size();
  }
  return pattern;
}

Graph load_or_generate(const GraphParams& params, const std::string& cache_dir) {
  if (cache_dir.empty() || params.family == GraphFamily::File) return make_graph(params);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(cache_dir) / (params.cell_id() + "_s" + std::to_string(params.seed) + ".el");
  if (fs::exists(path)) return load_graph_file(path.string());
  Graph g = make_graph(params);
  fs::create_directories(cache_dir);
  // Write-then-rename so a concurrent reader never sees a partial file.
  const fs::path tmp =
      path.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  save_graph_file(tmp.string(), g);
  fs::rename(tmp, path);
  return g;
}

struct Job {
  std::size_t cell;
  std::size_t graph;
  std::size_t config;
};

std::vector<BenchRecord> run_job(const DatasetManifest& manifest, const Job& job,
                                 const Graph& g) {
  const CellSpec& cell = manifest.cells[job.cell];
  const RunConfig& cfg = manifest.configs[job.config];
  BenchRecord base;
  base.cell = cell.id();
  base.family = family_name(cell.params.family);
  base.n = g.num_vertices();
  base.d = cell.params.d;
  base.m = cell.params.m;
  base.graph_index = job.graph;
  base.solver = cfg.name();
  base.solver_id = cfg.solver;
  base.seed = child_seed(child_seed(cfg.seed, job.cell), job.graph);

  std::vector<BenchRecord> out;
  std::optional<IndependentSet> solution;
  try {
    Stopwatch clock;
    if (cfg.solver == "external") {
      auto pattern = cfg.params.value("pattern", std::string{});
      auto path = substitute(substitute(pattern, "{cell}", base.cell), "{graph}",
                             std::to_string(job.graph));
      auto ingested = ingest_solution_file(g, read_text_file(path), cfg.name());
      solution = std::move(ingested.solution);
    } else {
      const auto spec = solver_spec_from(cfg.solver, cfg.params);
      const Deadline deadline = cfg.time_limit > 0 ? Deadline::after(cfg.time_limit) : Deadline{};
      auto report = best_of_k(g, spec, cfg.k, base.seed, deadline);
      if (report.timed_out) base.status = "timeout";
      solution = std::move(report.solution);
    }
    base.wall_time = clock.seconds();
    base.size = solution->size();
    if (cfg.serialize_reps > 0) {
      base.thirds = summarize_thirds(
          best_serialization_serial(g, *solution, cfg.serialize_reps, child_seed(base.seed, 1)));
    }
  } catch (const std::exception& e) {
    base.status = "failed";
    base.error = e.what();
    out.push_back(base);
    return out;
  }
  out.push_back(base);

  if (cfg.local_search) {
    BenchRecord ls = base;
    Stopwatch clock;
    auto report = local_search(g, *solution, child_seed(base.seed, 2));
    ls.wall_time = base.wall_time + clock.seconds();
    ls.ls_applied = true;
    ls.size = report.final.size();
    ls.ls_improvement = report.improvement;
    if (cfg.serialize_reps > 0) {
      ls.thirds = summarize_thirds(best_serialization_serial(g, report.final, cfg.serialize_reps,
                                                             child_seed(base.seed, 3)));
    }
    out.push_back(std::move(ls));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Graph>> materialize_graphs(const DatasetManifest& manifest,
                                                   const BenchOptions& options) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<Graph>> graphs(manifest.cells.size());
  for (std::size_t c = 0; c < manifest.cells.size(); ++c) {
    graphs[c].resize(manifest.cells[c].count);
    for (std::size_t i = 0; i < manifest.cells[c].count; ++i) slots.emplace_back(c, i);
  }
  std::exception_ptr failure;
  const int workers = std::max(1, options.workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto [c, i] = slots[s];
    try {
      graphs[c][i] = load_or_generate(manifest.cells[c].graph_params(i), options.cache_dir);
    } catch (...) {
#pragma omp critical(mislab_materialize)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return graphs;
}

std::vector<BenchRecord> run_benchmark(const DatasetManifest& manifest,
                                       const BenchOptions& options) {
  manifest.validate();
  const auto graphs = materialize_graphs(manifest, options);
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < manifest.cells.size(); ++c) {
    for (std::size_t i = 0; i < manifest.cells[c].count; ++i) {
      for (std::size_t k = 0; k < manifest.configs.size(); ++k) jobs.push_back({c, i, k});
    }
  }
  std::vector<std::vector<BenchRecord>> results(jobs.size());
  const int workers = std::max(1, options.workers);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    results[j] = run_job(manifest, jobs[j], graphs[jobs[j].cell][jobs[j].graph]);
  }
  std::vector<BenchRecord> records;
  for (auto& r : results) {
    for (auto& rec : r) records.push_back(std::move(rec));
  }
  return records;
}

std::string records_to_jsonl(const std::vector<BenchRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

std::vector<BenchRecord> records_from_jsonl(std::string_view text) {
  std::vector<BenchRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(BenchRecord::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("record: ") + e.what());
    }
  }
  return records;
}

std::string timings_to_jsonl(const std::vector<BenchRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += json{{"key", r.key()}, {"wall_time", r.wall_time}}.dump();
    out += '\n';
  }
  return out;
}

void apply_timings(std::vector<BenchRecord>& records, std::string_view timing_jsonl) {
  std::unordered_map<std::string, double> times;
  std::istringstream in{std::string(timing_jsonl)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = json::parse(line);
    times[j.at("key").get<std::string>()] = j.at("wall_time").get<double>();
  }
  for (auto& r : records) {
    if (auto it = times.find(r.key()); it != times.end()) r.wall_time = it->second;
  }
}

}  // namespace mislab
