// mislab: generate graphs, solve MIS, post-process with local search,
// analyze solutions by degree-based serialization, and run benchmarks.
//
// Exit codes: 0 success, 1 domain failure (e.g. a set that is not
// independent), 2 usage or input error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "mislab/bench.hpp"
#include "mislab/errors.hpp"
#include "mislab/generators.hpp"
#include "mislab/graph_io.hpp"
#include "mislab/local_search.hpp"
#include "mislab/report.hpp"
#include "mislab/serialization.hpp"
#include "mislab/solvers.hpp"

namespace {

using namespace mislab;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) std::cout << text;
  else write_text_file(path, text);
}

IndependentSet load_solution(const Graph& g, const std::string& path) {
  return ingest_solution_file(g, read_text_file(path)).solution;
}

std::string percent(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  return buf;
}

struct GenArgs {
  std::string family = "er";
  std::size_t n = 0;
  std::optional<double> d;
  std::optional<std::size_t> m;
  Seed seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  GraphParams p;
  p.family = parse_family(a.family);
  if (p.family == GraphFamily::File) throw ParameterError("gen supports er and ba");
  p.n = a.n;
  p.d = a.d;
  p.m = a.m;
  p.seed = a.seed;
  write_output(a.out, emit_edge_list(make_graph(p)));
  return kOk;
}

struct SolveArgs {
  std::string input, out, trace_out;
  std::string solver = "deg-greedy";
  std::size_t k = 1;
  Seed seed = 0;
  PcqoConfig pcqo;
  AnnealConfig anneal;
  double time_limit = 0;
};

int run_solve(const SolveArgs& a) {
  const Graph g = load_graph_file(a.input);
  SolverSpec spec = SolverSpec::named(a.solver);
  spec.pcqo = a.pcqo;
  spec.anneal = a.anneal;
  const Deadline deadline = a.time_limit > 0 ? Deadline::after(a.time_limit) : Deadline{};
  const SolveReport report = best_of_k(g, spec, a.k, a.seed, deadline);
  if (!a.out.empty()) write_text_file(a.out, emit_solution_text(report.solution));
  else std::cout << emit_solution_text(report.solution);
  if (!a.trace_out.empty()) {
    if (!report.trace) throw ParameterError(a.solver + " does not record a step trace");
    write_text_file(a.trace_out, emit_step_trace(*report.trace));
  }
  std::cerr << "solver=" << report.solver_id << " size=" << report.solution.size()
            << " k=" << a.k << " time=" << report.wall_time << "s"
            << (report.timed_out ? " (time limit hit)" : "") << '\n';
  return kOk;
}

struct LsArgs {
  std::string input, solution, out;
  Seed seed = 0;
  std::size_t max_passes = kDefaultMaxPasses;
};

int run_ls(const LsArgs& a) {
  const Graph g = load_graph_file(a.input);
  const IndependentSet s = load_solution(g, a.solution);
  const LsReport report = local_search(g, s, a.seed, a.max_passes);
  if (!a.out.empty()) write_text_file(a.out, emit_solution_text(report.final));
  std::cout << report.final.size() << " (" << report.improvement << ")\n";
  return kOk;
}

struct SerializeArgs {
  std::string input, solution, trace, out;
  std::size_t reps = kDefaultSerializationReps;
  Seed seed = 0;
  std::string mode = "all";
};

int run_serialize(const SerializeArgs& a) {
  const Graph g = load_graph_file(a.input);
  FlagMode mode;
  if (a.mode == "all") mode = FlagMode::AllVertices;
  else if (a.mode == "members") mode = FlagMode::SolutionMembers;
  else throw ParameterError("--mode must be 'all' or 'members'");

  SerTrace trace;
  std::string kind;
  if (!a.trace.empty()) {
    const StepTrace steps = parse_step_trace(read_text_file(a.trace));
    if (steps.single_vertex_steps()) {
      trace = natural_serialization(g, steps);
      kind = "natural";
    } else {
      trace = pseudo_natural_serialization(g, steps, a.seed, mode);
      kind = "pseudo-natural";
    }
  } else {
    if (a.solution.empty()) throw ParameterError("serialize needs -s or --trace");
    trace = best_serialization(g, load_solution(g, a.solution), a.reps, a.seed, mode);
    kind = "best-of-" + std::to_string(a.reps);
  }
  if (!a.out.empty()) write_text_file(a.out, sertrace_csv(trace));
  if (trace.size() == 0) {
    std::cout << kind << " empty solution\n";
    return kOk;
  }
  const ThirdsReport t = thirds_breakdown(trace);
  std::cout << kind << " flagged=" << trace.total_flagged << '/' << trace.size()
            << " overall=" << percent(t.overall) << "% p1=" << percent(t.p1)
            << "% p2=" << percent(t.p2) << "% p3=" << percent(t.p3) << "%";
  if (a.trace.empty()) std::cout << " rep=" << trace.rep_index;
  std::cout << '\n';
  return kOk;
}

struct BenchArgs {
  std::string manifest, out;
  int workers = 1;
};

int run_bench(const BenchArgs& a) {
  const auto manifest = DatasetManifest::from_json(nlohmann::json::parse(read_text_file(a.manifest)));
  BenchOptions options;
  options.workers = a.workers;
  if (const char* dir = std::getenv("MISLAB_CACHE_DIR")) options.cache_dir = dir;
  const auto records = run_benchmark(manifest, options);
  write_output(a.out, records_to_jsonl(records));
  if (!a.out.empty()) write_text_file(a.out + ".timing", timings_to_jsonl(records));
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.status == "failed";
  std::cerr << records.size() << " records";
  if (failed) std::cerr << ", " << failed << " failed";
  std::cerr << '\n';
  return kOk;
}

struct VerifyArgs {
  std::string input, solution;
};

int run_verify(const VerifyArgs& a) {
  const Graph g = load_graph_file(a.input);
  const auto ids = parse_solution_text(read_text_file(a.solution));
  Verdict v;
  try {
    v = verify_independent(g, ids);
  } catch (const std::out_of_range& e) {
    std::cout << "INVALID " << e.what() << '\n';
    return kDomainFailure;
  } catch (const InvalidSolution& e) {
    std::cout << "INVALID " << e.what() << '\n';
    return kDomainFailure;
  }
  if (v.violation) {
    std::cout << "VIOLATION edge (" << v.violation->u << "," << v.violation->v << ")\n";
    return kDomainFailure;
  }
  if (v.maximal) std::cout << "OK maximal size=" << ids.size() << '\n';
  else std::cout << "OK not-maximal size=" << ids.size() << " free=" << v.free_vertices << '\n';
  return kOk;
}

struct ReportArgs {
  std::string records, timing, format = "markdown", out_dir;
  bool ls_delta = false;
};

int run_report(const ReportArgs& a) {
  auto records = records_from_jsonl(read_text_file(a.records));
  std::string timing = a.timing.empty() ? a.records + ".timing" : a.timing;
  if (std::filesystem::exists(timing)) apply_timings(records, read_text_file(timing));
  const ReportFormat format = parse_report_format(a.format);

  ReportTable table;
  if (a.ls_delta) {
    std::vector<BenchRecord> base, ls;
    std::set<std::string> with_ls;
    for (const auto& r : records) {
      if (r.ls_applied) with_ls.insert(r.solver);
    }
    for (const auto& r : records) {
      if (r.ls_applied) ls.push_back(r);
      else if (with_ls.count(r.solver)) base.push_back(r);
    }
    table = ls_delta_report(base, ls);
  } else {
    table = aggregate_table(records);
  }
  if (a.out_dir.empty()) {
    std::cout << render_table(table, format);
  } else {
    for (const auto& path : emit_reports(table, format, a.out_dir)) std::cerr << "wrote " << path << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mislab: maximum independent set solvers and solution analysis"};
  app.require_subcommand(1);

  // Only bench parallelizes by default (--workers); solve and serialize opt in.
  int threads = 1;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random graph as a canonical edge list");
  gen_cmd->add_option("--family", gen.family, "er or ba")->check(CLI::IsMember({"er", "ba"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--d", gen.d, "Average degree (er)");
  gen_cmd->add_option("--m", gen.m, "Attachment count (ba)");
  gen_cmd->add_option("--seed", gen.seed, "Generation seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.out, "Output file (stdout if omitted)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run a solver with best-of-k sampling");
  solve_cmd->add_option("-i,--input", solve.input, "Graph file")->required();
  solve_cmd->add_option("--solver", solve.solver)
      ->check(CLI::IsMember({"ran-greedy", "deg-greedy", "pcqo", "anneal", "exact"}))
      ->capture_default_str();
  solve_cmd->add_option("--k", solve.k, "Best-of-k runs")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed)->capture_default_str();
  solve_cmd->add_option("-o,--output", solve.out, "Solution file (stdout if omitted)");
  solve_cmd->add_option("--trace", solve.trace_out, "Write the step trace (greedy solvers)");
  solve_cmd->add_option("--threads", threads, "OpenMP threads for best-of-k runs")->capture_default_str();
  solve_cmd->add_option("--time-limit", solve.time_limit, "Soft limit in seconds");
  solve_cmd->add_option("--lr", solve.pcqo.learning_rate)->capture_default_str();
  solve_cmd->add_option("--momentum", solve.pcqo.momentum)->capture_default_str();
  solve_cmd->add_option("--gamma", solve.pcqo.gamma)->capture_default_str();
  solve_cmd->add_option("--gamma-prime", solve.pcqo.gamma_prime)->capture_default_str();
  solve_cmd->add_option("--steps", solve.pcqo.steps)->capture_default_str();
  solve_cmd->add_option("--batch", solve.pcqo.batch)->capture_default_str();
  solve_cmd->add_option("--check-interval", solve.pcqo.check_interval)->capture_default_str();
  solve_cmd->add_option("--sweeps", solve.anneal.sweeps)->capture_default_str();
  solve_cmd->add_option("--t-start", solve.anneal.t_start)->capture_default_str();
  solve_cmd->add_option("--t-end", solve.anneal.t_end)->capture_default_str();
  solve_cmd->add_option("--penalty", solve.anneal.penalty)->capture_default_str();
  solve_cmd->add_option("--restarts", solve.anneal.restarts)->capture_default_str();

  LsArgs ls;
  auto* ls_cmd = app.add_subcommand("ls", "Apply 2-improvement local search; prints 'final (delta)'");
  ls_cmd->add_option("-i,--input", ls.input, "Graph file")->required();
  ls_cmd->add_option("-s,--solution", ls.solution, "Solution file")->required();
  ls_cmd->add_option("--seed", ls.seed)->capture_default_str();
  ls_cmd->add_option("--max-passes", ls.max_passes)->capture_default_str();
  ls_cmd->add_option("-o,--output", ls.out, "Write the improved solution");

  SerializeArgs ser;
  auto* ser_cmd = app.add_subcommand("serialize", "Degree-based serialization analysis");
  ser_cmd->add_option("-i,--input", ser.input, "Graph file")->required();
  ser_cmd->add_option("-s,--solution", ser.solution, "Solution file");
  ser_cmd->add_option("--trace", ser.trace, "Step trace file (natural / pseudo-natural replay)");
  ser_cmd->add_option("--reps", ser.reps, "Repetitions; best is kept")->capture_default_str();
  ser_cmd->add_option("--seed", ser.seed)->capture_default_str();
  ser_cmd->add_option("--mode", ser.mode, "Flag comparison: all or members")->capture_default_str();
  ser_cmd->add_option("-o,--output", ser.out, "Per-round CSV");
  ser_cmd->add_option("--threads", threads, "OpenMP threads for repetitions")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark manifest");
  bench_cmd->add_option("-m,--manifest", bench.manifest, "Manifest JSON")->required();
  bench_cmd->add_option("-o,--output", bench.out, "Records JSONL (stdout if omitted)");
  bench_cmd->add_option("--workers", bench.workers, "Parallel workers")->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a solution is an independent set");
  verify_cmd->add_option("-i,--input", verify.input, "Graph file")->required();
  verify_cmd->add_option("-s,--solution", verify.solution, "Solution file")->required();

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Aggregate benchmark records");
  report_cmd->add_option("-r,--records", report.records, "Records JSONL")->required();
  report_cmd->add_option("--timing", report.timing, "Timing sidecar (default <records>.timing)");
  report_cmd->add_option("--format", report.format)
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}))
      ->capture_default_str();
  report_cmd->add_option("-o,--output-dir", report.out_dir, "Write table, heatmaps and thirds CSVs here");
  report_cmd->add_flag("--ls-delta", report.ls_delta, "Report 'final (delta)' for local search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  omp_set_num_threads(std::max(1, threads));
  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*ls_cmd) return run_ls(ls);
    if (*ser_cmd) return run_serialize(ser);
    if (*bench_cmd) return run_bench(bench);
    if (*verify_cmd) return run_verify(verify);
    if (*report_cmd) return run_report(report);
  } catch (const InvalidSolution& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
