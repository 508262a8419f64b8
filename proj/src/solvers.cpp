#include "mislab/solvers.hpp"

#include <algorithm>
#include <charconv>

#include "mislab/errors.hpp"

namespace mislab {

std::size_t StepTrace::total_vertices() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.size();
  return total;
}

bool StepTrace::single_vertex_steps() const {
  return std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.size() == 1; });
}

void StepTrace::validate(const Graph& g) const {
  const std::size_t n = g.num_vertices();
  // 0 = untouched, 1 = committed, 2 = neighbor of an earlier step.
  std::vector<char> state(n, 0);
  for (std::size_t t = 0; t < steps.size(); ++t) {
    for (Vertex v : steps[t]) {
      if (v >= n) throw InvalidSolution("step " + std::to_string(t) + ": vertex out of range");
      if (state[v] == 1) throw InvalidSolution("vertex " + std::to_string(v) + " committed twice");
      if (state[v] == 2) {
        throw InvalidSolution("step " + std::to_string(t) + ": vertex " + std::to_string(v) +
                              " is adjacent to an earlier pick");
      }
    }
    for (Vertex v : steps[t]) state[v] = 1;
    for (Vertex v : steps[t]) {
      for (Vertex u : g.neighbors(v)) {
        if (state[u] == 1) {
          throw InvalidSolution("step " + std::to_string(t) + ": edge (" +
                                std::to_string(std::min(u, v)) + "," +
                                std::to_string(std::max(u, v)) + ") inside the trace");
        }
      }
    }
    for (Vertex v : steps[t]) {
      for (Vertex u : g.neighbors(v)) state[u] = 2;
    }
  }
}

StepTrace parse_step_trace(std::string_view text) {
  StepTrace trace;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    std::vector<Vertex> step;
    const char* p = line.data() + first;
    const char* end = line.data() + line.size();
    while (p < end) {
      if (*p == ' ' || *p == '\t' || *p == '\r') {
        ++p;
        continue;
      }
      Vertex v = 0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
        throw ParseError(line_no, "malformed vertex id in step line");
      }
      step.push_back(v);
      p = next;
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

std::string emit_step_trace(const StepTrace& trace) {
  std::string out;
  for (const auto& step : trace.steps) {
    for (std::size_t i = 0; i < step.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(step[i]);
    }
    out += '\n';
  }
  return out;
}

Deadline Deadline::after(double seconds) {
  Deadline d;
  d.at_ = std::chrono::steady_clock::now() +
          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double>(seconds));
  return d;
}

bool Deadline::expired() const { return at_ && std::chrono::steady_clock::now() >= *at_; }

SolverSpec SolverSpec::named(const std::string& id) {
  SolverSpec spec;
  if (id == "ran-greedy") spec.kind = SolverKind::RanGreedy;
  else if (id == "deg-greedy") spec.kind = SolverKind::DegGreedy;
  else if (id == "pcqo") spec.kind = SolverKind::Pcqo;
  else if (id == "anneal") spec.kind = SolverKind::Anneal;
  else if (id == "exact") spec.kind = SolverKind::Exact;
  else throw ParameterError("unknown solver '" + id + "'");
  return spec;
}

std::string SolverSpec::id() const {
  switch (kind) {
    case SolverKind::RanGreedy: return "ran-greedy";
    case SolverKind::DegGreedy: return "deg-greedy";
    case SolverKind::Pcqo: return "pcqo";
    case SolverKind::Anneal: return "anneal";
    case SolverKind::Exact: return "exact";
  }
  return "?";
}

SolveReport run_solver(const Graph& g, const SolverSpec& spec, Seed seed,
                       const Deadline& deadline) {
  switch (spec.kind) {
    case SolverKind::RanGreedy: return ran_greedy(g, seed);
    case SolverKind::DegGreedy: return deg_greedy(g, seed);
    case SolverKind::Pcqo: return pcqo_solve(g, spec.pcqo, seed, deadline);
    case SolverKind::Anneal: return anneal_solve(g, spec.anneal, seed, deadline);
    case SolverKind::Exact: {
      Stopwatch clock;
      SolveReport report;
      report.solution = exact_mis(g);
      report.solver_id = "exact";
      report.seed = seed;
      report.wall_time = clock.seconds();
      return report;
    }
  }
  throw ParameterError("unknown solver kind");
}

namespace {

SolveReport pick_best(std::vector<std::optional<SolveReport>>& runs, double wall_time) {
  std::size_t best = 0;
  bool timed_out = false;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i]) {
      timed_out = true;
      continue;
    }
    timed_out = timed_out || runs[i]->timed_out;
    if (runs[i]->solution.size() > runs[best]->solution.size()) best = i;
  }
  SolveReport report = std::move(*runs[best]);
  report.wall_time = wall_time;
  report.timed_out = timed_out;
  return report;
}

}  // namespace

SolveReport best_of_k(const Graph& g, const SolverSpec& spec, std::size_t k, Seed seed,
                      const Deadline& deadline) {
  if (k == 0) throw ParameterError("best_of_k needs k >= 1");
  Stopwatch clock;
  std::vector<std::optional<SolveReport>> runs(k);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && deadline.expired()) continue;
    try {
      runs[i] = run_solver(g, spec, child_seed(seed, i), deadline);
    } catch (...) {
#pragma omp critical(mislab_best_of_k)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return pick_best(runs, clock.seconds());
}

SolveReport best_of_k_serial(const Graph& g, const SolverSpec& spec, std::size_t k, Seed seed,
                             const Deadline& deadline) {
  if (k == 0) throw ParameterError("best_of_k needs k >= 1");
  Stopwatch clock;
  std::vector<std::optional<SolveReport>> runs(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && deadline.expired()) break;
    runs[i] = run_solver(g, spec, child_seed(seed, i), deadline);
  }
  return pick_best(runs, clock.seconds());
}

}  // namespace mislab
