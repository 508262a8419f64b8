#include <algorithm>
#include <numeric>

#include "mislab/residual.hpp"
#include "mislab/solvers.hpp"

namespace mislab {

SolveReport ran_greedy(const Graph& g, Seed seed) {
  Stopwatch clock;
  const std::size_t n = g.num_vertices();
  Rng rng(seed);
  // Walking a uniform permutation and skipping deleted vertices picks
  // uniformly among the live ones at every step.
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  rng.shuffle(std::span<Vertex>(order));

  std::vector<char> blocked(n, 0);
  std::vector<Vertex> picked;
  StepTrace trace;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    picked.push_back(v);
    trace.steps.push_back({v});
    blocked[v] = 1;
    for (Vertex u : g.neighbors(v)) blocked[u] = 1;
  }

  SolveReport report;
  report.solution = IndependentSet::certify(g, std::move(picked));
  report.solver_id = "ran-greedy";
  report.seed = seed;
  report.trace = std::move(trace);
  report.wall_time = clock.seconds();
  return report;
}

namespace {

struct QueueSync {
  MinDegreeQueue& queue;
  void removed(Vertex x) {
    if (queue.contains(x)) queue.erase(x);
  }
  void degree_dropped(Vertex u, std::uint32_t d) { queue.update(u, d); }
};

}  // namespace

SolveReport deg_greedy(const Graph& g, Seed seed) {
  Stopwatch clock;
  const std::size_t n = g.num_vertices();
  Rng rng(seed);
  ResidualView residual(g);
  std::uint32_t max_degree = 0;
  for (Vertex v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
  MinDegreeQueue queue(n, max_degree);
  for (Vertex v = 0; v < n; ++v) queue.insert(v, g.degree(v));

  std::vector<Vertex> picked;
  StepTrace trace;
  while (!queue.empty()) {
    const Vertex v = queue.pick_min(rng);
    picked.push_back(v);
    trace.steps.push_back({v});
    residual.remove_closed_neighborhood(v, QueueSync{queue});
  }

  SolveReport report;
  report.solution = IndependentSet::certify(g, std::move(picked));
  report.solver_id = "deg-greedy";
  report.seed = seed;
  report.trace = std::move(trace);
  report.wall_time = clock.seconds();
  return report;
}

}  // namespace mislab
