// Serial references versus OpenMP kernels on the same inputs.

#include <map>

#include <benchmark/benchmark.h>

#include "mislab/generators.hpp"
#include "mislab/pcqo.hpp"
#include "mislab/serialization.hpp"
#include "mislab/solvers.hpp"

using namespace mislab;

namespace {

const Graph& graph(std::int64_t n) {
  static std::map<std::int64_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_er(static_cast<std::size_t>(n), 10, 1)).first;
  return it->second;
}

template <bool Serial>
void best_of_k_kernel(benchmark::State& state) {
  const Graph& g = graph(state.range(0));
  const auto spec = SolverSpec::named("deg-greedy");
  for (auto _ : state) {
    auto r = Serial ? best_of_k_serial(g, spec, 20, 7) : best_of_k(g, spec, 20, 7);
    benchmark::DoNotOptimize(r.solution.size());
  }
}

template <bool Serial>
void serialization_kernel(benchmark::State& state) {
  const Graph& g = graph(state.range(0));
  const auto s = deg_greedy(g, 3).solution;
  for (auto _ : state) {
    auto t = Serial ? best_serialization_serial(g, s, 200, 5) : best_serialization(g, s, 200, 5);
    benchmark::DoNotOptimize(t.total_flagged);
  }
}

template <bool Serial>
void pcqo_kernel(benchmark::State& state) {
  const Graph& g = graph(state.range(0));
  PcqoConfig cfg;
  cfg.steps = 900;
  cfg.batch = 32;
  for (auto _ : state) {
    auto r = Serial ? pcqo_solve_serial(g, cfg, 9) : pcqo_solve(g, cfg, 9);
    benchmark::DoNotOptimize(r.solution.size());
  }
}

}  // namespace

BENCHMARK(best_of_k_kernel<true>)->Name("best_of_k/serial")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(best_of_k_kernel<false>)->Name("best_of_k/omp")->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(serialization_kernel<true>)->Name("best_serialization/serial")->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(serialization_kernel<false>)->Name("best_serialization/omp")->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(pcqo_kernel<true>)->Name("pcqo/serial")->Arg(300)->Unit(benchmark::kMillisecond);
BENCHMARK(pcqo_kernel<false>)->Name("pcqo/omp")->Arg(300)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
