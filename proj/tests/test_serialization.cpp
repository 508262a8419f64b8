#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <omp.h>

#include "mislab/errors.hpp"
#include "mislab/generators.hpp"
#include "mislab/serialization.hpp"
#include "mislab/solvers.hpp"
#include "oracles.hpp"

using namespace mislab;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return Graph::from_edges(n, e);
}

SerTrace with_flags(std::vector<char> flags) {
  SerTrace t;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    t.order.push_back(static_cast<Vertex>(i));
    t.total_flagged += flags[i] ? 1 : 0;
  }
  t.flags = std::move(flags);
  return t;
}

/// Flags recomputed from scratch: live degrees by full recount each round.
std::vector<char> flags_by_recount(const Graph& g, std::span<const Vertex> order) {
  std::vector<char> removed(g.num_vertices(), 0), flags;
  for (Vertex v : order) {
    const auto deg = oracle::live_degrees(g, removed);
    std::uint32_t minimum = UINT32_MAX;
    for (Vertex u = 0; u < g.num_vertices(); ++u)
      if (!removed[u]) minimum = std::min(minimum, deg[u]);
    flags.push_back(deg[v] == minimum ? 1 : 0);
    removed[v] = 1;
    for (Vertex u : g.neighbors(v)) removed[u] = 1;
  }
  return flags;
}

}  // namespace

TEST_CASE("edgeless graph flags every round") {
  const Graph g = Graph::from_edges(6, {});
  const auto s = IndependentSet::certify(g, {0, 1, 2, 3, 4, 5});
  const auto t = serialize_once(g, s, 1);
  CHECK(t.total_flagged == 6);
  CHECK(t.overall_percent() == 100.0);
}

TEST_CASE("hand trace on P3") {
  const Graph p3 = path(3);
  for (Seed seed = 0; seed < 8; ++seed) {
    const auto t = serialize_once(p3, IndependentSet::certify(p3, {0, 2}), seed);
    CHECK(t.flags == std::vector<char>{1, 1});
    CHECK(t.live_degrees == std::vector<std::uint32_t>{1, 0});
    CHECK(t.min_degrees == std::vector<std::uint32_t>{1, 0});
  }
}

TEST_CASE("a non-greedy pick is not flagged") {
  // P5 with {1, 3}: both members have degree 2 while the ends have degree 1.
  const Graph p5 = path(5);
  const auto t = serialize_once(p5, IndependentSet::certify(p5, {1, 3}), 0);
  CHECK(t.flags[0] == 0);
  CHECK(t.min_degrees[0] == 1);
  // Members-only comparison flags it.
  const auto m = serialize_once(p5, IndependentSet::certify(p5, {1, 3}), 0, FlagMode::SolutionMembers);
  CHECK(m.total_flagged == 2);
}

TEST_CASE("serialization orders are permutations that replay exactly") {
  for (int t = 0; t < 100; ++t) {
    const Graph g = t % 2 ? generate_er(40, 5, child_seed(1, t)) : generate_ba(40, 2, child_seed(1, t));
    const auto s = ran_greedy(g, child_seed(2, t)).solution;
    const auto trace = serialize_once(g, s, child_seed(3, t));
    auto sorted = trace.order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::equal(sorted.begin(), sorted.end(), s.members().begin(), s.members().end()));
    CHECK(trace.flags == replay_flags(g, trace.order));
    CHECK(trace.flags == flags_by_recount(g, trace.order));
    CHECK(trace.total_flagged == static_cast<std::size_t>(std::count(trace.flags.begin(), trace.flags.end(), 1)));
  }
}

TEST_CASE("replay rejects orders that pick a deleted vertex") {
  const Graph p3 = path(3);
  const std::vector<Vertex> order = {0, 1};
  CHECK_THROWS_AS(replay_flags(p3, order), InvalidSolution);
}

TEST_CASE("serialization rejects a set from another graph") {
  const Graph empty = Graph::from_edges(3, {});
  const auto s = IndependentSet::certify(empty, {0, 1});
  CHECK_THROWS_AS(serialize_once(path(3), s, 0), InvalidSolution);
}

TEST_CASE("best_serialization") {
  const Graph g = generate_er(120, 8, 4);
  const auto s = ran_greedy(g, 5).solution;
  const auto one = best_serialization(g, s, 1, 9);
  CHECK(one.order == serialize_once(g, s, child_seed(9, 0)).order);
  CHECK(one.rep_index == 0);

  std::size_t prev = 0;
  for (std::size_t reps : {1, 2, 5, 20, 100}) {
    const auto t = best_serialization(g, s, reps, 9);
    CHECK(t.total_flagged >= prev);
    prev = t.total_flagged;
    const auto again = serialize_once(g, s, child_seed(9, t.rep_index));
    CHECK(again.order == t.order);
  }
  CHECK_THROWS_AS(best_serialization(g, s, 0, 9), ParameterError);
}

TEST_CASE("best_serialization parallel equals serial") {
  const Graph g = generate_er(200, 10, 6);
  const auto s = ran_greedy(g, 7).solution;
  const auto serial = best_serialization_serial(g, s, 300, 11);
  for (int threads : {1, 2, 4, 8}) {
    omp_set_num_threads(threads);
    const auto parallel = best_serialization(g, s, 300, 11);
    CHECK(parallel.order == serial.order);
    CHECK(parallel.rep_index == serial.rep_index);
    CHECK(parallel.total_flagged == serial.total_flagged);
  }
  omp_set_num_threads(1);
}

TEST_CASE("thirds breakdown") {
  auto r = thirds_breakdown(with_flags({1, 0, 1}));
  CHECK(r.p1 == 100.0);
  CHECK(r.p2 == 0.0);
  CHECK(r.p3 == 100.0);
  CHECK(r.overall == doctest::Approx(200.0 / 3.0));

  r = thirds_breakdown(with_flags({1, 1, 0, 0}));
  CHECK(r.boundary1 == 2);
  CHECK(r.boundary2 == 3);
  CHECK(r.len1 == 2);
  CHECK(r.len2 == 1);
  CHECK(r.len3 == 1);
  CHECK(r.p1 == 100.0);
  CHECK(r.p2 == 0.0);
  CHECK(r.p3 == 0.0);

  r = thirds_breakdown(with_flags({1, 1, 1, 1, 1, 1, 1}));
  CHECK(r.p1 == 100.0);
  CHECK(r.p2 == 100.0);
  CHECK(r.p3 == 100.0);

  // L = 1: the second and third segments are empty.
  r = thirds_breakdown(with_flags({1}));
  CHECK(r.len1 == 1);
  CHECK(r.len2 == 0);
  CHECK(r.len3 == 0);
  CHECK(r.p2 == 0.0);

  CHECK_THROWS_AS(thirds_breakdown(SerTrace{}), ContractError);
}

TEST_CASE("thirds recombine to the overall count") {
  Rng rng(3);
  for (std::size_t L = 1; L < 60; ++L) {
    std::vector<char> flags(L);
    for (auto& f : flags) f = static_cast<char>(rng.below(2));
    const auto t = with_flags(flags);
    const auto r = thirds_breakdown(t);
    CHECK(r.flagged1 + r.flagged2 + r.flagged3 == t.total_flagged);
    CHECK(r.len1 + r.len2 + r.len3 == L);
    CHECK(r.p1 * r.len1 + r.p2 * r.len2 + r.p3 * r.len3 == doctest::Approx(r.overall * L));
    CHECK(r.len1 >= r.len2);
    CHECK(r.len2 >= r.len3);
  }
}

TEST_CASE("natural consistency") {
  for (int t = 0; t < 30; ++t) {
    const Graph g = generate_er(100, 8, child_seed(20, t));
    const auto r = deg_greedy(g, child_seed(21, t));
    CHECK(natural_consistency(g, *r.trace) == 100.0);
    const auto nat = natural_serialization(g, *r.trace);
    CHECK(nat.flags == flags_by_recount(g, nat.order));
  }

  // Two K1,3 stars and one edge; always picking the hub.
  const Graph forest = Graph::from_edges(
      10, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}, {8, 9}});
  StepTrace hubs;
  hubs.steps = {{0}, {4}, {8}};
  const auto nat = natural_serialization(forest, hubs);
  CHECK(nat.flags == std::vector<char>{0, 0, 1});
  CHECK(natural_consistency(forest, hubs) == doctest::Approx(100.0 / 3.0));

  StepTrace multi;
  multi.steps = {{1, 2}};
  CHECK_THROWS_AS(natural_serialization(forest, multi), ContractError);
  StepTrace bad;
  bad.steps = {{0}, {1}};
  CHECK_THROWS_AS(natural_serialization(forest, bad), InvalidSolution);
}

TEST_CASE("random greedy is less degree-consistent than degree greedy") {
  double ran = 0;
  for (int t = 0; t < 4; ++t) {
    const Graph g = generate_er(1000, 100, child_seed(30, t));
    ran += natural_consistency(g, *ran_greedy(g, child_seed(31, t)).trace);
    CHECK(natural_consistency(g, *deg_greedy(g, child_seed(32, t)).trace) == 100.0);
  }
  CHECK(ran / 4 < 100.0);
}

TEST_CASE("pseudo-natural serialization") {
  for (int t = 0; t < 20; ++t) {
    const Graph g = generate_er(80, 6, child_seed(40, t));
    const auto r = ran_greedy(g, child_seed(41, t));
    const auto pseudo = pseudo_natural_serialization(g, *r.trace, 5);
    CHECK(pseudo.flags == natural_serialization(g, *r.trace).flags);
    CHECK(pseudo.order == natural_serialization(g, *r.trace).order);

    StepTrace whole;
    whole.steps = {std::vector<Vertex>(r.solution.members().begin(), r.solution.members().end())};
    const auto one_step = pseudo_natural_serialization(g, whole, 7);
    const auto once = serialize_once(g, r.solution, 7);
    CHECK(one_step.order == once.order);
    CHECK(one_step.flags == once.flags);
  }

  // P4 with a single step {0, 3}: both picks are global minima.
  const Graph p4 = path(4);
  StepTrace step;
  step.steps = {{0, 3}};
  for (Seed seed = 0; seed < 6; ++seed) {
    const auto t = pseudo_natural_serialization(p4, step, seed);
    CHECK(t.flags == std::vector<char>{1, 1});
    CHECK(t.live_degrees == std::vector<std::uint32_t>{1, 1});
  }

  // Steps are serialized on the residual left by earlier steps.
  StepTrace two;
  two.steps = {{1}, {3}};
  const auto t = pseudo_natural_serialization(p4, two, 0);
  CHECK(t.live_degrees == std::vector<std::uint32_t>{2, 0});
  CHECK(t.flags == std::vector<char>{0, 1});
}

TEST_CASE("csv export") {
  const Graph p3 = path(3);
  const auto t = serialize_once(p3, IndependentSet::certify(p3, {1}), 0);
  CHECK(sertrace_csv(t) == "position,vertex,live_degree,min_degree,flagged\n0,1,2,1,0\n");
}

TEST_CASE("annealer solutions lean greedy late in the order") {
  AnnealConfig cfg;
  cfg.sweeps = 1000;
  cfg.restarts = 1;
  double p1 = 0, p3 = 0;
  for (int t = 0; t < 4; ++t) {
    const Graph g = generate_er(1000, 100, child_seed(50, t));
    const auto s = anneal_solve(g, cfg, child_seed(51, t)).solution;
    const auto r = thirds_breakdown(best_serialization(g, s, 100, child_seed(52, t)));
    p1 += r.p1;
    p3 += r.p3;
  }
  CHECK(p3 > p1);
}
