#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mislab/anneal.hpp"
#include "mislab/errors.hpp"
#include "mislab/generators.hpp"
#include "mislab/solvers.hpp"
#include "oracles.hpp"

using namespace mislab;

TEST_CASE("flip energy") {
  // K2 with x = (1, 0): adding vertex 1 costs penalty - 1.
  CHECK(anneal_flip_delta(false, 1, 2.0) == 1.0);
  CHECK(anneal_flip_delta(false, 0, 2.0) == -1.0);
  CHECK(anneal_flip_delta(true, 0, 2.0) == 1.0);
  CHECK(anneal_flip_delta(true, 2, 2.0) == -3.0);
  // Acceptance at a near-zero temperature rejects the uphill move.
  CHECK(std::exp(-anneal_flip_delta(false, 1, 2.0) / 1e-9) == 0.0);
}

TEST_CASE("temperature schedule is geometric") {
  AnnealConfig cfg;
  cfg.sweeps = 5;
  cfg.t_start = 16;
  cfg.t_end = 1;
  CHECK(anneal_temperature(cfg, 0) == doctest::Approx(16));
  CHECK(anneal_temperature(cfg, 1) == doctest::Approx(8));
  CHECK(anneal_temperature(cfg, 2) == doctest::Approx(4));
  CHECK(anneal_temperature(cfg, 4) == doctest::Approx(1));
}

TEST_CASE("config validation") {
  AnnealConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.penalty = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = AnnealConfig{};
  cfg.t_end = cfg.t_start * 2;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = AnnealConfig{};
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("results are valid, maximal and deterministic") {
  AnnealConfig cfg;
  cfg.sweeps = 300;
  cfg.restarts = 2;
  for (int t = 0; t < 20; ++t) {
    const Graph g = t % 2 ? generate_er(50, 6, child_seed(1, t)) : generate_ba(50, 3, child_seed(1, t));
    const auto r = anneal_solve(g, cfg, child_seed(2, t));
    CHECK(oracle::independent(g, r.solution.members()));
    CHECK(oracle::free_vertex_count(g, r.solution.members()) == 0);
    CHECK(anneal_solve(g, cfg, child_seed(2, t)).solution == r.solution);
    CHECK(r.solver_id == "anneal");
  }
}

TEST_CASE("repair from a hot, short schedule still yields an independent set") {
  AnnealConfig cfg;
  cfg.sweeps = 1;
  cfg.t_start = cfg.t_end = 1000.0;
  cfg.restarts = 1;
  for (int t = 0; t < 20; ++t) {
    const Graph g = generate_er(40, 10, child_seed(3, t));
    const auto r = anneal_solve(g, cfg, child_seed(4, t));
    CHECK(oracle::independent(g, r.solution.members()));
    CHECK(oracle::free_vertex_count(g, r.solution.members()) == 0);
  }
}

TEST_CASE("more restarts never hurt") {
  const Graph g = generate_er(120, 10, 5);
  AnnealConfig cfg;
  cfg.sweeps = 200;
  std::size_t prev = 0;
  for (std::size_t restarts : {1, 2, 4, 8}) {
    cfg.restarts = restarts;
    const auto s = anneal_solve(g, cfg, 6).solution.size();
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("finds the optimum on small graphs") {
  AnnealConfig cfg;
  cfg.sweeps = 2000;
  cfg.restarts = 8;
  std::size_t optimal = 0;
  for (int t = 0; t < 50; ++t) {
    const Graph g = generate_er(16, 4, child_seed(7, t));
    optimal += anneal_solve(g, cfg, child_seed(8, t)).solution.size() == oracle::mis_by_enumeration(g);
  }
  CHECK(optimal >= 45);
}
