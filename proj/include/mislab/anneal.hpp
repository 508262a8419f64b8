#pragma once

// Single-flip Metropolis annealing on the penalized MIS energy
//   E(x) = -sum_v x_v + penalty * sum_{(u,v) in E} x_u x_v,  x in {0,1}^n,
// with a geometric temperature schedule. After the last sweep, conflicts are
// repaired greedily and the set is made maximal.

#include <cstddef>
#include <cstdint>

#include "mislab/graph.hpp"
#include "mislab/solve_report.hpp"

namespace mislab {

struct AnnealConfig {
  std::size_t sweeps = 4000;
  double t_start = 2.0;
  double t_end = 0.02;
  double penalty = 2.0;
  std::size_t restarts = 8;

  void validate() const;
};

/// Energy change from flipping v, given how many of its neighbors are selected.
inline double anneal_flip_delta(bool selected, std::uint32_t selected_neighbors,
                                double penalty) {
  const double add = -1.0 + penalty * static_cast<double>(selected_neighbors);
  return selected ? -add : add;
}

/// Temperature used during sweep `s` of `sweeps`.
double anneal_temperature(const AnnealConfig& cfg, std::size_t s);

SolveReport anneal_solve(const Graph& g, const AnnealConfig& cfg, Seed seed,
                         const Deadline& deadline = {});

}  // namespace mislab
