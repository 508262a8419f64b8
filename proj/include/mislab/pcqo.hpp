#pragma once

// Quadratic-penalty relaxation for MIS, optimized by momentum gradient
// descent over a batch of random starts:
//
//   f(x) = -sum_v x_v + gamma * sum_{(u,v) in E} x_u x_v
//                     - gamma' * sum_{(u,v) in complement(E)} x_u x_v
//
// The complement-edge sum is never materialized; it equals
// ((sum x)^2 - sum x^2) / 2 - sum_{E} x_u x_v.

#include <cstddef>
#include <span>
#include <vector>

#include "mislab/graph.hpp"
#include "mislab/solve_report.hpp"

namespace mislab {

struct PcqoConfig {
  double learning_rate = 1e-4;
  double momentum = 0.9;
  double gamma = 500.0;
  double gamma_prime = 1.0;
  std::size_t steps = 27000;
  std::size_t batch = 256;
  /// Convergence is checked every this many steps; a batch whose iterates
  /// did not move at all over one interval is stopped early. 0 disables it.
  std::size_t check_interval = 450;

  void validate() const;
};

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

/// O(n + |E|). Throws ParameterError when x.size() != n.
LossAndGrad pcqo_loss_and_grad(const Graph& g, std::span<const double> x, double gamma,
                               double gamma_prime);

/// Rounds a relaxed vector: vertices in descending x (ties by id) are added
/// when no neighbor is already in. The result is always maximal.
IndependentSet pcqo_decode(const Graph& g, std::span<const double> x);

/// Batched solver. Iterates are laid out vertex-major with the batch
/// contiguous, and batch blocks are distributed across OpenMP threads.
SolveReport pcqo_solve(const Graph& g, const PcqoConfig& cfg, Seed seed,
                       const Deadline& deadline = {});

/// Reference implementation: one start at a time through pcqo_loss_and_grad.
/// Produces the same result as pcqo_solve bit for bit.
SolveReport pcqo_solve_serial(const Graph& g, const PcqoConfig& cfg, Seed seed,
                              const Deadline& deadline = {});

/// The hyperparameter grid used for tuning: learning rate in {1e-4, 1e-5,
/// 1e-6}, gamma in {200, 500, 1000, 2000, 5000}, gamma' = 1, momentum 0.9.
std::vector<PcqoConfig> pcqo_default_grid(std::size_t steps = 27000, std::size_t batch = 256);

}  // namespace mislab
