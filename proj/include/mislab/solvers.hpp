#pragma once

#include <cstddef>
#include <string>

#include "mislab/anneal.hpp"
#include "mislab/graph.hpp"
#include "mislab/independent_set.hpp"
#include "mislab/pcqo.hpp"
#include "mislab/solve_report.hpp"

namespace mislab {

/// Random greedy: repeatedly take a uniformly random live vertex and delete
/// its closed neighborhood. Records one vertex per step.
SolveReport ran_greedy(const Graph& g, Seed seed);

/// Degree greedy: repeatedly take a vertex of minimum live degree (uniform
/// among ties) and delete its closed neighborhood. O(n + |E|) via a bucket
/// queue. Records one vertex per step.
SolveReport deg_greedy(const Graph& g, Seed seed);

inline constexpr std::size_t kExactDefaultCap = 64;

/// Maximum independent set by branch and bound on 64-bit masks.
/// Throws ParameterError when n > cap (cap is clamped to 64).
IndependentSet exact_mis(const Graph& g, std::size_t cap = kExactDefaultCap);

enum class SolverKind { RanGreedy, DegGreedy, Pcqo, Anneal, Exact };

struct SolverSpec {
  SolverKind kind = SolverKind::DegGreedy;
  PcqoConfig pcqo;
  AnnealConfig anneal;

  /// "ran-greedy", "deg-greedy", "pcqo", "anneal" or "exact".
  static SolverSpec named(const std::string& id);
  std::string id() const;
};

SolveReport run_solver(const Graph& g, const SolverSpec& spec, Seed seed,
                       const Deadline& deadline = {});

/// Runs the solver k times with seeds child_seed(seed, i) and keeps the
/// largest solution, preferring the lowest run index on ties. Runs are
/// spread over OpenMP threads; the result does not depend on scheduling.
/// With an active deadline, runs not yet started when it expires are
/// skipped and the report is marked timed out (run 0 always executes).
SolveReport best_of_k(const Graph& g, const SolverSpec& spec, std::size_t k, Seed seed,
                      const Deadline& deadline = {});

/// Sequential reference for best_of_k.
SolveReport best_of_k_serial(const Graph& g, const SolverSpec& spec, std::size_t k, Seed seed,
                             const Deadline& deadline = {});

}  // namespace mislab
