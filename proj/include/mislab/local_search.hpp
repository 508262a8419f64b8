#pragma once

// 2-improvement local search for independent sets: for each solution vertex
// x, look for two non-adjacent vertices that are free once x is removed and
// swap them in for x.

#include <cstddef>

#include "mislab/graph.hpp"
#include "mislab/independent_set.hpp"
#include "mislab/rng.hpp"

namespace mislab {

inline constexpr std::size_t kDefaultMaxPasses = 100;

struct LsReport {
  IndependentSet final;
  std::size_t initial_size = 0;
  std::size_t improvement = 0;  // final.size() - initial_size
  std::size_t passes = 0;
};

struct PassResult {
  IndependentSet set;
  std::size_t improvements = 0;
  /// Adjacency entries touched; grows linearly with |E| per pass.
  std::size_t operations = 0;
};

/// Adds free vertices in seeded random order until none remain.
IndependentSet make_maximal(const Graph& g, const IndependentSet& s, Seed seed);

/// One pass over the members of `s` in seeded random order. Each committed
/// 2-improvement replaces x by two of its neighbors. Vertices freed by a swap
/// are left free; the caller re-maximalizes. Throws ContractError unless `s`
/// is maximal.
PassResult two_improvement_pass(const Graph& g, const IndependentSet& s, Seed seed);

/// make_maximal, then alternating passes and maximalization until a pass
/// commits nothing or max_passes passes have run.
LsReport local_search(const Graph& g, const IndependentSet& s, Seed seed,
                      std::size_t max_passes = kDefaultMaxPasses);

}  // namespace mislab
