#pragma once

// Degree-based serialization of an independent set: repeatedly remove the
// solution member of smallest live degree (random tie-break), deleting it and
// its neighbors from the residual graph, and record at each round whether
// that member also had the smallest degree in the whole residual graph,
// i.e. whether degree greedy could have made the same pick.

#include <cstddef>
#include <string>
#include <vector>

#include "mislab/graph.hpp"
#include "mislab/independent_set.hpp"
#include "mislab/rng.hpp"
#include "mislab/solve_report.hpp"

namespace mislab {

/// What a pick's degree is compared against when flagging a round.
enum class FlagMode {
  /// Minimum live degree over every vertex of the residual graph (default).
  AllVertices,
  /// Minimum over the solution members still to be placed. Serialization
  /// always picks such a minimum, so every round is flagged in this mode; it
  /// is kept for comparison against the default reading.
  SolutionMembers,
};

inline constexpr std::size_t kDefaultSerializationReps = 1000;

struct SerTrace {
  std::vector<Vertex> order;
  std::vector<char> flags;
  std::vector<std::uint32_t> live_degrees;  // degree of the pick when removed
  std::vector<std::uint32_t> min_degrees;   // comparison minimum at that round
  std::size_t rep_index = 0;
  std::size_t total_flagged = 0;

  std::size_t size() const noexcept { return order.size(); }
  /// Percentage of flagged rounds; 0 for an empty trace.
  double overall_percent() const;
};

struct ThirdsReport {
  double p1 = 0, p2 = 0, p3 = 0;  // percent flagged per segment; 0 for an empty segment
  double overall = 0;
  std::size_t boundary1 = 0, boundary2 = 0;  // ceil(L/3), ceil(2L/3)
  std::size_t len1 = 0, len2 = 0, len3 = 0;
  std::size_t flagged1 = 0, flagged2 = 0, flagged3 = 0;
};

/// One serialization with seeded tie-breaking. Throws InvalidSolution when
/// `s` is not independent in g.
SerTrace serialize_once(const Graph& g, const IndependentSet& s, Seed seed,
                        FlagMode mode = FlagMode::AllVertices);

/// Best of `reps` serializations with seeds child_seed(seed, i): most flagged
/// rounds, lowest repetition index on ties. Repetitions run on OpenMP
/// threads; the result does not depend on scheduling.
SerTrace best_serialization(const Graph& g, const IndependentSet& s,
                            std::size_t reps = kDefaultSerializationReps, Seed seed = 0,
                            FlagMode mode = FlagMode::AllVertices);

/// Sequential reference for best_serialization.
SerTrace best_serialization_serial(const Graph& g, const IndependentSet& s,
                                   std::size_t reps = kDefaultSerializationReps, Seed seed = 0,
                                   FlagMode mode = FlagMode::AllVertices);

/// Recomputes per-round flags by replaying a removal order on a fresh residual
/// graph. Throws InvalidSolution if the order picks a deleted vertex.
std::vector<char> replay_flags(const Graph& g, std::span<const Vertex> order,
                               FlagMode mode = FlagMode::AllVertices);

/// Splits at ceil(L/3) and ceil(2L/3). Throws ContractError for an empty trace.
ThirdsReport thirds_breakdown(const SerTrace& t);

/// Replays a one-vertex-per-step trace, flagging picks of globally minimum
/// live degree. Throws ContractError on a multi-vertex step and
/// InvalidSolution on a trace inconsistent with g.
SerTrace natural_serialization(const Graph& g, const StepTrace& trace);

/// Percentage of flagged steps in natural_serialization.
double natural_consistency(const Graph& g, const StepTrace& trace);

/// Serializes each step's vertex set on the residual graph left by the
/// earlier steps and concatenates the results. Single pass, no repetition.
SerTrace pseudo_natural_serialization(const Graph& g, const StepTrace& trace, Seed seed = 0,
                                      FlagMode mode = FlagMode::AllVertices);

/// CSV with header "position,vertex,live_degree,min_degree,flagged".
std::string sertrace_csv(const SerTrace& t);

}  // namespace mislab
