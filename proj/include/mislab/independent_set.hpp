#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mislab/graph.hpp"

namespace mislab {

/// Result of checking a vertex list against a graph.
struct Verdict {
  std::optional<Edge> violation;  // first violating edge in canonical order
  bool maximal = false;           // meaningful only when independent
  std::size_t free_vertices = 0;  // non-members with no member neighbor

  bool independent() const noexcept { return !violation.has_value(); }
};

/// Checks independence and maximality. Throws std::out_of_range for an id
/// >= n and InvalidSolution for a repeated id.
Verdict verify_independent(const Graph& g, std::span<const Vertex> members);

/// A vertex set certified independent against the graph it was built for.
class IndependentSet {
 public:
  IndependentSet() = default;

  /// Sorts `members` and verifies them against g. Throws InvalidSolution
  /// citing the first violating edge.
  static IndependentSet certify(const Graph& g, std::vector<Vertex> members);

  /// From a 0/1 membership mask; same checks as certify().
  static IndependentSet from_mask(const Graph& g, std::span<const char> mask);

  std::span<const Vertex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Vertex v) const noexcept;

  friend bool operator==(const IndependentSet&, const IndependentSet&) = default;

 private:
  std::vector<Vertex> members_;
};

/// Solution text: one vertex id per line, '#' comments and blank lines allowed.
std::vector<Vertex> parse_solution_text(std::string_view text);
std::string emit_solution_text(const IndependentSet& s);

}  // namespace mislab
