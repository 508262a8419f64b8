#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mislab/graph.hpp"
#include "mislab/independent_set.hpp"
#include "mislab/rng.hpp"

namespace mislab {

/// Vertices committed per step by a non-backtracking solver.
struct StepTrace {
  std::vector<std::vector<Vertex>> steps;

  std::size_t total_vertices() const;
  bool single_vertex_steps() const;

  /// Throws InvalidSolution unless steps are pairwise disjoint and each
  /// step is independent of itself and of every vertex committed before it.
  void validate(const Graph& g) const;
};

/// One line per step, space-separated vertex ids; '#' comments allowed.
/// Blank lines are skipped on read, so empty steps do not survive a round trip.
StepTrace parse_step_trace(std::string_view text);
std::string emit_step_trace(const StepTrace& trace);

struct SolveReport {
  IndependentSet solution;
  std::string solver_id;
  Seed seed = 0;
  double wall_time = 0.0;  // seconds
  std::optional<StepTrace> trace;
  bool timed_out = false;
};

/// Soft wall-clock limit, polled between solver iterations.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(double seconds);
  bool expired() const;
  bool active() const noexcept { return at_.has_value(); }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

/// Wall-clock stopwatch in seconds.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mislab
