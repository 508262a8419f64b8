#include "mislab/serialization.hpp"

#include <algorithm>

#include "mislab/errors.hpp"
#include "mislab/residual.hpp"

namespace mislab {

double SerTrace::overall_percent() const {
  return order.empty() ? 0.0
                       : 100.0 * static_cast<double>(total_flagged) / static_cast<double>(order.size());
}

namespace {

struct QueueSync {
  MinDegreeQueue& queue;
  void removed(Vertex x) {
    if (queue.contains(x)) queue.erase(x);
  }
  void degree_dropped(Vertex u, std::uint32_t d) { queue.update(u, d); }
};

std::uint32_t max_degree(const Graph& g) {
  std::uint32_t d = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) d = std::max(d, g.degree(v));
  return d;
}

void record(SerTrace& out, Vertex v, std::uint32_t degree, std::uint32_t minimum) {
  const bool flagged = degree == minimum;
  out.order.push_back(v);
  out.flags.push_back(flagged ? 1 : 0);
  out.live_degrees.push_back(degree);
  out.min_degrees.push_back(minimum);
  out.total_flagged += flagged ? 1 : 0;
}

/// Serializes `members` (all live, mutually independent) on `residual`,
/// appending to `out`.
void serialize_subset(ResidualView& residual, MinDegreeQueue& queue,
                      std::span<const Vertex> members, Rng& rng, FlagMode mode, SerTrace& out) {
  for (Vertex v : members) queue.insert(v, residual.live_degree(v));
  while (!queue.empty()) {
    const Vertex v = queue.pick_min(rng);
    const std::uint32_t degree = residual.live_degree(v);
    const std::uint32_t minimum =
        mode == FlagMode::AllVertices ? residual.min_live_degree() : queue.min_key();
    record(out, v, degree, minimum);
    residual.remove_closed_neighborhood(v, QueueSync{queue});
  }
}

void require_independent(const Graph& g, const IndependentSet& s) {
  auto verdict = verify_independent(g, s.members());
  if (verdict.violation) {
    throw InvalidSolution("not independent in this graph: edge (" +
                          std::to_string(verdict.violation->u) + "," +
                          std::to_string(verdict.violation->v) + ")");
  }
}

SerTrace serialize_checked(const Graph& g, const IndependentSet& s, Seed seed, FlagMode mode,
                           std::uint32_t max_deg) {
  ResidualView residual(g);
  MinDegreeQueue queue(g.num_vertices(), max_deg);
  Rng rng(seed);
  SerTrace out;
  out.order.reserve(s.size());
  serialize_subset(residual, queue, s.members(), rng, mode, out);
  return out;
}

bool better(const SerTrace& a, const SerTrace& b) {
  return a.total_flagged > b.total_flagged ||
         (a.total_flagged == b.total_flagged && a.rep_index < b.rep_index);
}

}  // namespace

SerTrace serialize_once(const Graph& g, const IndependentSet& s, Seed seed, FlagMode mode) {
  require_independent(g, s);
  return serialize_checked(g, s, seed, mode, max_degree(g));
}

SerTrace best_serialization(const Graph& g, const IndependentSet& s, std::size_t reps,
                            Seed seed, FlagMode mode) {
  if (reps == 0) throw ParameterError("best_serialization needs reps >= 1");
  require_independent(g, s);
  const std::uint32_t max_deg = max_degree(g);
  std::optional<SerTrace> best;
#pragma omp parallel
  {
    std::optional<SerTrace> local;
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < reps; ++i) {
      SerTrace t = serialize_checked(g, s, child_seed(seed, i), mode, max_deg);
      t.rep_index = i;
      if (!local || better(t, *local)) local = std::move(t);
    }
#pragma omp critical(mislab_best_serialization)
    if (local && (!best || better(*local, *best))) best = std::move(local);
  }
  return std::move(*best);
}

SerTrace best_serialization_serial(const Graph& g, const IndependentSet& s, std::size_t reps,
                                   Seed seed, FlagMode mode) {
  if (reps == 0) throw ParameterError("best_serialization needs reps >= 1");
  require_independent(g, s);
  const std::uint32_t max_deg = max_degree(g);
  SerTrace best;
  for (std::size_t i = 0; i < reps; ++i) {
    SerTrace t = serialize_checked(g, s, child_seed(seed, i), mode, max_deg);
    t.rep_index = i;
    if (i == 0 || better(t, best)) best = std::move(t);
  }
  return best;
}

std::vector<char> replay_flags(const Graph& g, std::span<const Vertex> order, FlagMode mode) {
  ResidualView residual(g);
  MinDegreeQueue remaining(g.num_vertices(), max_degree(g));
  for (Vertex v : order) {
    if (v >= g.num_vertices()) throw InvalidSolution("vertex out of range in order");
    if (remaining.contains(v)) throw InvalidSolution("vertex repeated in order");
    remaining.insert(v, g.degree(v));
  }
  std::vector<char> flags;
  flags.reserve(order.size());
  for (Vertex v : order) {
    if (!residual.live(v)) {
      throw InvalidSolution("vertex " + std::to_string(v) + " was already deleted");
    }
    const std::uint32_t minimum =
        mode == FlagMode::AllVertices ? residual.min_live_degree() : remaining.min_key();
    flags.push_back(residual.live_degree(v) == minimum ? 1 : 0);
    residual.remove_closed_neighborhood(v, QueueSync{remaining});
  }
  return flags;
}

ThirdsReport thirds_breakdown(const SerTrace& t) {
  const std::size_t L = t.flags.size();
  if (L == 0) throw ContractError("thirds_breakdown needs a non-empty trace");
  ThirdsReport r;
  r.boundary1 = (L + 2) / 3;
  r.boundary2 = (2 * L + 2) / 3;
  auto count = [&](std::size_t from, std::size_t to) {
    return static_cast<std::size_t>(std::count(t.flags.begin() + static_cast<std::ptrdiff_t>(from),
                                               t.flags.begin() + static_cast<std::ptrdiff_t>(to), 1));
  };
  auto percent = [](std::size_t flagged, std::size_t len) {
    return len == 0 ? 0.0 : 100.0 * static_cast<double>(flagged) / static_cast<double>(len);
  };
  r.len1 = r.boundary1;
  r.len2 = r.boundary2 - r.boundary1;
  r.len3 = L - r.boundary2;
  r.flagged1 = count(0, r.boundary1);
  r.flagged2 = count(r.boundary1, r.boundary2);
  r.flagged3 = count(r.boundary2, L);
  r.p1 = percent(r.flagged1, r.len1);
  r.p2 = percent(r.flagged2, r.len2);
  r.p3 = percent(r.flagged3, r.len3);
  r.overall = percent(r.flagged1 + r.flagged2 + r.flagged3, L);
  return r;
}

SerTrace natural_serialization(const Graph& g, const StepTrace& trace) {
  if (!trace.single_vertex_steps()) {
    throw ContractError("natural serialization needs one vertex per step; "
                        "use pseudo_natural_serialization for multi-vertex steps");
  }
  trace.validate(g);
  ResidualView residual(g);
  SerTrace out;
  for (const auto& step : trace.steps) {
    const Vertex v = step.front();
    record(out, v, residual.live_degree(v), residual.min_live_degree());
    residual.remove_closed_neighborhood(v);
  }
  return out;
}

double natural_consistency(const Graph& g, const StepTrace& trace) {
  return natural_serialization(g, trace).overall_percent();
}

SerTrace pseudo_natural_serialization(const Graph& g, const StepTrace& trace, Seed seed,
                                      FlagMode mode) {
  trace.validate(g);
  ResidualView residual(g);
  MinDegreeQueue queue(g.num_vertices(), max_degree(g));
  Rng rng(seed);
  SerTrace out;
  for (const auto& step : trace.steps) {
    serialize_subset(residual, queue, step, rng, mode, out);
  }
  return out;
}

std::string sertrace_csv(const SerTrace& t) {
  std::string out = "position,vertex,live_degree,min_degree,flagged\n";
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    out += std::to_string(i) + ',' + std::to_string(t.order[i]) + ',' +
           std::to_string(t.live_degrees[i]) + ',' + std::to_string(t.min_degrees[i]) + ',' +
           (t.flags[i] ? '1' : '0') + '\n';
  }
  return out;
}

}  // namespace mislab
