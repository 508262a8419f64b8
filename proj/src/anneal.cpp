#include "mislab/anneal.hpp"

#include <cmath>
#include <numeric>

#include "mislab/errors.hpp"

namespace mislab {

void AnnealConfig::validate() const {
  if (sweeps < 1) throw ParameterError("anneal: sweeps must be >= 1");
  if (!(t_end > 0.0) || !(t_start >= t_end)) {
    throw ParameterError("anneal: need t_start >= t_end > 0");
  }
  if (!(penalty > 1.0)) throw ParameterError("anneal: penalty must be > 1");
  if (restarts < 1) throw ParameterError("anneal: restarts must be >= 1");
}

double anneal_temperature(const AnnealConfig& cfg, std::size_t s) {
  if (cfg.sweeps <= 1) return cfg.t_start;
  const double frac = static_cast<double>(s) / static_cast<double>(cfg.sweeps - 1);
  return cfg.t_start * std::pow(cfg.t_end / cfg.t_start, frac);
}

namespace {

class AnnealState {
 public:
  explicit AnnealState(const Graph& g) : g_(g), x_(g.num_vertices(), 0), hits_(g.num_vertices(), 0) {}

  void flip(Vertex v) {
    x_[v] ^= 1;
    if (x_[v]) {
      for (Vertex u : g_.neighbors(v)) ++hits_[u];
    } else {
      for (Vertex u : g_.neighbors(v)) --hits_[u];
    }
  }

  void sweep(double temperature, double penalty, Rng& rng) {
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      const double delta = anneal_flip_delta(x_[v] != 0, hits_[v], penalty);
      if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature)) flip(v);
    }
  }

  /// Drops the most-conflicted selected vertex (lowest id on ties) until
  /// no edge has both ends selected, then adds free vertices in random order.
  void repair(Rng& rng) {
    const std::size_t n = g_.num_vertices();
    for (;;) {
      Vertex worst = 0;
      std::uint32_t worst_hits = 0;
      for (Vertex v = 0; v < n; ++v) {
        if (x_[v] && hits_[v] > worst_hits) {
          worst = v;
          worst_hits = hits_[v];
        }
      }
      if (worst_hits == 0) break;
      flip(worst);
    }
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    rng.shuffle(std::span<Vertex>(order));
    for (Vertex v : order) {
      if (!x_[v] && hits_[v] == 0) flip(v);
    }
  }

  const std::vector<char>& selection() const { return x_; }

 private:
  const Graph& g_;
  std::vector<char> x_;
  std::vector<std::uint32_t> hits_;  // selected neighbors per vertex
};

}  // namespace

SolveReport anneal_solve(const Graph& g, const AnnealConfig& cfg, Seed seed,
                         const Deadline& deadline) {
  cfg.validate();
  Stopwatch clock;
  SolveReport report;
  report.solver_id = "anneal";
  report.seed = seed;
  bool have = false;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    if (r > 0 && deadline.expired()) {
      report.timed_out = true;
      break;
    }
    Rng rng(child_seed(seed, r));
    AnnealState state(g);
    for (std::size_t s = 0; s < cfg.sweeps; ++s) {
      if (s % 64 == 63 && deadline.expired()) {
        report.timed_out = true;
        break;
      }
      state.sweep(anneal_temperature(cfg, s), cfg.penalty, rng);
    }
    state.repair(rng);
    auto candidate = IndependentSet::from_mask(g, state.selection());
    if (!have || candidate.size() > report.solution.size()) {
      report.solution = std::move(candidate);
      have = true;
    }
    if (report.timed_out) break;
  }
  report.wall_time = clock.seconds();
  return report;
}

}  // namespace mislab
