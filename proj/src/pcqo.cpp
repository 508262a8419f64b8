#include "mislab/pcqo.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "mislab/errors.hpp"

namespace mislab {

void PcqoConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ParameterError("pcqo: learning_rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ParameterError("pcqo: momentum must be in [0,1)");
  if (!(gamma > 0.0)) throw ParameterError("pcqo: gamma must be > 0");
  if (!(gamma_prime >= 0.0)) throw ParameterError("pcqo: gamma_prime must be >= 0");
  if (steps < 1) throw ParameterError("pcqo: steps must be >= 1");
  if (batch < 1) throw ParameterError("pcqo: batch must be >= 1");
}

// Both solver paths evaluate the gradient with this exact expression so that
// they round identically.
static inline double gradient_entry(double a, double s, double xv, double gamma,
                                    double gamma_prime) {
  return -1.0 + gamma * a - gamma_prime * (s - xv - a);
}

static inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

LossAndGrad pcqo_loss_and_grad(const Graph& g, std::span<const double> x, double gamma,
                               double gamma_prime) {
  const std::size_t n = g.num_vertices();
  if (x.size() != n) {
    throw ParameterError("pcqo: x has " + std::to_string(x.size()) + " entries, graph has " +
                         std::to_string(n) + " vertices");
  }
  double s = 0.0;
  double sq = 0.0;
  for (double xv : x) {
    s += xv;
    sq += xv * xv;
  }
  double edge_sum = 0.0;
  for (const auto& e : g.edges()) edge_sum += x[e.u] * x[e.v];
  const double complement_sum = (s * s - sq) / 2.0 - edge_sum;

  LossAndGrad out;
  out.loss = -s + gamma * edge_sum - gamma_prime * complement_sum;
  out.grad.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    double a = 0.0;
    for (Vertex u : g.neighbors(v)) a += x[u];
    out.grad[v] = gradient_entry(a, s, x[v], gamma, gamma_prime);
  }
  return out;
}

IndependentSet pcqo_decode(const Graph& g, std::span<const double> x) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return x[a] > x[b]; });
  std::vector<char> blocked(n, 0);
  std::vector<Vertex> members;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    members.push_back(v);
    blocked[v] = 1;
    for (Vertex u : g.neighbors(v)) blocked[u] = 1;
  }
  return IndependentSet::certify(g, std::move(members));
}

std::vector<PcqoConfig> pcqo_default_grid(std::size_t steps, std::size_t batch) {
  std::vector<PcqoConfig> grid;
  for (double lr : {1e-4, 1e-5, 1e-6}) {
    for (double gamma : {200.0, 500.0, 1000.0, 2000.0, 5000.0}) {
      PcqoConfig cfg;
      cfg.learning_rate = lr;
      cfg.gamma = gamma;
      cfg.gamma_prime = 1.0;
      cfg.momentum = 0.9;
      cfg.steps = steps;
      cfg.batch = batch;
      grid.push_back(cfg);
    }
  }
  return grid;
}

namespace {

void initialize_start(std::span<double> x, Seed seed, std::size_t start) {
  Rng rng(child_seed(seed, start));
  for (double& xv : x) xv = rng.uniform01();
}

struct StartResult {
  IndependentSet solution;
  bool timed_out = false;
};

SolveReport finish(std::vector<StartResult>& results, Seed seed, const Stopwatch& clock) {
  std::size_t best = 0;
  bool timed_out = false;
  for (std::size_t b = 0; b < results.size(); ++b) {
    timed_out = timed_out || results[b].timed_out;
    if (results[b].solution.size() > results[best].solution.size()) best = b;
  }
  SolveReport report;
  report.solution = std::move(results[best].solution);
  report.solver_id = "pcqo";
  report.seed = seed;
  report.timed_out = timed_out;
  report.wall_time = clock.seconds();
  return report;
}

constexpr std::size_t kBlock = 16;

/// Runs starts [first, first + count) as one interleaved block:
/// x[v * kBlock + j] holds start first + j.
void run_block(const Graph& g, const PcqoConfig& cfg, Seed seed, std::size_t first,
               std::size_t count, const Deadline& deadline, std::span<StartResult> results) {
  const std::size_t n = g.num_vertices();
  std::vector<double> x(n * kBlock, 0.0);
  std::vector<double> buf(n * kBlock, 0.0);
  std::vector<double> snapshot(n * kBlock, 0.0);
  std::array<char, kBlock> active{};
  std::vector<double> column(n);
  for (std::size_t j = 0; j < count; ++j) {
    initialize_start(column, seed, first + j);
    for (std::size_t v = 0; v < n; ++v) x[v * kBlock + j] = column[v];
    active[j] = 1;
  }
  std::size_t live = count;
  bool timed_out = false;

  const double lr = cfg.learning_rate;
  const double mu = cfg.momentum;
  const double gamma = cfg.gamma;
  const double gamma_prime = cfg.gamma_prime;
  alignas(64) double s[kBlock];
  alignas(64) double a[kBlock];

  snapshot = x;
  for (std::size_t step = 1; step <= cfg.steps && live > 0; ++step) {
    std::fill(std::begin(s), std::end(s), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      const double* xv = &x[v * kBlock];
      for (std::size_t j = 0; j < kBlock; ++j) s[j] += xv[j];
    }
    for (Vertex v = 0; v < n; ++v) {
      std::fill(std::begin(a), std::end(a), 0.0);
      for (Vertex u : g.neighbors(v)) {
        const double* xu = &x[u * kBlock];
        for (std::size_t j = 0; j < kBlock; ++j) a[j] += xu[j];
      }
      const double* xv = &x[v * kBlock];
      double* bv = &buf[v * kBlock];
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double grad = gradient_entry(a[j], s[j], xv[j], gamma, gamma_prime);
        const double next = mu * bv[j] + grad;
        bv[j] = active[j] ? next : bv[j];
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      double* xv = &x[v * kBlock];
      const double* bv = &buf[v * kBlock];
      for (std::size_t j = 0; j < kBlock; ++j) {
        const double next = clamp01(xv[j] - lr * bv[j]);
        xv[j] = active[j] ? next : xv[j];
      }
    }

    if (cfg.check_interval > 0 && step % cfg.check_interval == 0) {
      for (std::size_t j = 0; j < count; ++j) {
        if (!active[j]) continue;
        bool moved = false;
        for (std::size_t v = 0; v < n && !moved; ++v) {
          moved = x[v * kBlock + j] != snapshot[v * kBlock + j];
        }
        if (!moved) {
          active[j] = 0;
          --live;
        }
      }
      snapshot = x;
      if (live > 0 && deadline.expired()) {
        timed_out = true;
        break;
      }
    }
  }

  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t v = 0; v < n; ++v) column[v] = x[v * kBlock + j];
    results[j].solution = pcqo_decode(g, column);
    results[j].timed_out = timed_out && active[j];
  }
}

}  // namespace

SolveReport pcqo_solve(const Graph& g, const PcqoConfig& cfg, Seed seed,
                       const Deadline& deadline) {
  cfg.validate();
  Stopwatch clock;
  std::vector<StartResult> results(cfg.batch);
  const std::size_t blocks = (cfg.batch + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const std::size_t first = blk * kBlock;
    const std::size_t count = std::min(kBlock, cfg.batch - first);
    run_block(g, cfg, seed, first, count, deadline,
              std::span<StartResult>(results).subspan(first, count));
  }
  return finish(results, seed, clock);
}

SolveReport pcqo_solve_serial(const Graph& g, const PcqoConfig& cfg, Seed seed,
                              const Deadline& deadline) {
  cfg.validate();
  Stopwatch clock;
  const std::size_t n = g.num_vertices();
  std::vector<StartResult> results(cfg.batch);
  for (std::size_t b = 0; b < cfg.batch; ++b) {
    std::vector<double> x(n);
    std::vector<double> buf(n, 0.0);
    initialize_start(x, seed, b);
    std::vector<double> snapshot = x;
    for (std::size_t step = 1; step <= cfg.steps; ++step) {
      auto lg = pcqo_loss_and_grad(g, x, cfg.gamma, cfg.gamma_prime);
      for (std::size_t v = 0; v < n; ++v) buf[v] = cfg.momentum * buf[v] + lg.grad[v];
      for (std::size_t v = 0; v < n; ++v) x[v] = clamp01(x[v] - cfg.learning_rate * buf[v]);
      if (cfg.check_interval > 0 && step % cfg.check_interval == 0) {
        if (x == snapshot) break;
        snapshot = x;
        if (deadline.expired()) {
          results[b].timed_out = true;
          break;
        }
      }
    }
    results[b].solution = pcqo_decode(g, x);
  }
  return finish(results, seed, clock);
}

}  // namespace mislab
