#include "mislab/local_search.hpp"

#include <numeric>
#include <optional>

#include "mislab/errors.hpp"

namespace mislab {

namespace {

/// Membership plus "tight count": the number of members adjacent to each vertex.
class TightSet {
 public:
  TightSet(const Graph& g, const IndependentSet& s)
      : g_(g), in_(g.num_vertices(), 0), tight_(g.num_vertices(), 0) {
    for (Vertex v : s.members()) insert(v);
  }

  bool in(Vertex v) const { return in_[v] != 0; }
  std::uint32_t tight(Vertex v) const { return tight_[v]; }
  bool free(Vertex v) const { return !in_[v] && tight_[v] == 0; }

  void insert(Vertex v) {
    in_[v] = 1;
    for (Vertex u : g_.neighbors(v)) ++tight_[u];
    ops_ += g_.degree(v);
  }
  void erase(Vertex v) {
    in_[v] = 0;
    for (Vertex u : g_.neighbors(v)) --tight_[u];
    ops_ += g_.degree(v);
  }

  void count_ops(std::size_t k) { ops_ += k; }
  std::size_t ops() const { return ops_; }

  IndependentSet snapshot() const { return IndependentSet::from_mask(g_, in_); }

 private:
  const Graph& g_;
  std::vector<char> in_;
  std::vector<std::uint32_t> tight_;
  std::size_t ops_ = 0;
};

}  // namespace

IndependentSet make_maximal(const Graph& g, const IndependentSet& s, Seed seed) {
  TightSet set(g, s);
  std::vector<Vertex> order(g.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  for (Vertex v : order) {
    if (set.free(v)) set.insert(v);
  }
  return set.snapshot();
}

PassResult two_improvement_pass(const Graph& g, const IndependentSet& s, Seed seed) {
  if (!verify_independent(g, s.members()).maximal) {
    throw ContractError("two_improvement_pass needs a maximal independent set");
  }
  const std::size_t n = g.num_vertices();
  TightSet set(g, s);
  std::vector<Vertex> order(s.members().begin(), s.members().end());
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));

  // Vertices made free by earlier swaps in this pass; the input is maximal so
  // nothing else is free.
  std::vector<Vertex> loose;
  std::vector<Vertex> candidates;  // neighbors of x that only x covers
  std::vector<std::size_t> mark(n, 0);
  std::size_t stamp = 0;
  std::size_t improvements = 0;

  for (Vertex x : order) {
    if (!set.in(x)) continue;
    candidates.clear();
    for (Vertex v : g.neighbors(x)) {
      if (set.tight(v) == 1) candidates.push_back(v);
    }
    set.count_ops(g.degree(x));
    std::erase_if(loose, [&](Vertex w) { return !set.free(w); });
    // Free vertices of S = I \ {x}: x itself, its tight-1 neighbors, and any
    // vertex already loose.
    if (1 + candidates.size() + loose.size() < 2) continue;

    for (Vertex v : candidates) {
      ++stamp;
      for (Vertex u : g.neighbors(v)) mark[u] = stamp;
      set.count_ops(g.degree(v));
      // A free vertex of S + v: another candidate or a loose vertex that is
      // not adjacent to v. x is adjacent to v, so it never qualifies.
      std::optional<Vertex> w;
      for (Vertex c : candidates) {
        if (c != v && mark[c] != stamp) {
          w = c;
          break;
        }
      }
      if (!w) {
        for (Vertex c : loose) {
          if (mark[c] != stamp) {
            w = c;
            break;
          }
        }
      }
      set.count_ops(candidates.size() + loose.size());
      if (!w) continue;

      set.erase(x);
      set.insert(v);
      set.insert(*w);
      ++improvements;
      for (Vertex u : g.neighbors(x)) {
        if (set.free(u)) loose.push_back(u);
      }
      break;
    }
  }

  PassResult result;
  result.set = set.snapshot();
  result.improvements = improvements;
  result.operations = set.ops();
  return result;
}

LsReport local_search(const Graph& g, const IndependentSet& s, Seed seed,
                      std::size_t max_passes) {
  LsReport report;
  report.initial_size = s.size();
  IndependentSet current = make_maximal(g, s, child_seed(seed, 0));
  std::size_t pass = 0;
  while (pass < max_passes) {
    auto result = two_improvement_pass(g, current, child_seed(seed, 2 * pass + 1));
    ++pass;
    current = make_maximal(g, result.set, child_seed(seed, 2 * pass));
    if (result.improvements == 0) break;
  }
  report.passes = pass;
  report.improvement = current.size() - report.initial_size;
  report.final = std::move(current);
  return report;
}

}  // namespace mislab
