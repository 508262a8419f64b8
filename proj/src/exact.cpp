#include <algorithm>
#include <bit>
#include <cstdint>

#include "mislab/errors.hpp"
#include "mislab/solvers.hpp"

namespace mislab {

namespace {

using Mask = std::uint64_t;

class BranchAndBound {
 public:
  explicit BranchAndBound(const Graph& g) : n_(g.num_vertices()), adj_(n_, 0) {
    for (const auto& e : g.edges()) {
      adj_[e.u] |= Mask{1} << e.v;
      adj_[e.v] |= Mask{1} << e.u;
    }
  }

  Mask solve() {
    const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    search(all, 0);
    return best_;
  }

 private:
  void search(Mask live, Mask chosen) {
    // A live vertex with at most one live neighbor belongs to some maximum
    // independent set of the residual graph.
    for (bool reduced = true; reduced && live;) {
      reduced = false;
      for (Mask rest = live; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (!((live >> v) & 1)) continue;
        if (std::popcount(adj_[v] & live) <= 1) {
          chosen |= Mask{1} << v;
          live &= ~(adj_[v] | (Mask{1} << v));
          reduced = true;
        }
      }
    }
    const int have = std::popcount(chosen);
    if (live == 0) {
      if (have > best_size_) {
        best_size_ = have;
        best_ = chosen;
      }
      return;
    }
    if (have + std::popcount(live) <= best_size_) return;

    int pivot = -1;
    int pivot_degree = -1;
    for (Mask rest = live; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj_[v] & live);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    }
    const Mask bit = Mask{1} << pivot;
    search(live & ~(adj_[pivot] | bit), chosen | bit);
    search(live & ~bit, chosen);
  }

  std::size_t n_;
  std::vector<Mask> adj_;
  Mask best_ = 0;
  int best_size_ = -1;
};

}  // namespace

IndependentSet exact_mis(const Graph& g, std::size_t cap) {
  cap = std::min<std::size_t>(cap, 64);
  if (g.num_vertices() > cap) {
    throw ParameterError("exact_mis refuses n=" + std::to_string(g.num_vertices()) +
                         " (cap " + std::to_string(cap) + ")");
  }
  const Mask best = BranchAndBound(g).solve();
  std::vector<Vertex> members;
  for (Mask rest = best; rest; rest &= rest - 1) {
    members.push_back(static_cast<Vertex>(std::countr_zero(rest)));
  }
  return IndependentSet::certify(g, std::move(members));
}

}  // namespace mislab
