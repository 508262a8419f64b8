#include "mislab/graph.hpp"

#include <algorithm>
#include <string>

#include "mislab/errors.hpp"

namespace mislab {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ParameterError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ParameterError("duplicate edge (" + std::to_string(dup->u) + "," +
                         std::to_string(dup->v) + ")");
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Canonical edge order fills each list ascending: for a fixed v, neighbors
  // u < v arrive from edges (u, v) before neighbors w > v from edges (v, w).
  for (const auto& e : edges) {
    g.adjacency_[fill[e.u]++] = e.v;
    g.adjacency_[fill[e.v]++] = e.u;
  }
  g.edges_ = std::move(edges);
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::average_degree() const noexcept {
  return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
}

}  // namespace mislab
