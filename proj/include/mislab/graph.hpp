#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mislab {

using Vertex = std::uint32_t;

/// Unordered edge stored with u < v.
struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph on vertices 0..n-1 in CSR form.
///
/// Edges are kept in canonical order (sorted by (min, max) endpoint) and
/// every adjacency list is sorted ascending. Safe to share read-only across
/// threads once built.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list with endpoints in either order.
  /// Throws ParameterError on a self-loop, duplicate edge, or out-of-range
  /// endpoint.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// O(log deg) membership test on the sorted adjacency.
  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// 2|E| / n, or 0 for the empty vertex set.
  double average_degree() const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

}  // namespace mislab
