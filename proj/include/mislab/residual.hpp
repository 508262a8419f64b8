#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mislab/graph.hpp"
#include "mislab/rng.hpp"

namespace mislab {

/// Does nothing; default listener for ResidualView deletions.
struct NoResidualListener {
  void removed(Vertex) {}
  void degree_dropped(Vertex, std::uint32_t) {}
};

/// The graph left after deleting vertices, with live degrees maintained
/// incrementally. Holds a reference to `base`, which must outlive it.
///
/// Single-owner mutable state; do not share across threads.
class ResidualView {
 public:
  explicit ResidualView(const Graph& base);
  ResidualView(const Graph& base, std::span<const Vertex> removed);

  const Graph& base() const noexcept { return *base_; }
  bool live(Vertex v) const noexcept { return !removed_[v]; }
  std::uint32_t live_degree(Vertex v) const noexcept { return live_degree_[v]; }
  std::size_t live_count() const noexcept { return live_count_; }

  /// Smallest live degree over all live vertices. Requires live_count() > 0.
  std::uint32_t min_live_degree() const;

  /// Deletes v if live.
  void remove(Vertex v) { remove_closed_neighborhood_impl(v, false, listener_sink_); }

  /// Deletes v (which must be live) and its live neighbors. The listener
  /// sees `removed(x)` for each deleted vertex, then `degree_dropped(u, d)`
  /// once per surviving vertex per lost neighbor, with its new degree d.
  /// Cost is O(sum of degrees of the deleted vertices).
  template <typename Listener = NoResidualListener>
  void remove_closed_neighborhood(Vertex v, Listener&& listener = {}) {
    remove_closed_neighborhood_impl(v, true, listener);
  }

 private:
  template <typename Listener>
  void remove_closed_neighborhood_impl(Vertex v, bool with_neighbors, Listener& listener);
  void mark_removed(Vertex v);
  void drop_degree(Vertex u);

  const Graph* base_;
  std::vector<char> removed_;
  std::vector<std::uint32_t> live_degree_;
  std::vector<std::uint32_t> degree_count_;
  mutable std::uint32_t min_hint_ = 0;
  std::size_t live_count_ = 0;
  std::vector<Vertex> scratch_;
  NoResidualListener listener_sink_;
};

template <typename Listener>
void ResidualView::remove_closed_neighborhood_impl(Vertex v, bool with_neighbors,
                                                   Listener& listener) {
  if (removed_[v]) return;
  scratch_.clear();
  scratch_.push_back(v);
  mark_removed(v);
  if (with_neighbors) {
    for (Vertex u : base_->neighbors(v)) {
      if (!removed_[u]) {
        scratch_.push_back(u);
        mark_removed(u);
      }
    }
  }
  for (Vertex x : scratch_) listener.removed(x);
  for (Vertex x : scratch_) {
    for (Vertex u : base_->neighbors(x)) {
      if (removed_[u]) continue;
      drop_degree(u);
      listener.degree_dropped(u, live_degree_[u]);
    }
  }
}

/// Bucket queue of vertices keyed by a non-increasing integer key (a live
/// degree). Supports uniform random choice among minimum-key entries in O(1).
class MinDegreeQueue {
 public:
  /// Capacity for vertex ids < n and keys <= max_key.
  MinDegreeQueue(std::size_t n, std::uint32_t max_key);

  bool empty() const noexcept { return size_ == 0; }
  std::size_t size() const noexcept { return size_; }
  bool contains(Vertex v) const noexcept { return pos_[v] != kAbsent; }
  std::uint32_t key(Vertex v) const noexcept { return key_[v]; }

  void insert(Vertex v, std::uint32_t key);
  void erase(Vertex v);
  /// Moves a contained vertex to a new key; no-op when absent.
  void update(Vertex v, std::uint32_t key);

  std::uint32_t min_key() const;
  std::span<const Vertex> min_bucket() const;
  Vertex pick_min(Rng& rng) const;

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  std::vector<std::vector<Vertex>> buckets_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> key_;
  mutable std::uint32_t min_hint_ = 0;
  std::size_t size_ = 0;
};

}  // namespace mislab
