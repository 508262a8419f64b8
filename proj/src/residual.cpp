#include "mislab/residual.hpp"

#include <algorithm>
#include <stdexcept>

namespace mislab {

ResidualView::ResidualView(const Graph& base)
    : base_(&base),
      removed_(base.num_vertices(), 0),
      live_degree_(base.num_vertices()),
      live_count_(base.num_vertices()) {
  std::uint32_t max_degree = 0;
  for (Vertex v = 0; v < base.num_vertices(); ++v) {
    live_degree_[v] = base.degree(v);
    max_degree = std::max(max_degree, live_degree_[v]);
  }
  degree_count_.assign(max_degree + 1, 0);
  for (auto d : live_degree_) ++degree_count_[d];
}

ResidualView::ResidualView(const Graph& base, std::span<const Vertex> removed)
    : ResidualView(base) {
  for (Vertex v : removed) remove(v);
}

std::uint32_t ResidualView::min_live_degree() const {
  if (live_count_ == 0) throw std::logic_error("min_live_degree on an empty residual graph");
  while (degree_count_[min_hint_] == 0) ++min_hint_;
  return min_hint_;
}

void ResidualView::mark_removed(Vertex v) {
  removed_[v] = 1;
  --degree_count_[live_degree_[v]];
  --live_count_;
}

void ResidualView::drop_degree(Vertex u) {
  auto& d = live_degree_[u];
  --degree_count_[d];
  --d;
  ++degree_count_[d];
  min_hint_ = std::min(min_hint_, d);
}

MinDegreeQueue::MinDegreeQueue(std::size_t n, std::uint32_t max_key)
    : buckets_(static_cast<std::size_t>(max_key) + 1), pos_(n, kAbsent), key_(n, 0) {}

void MinDegreeQueue::insert(Vertex v, std::uint32_t key) {
  auto& bucket = buckets_[key];
  pos_[v] = bucket.size();
  key_[v] = key;
  bucket.push_back(v);
  ++size_;
  min_hint_ = std::min(min_hint_, key);
}

void MinDegreeQueue::erase(Vertex v) {
  auto& bucket = buckets_[key_[v]];
  const std::size_t p = pos_[v];
  bucket[p] = bucket.back();
  pos_[bucket[p]] = p;
  bucket.pop_back();
  pos_[v] = kAbsent;
  --size_;
}

void MinDegreeQueue::update(Vertex v, std::uint32_t key) {
  if (!contains(v) || key_[v] == key) return;
  erase(v);
  insert(v, key);
}

std::uint32_t MinDegreeQueue::min_key() const {
  if (size_ == 0) throw std::logic_error("min_key on an empty queue");
  while (buckets_[min_hint_].empty()) ++min_hint_;
  return min_hint_;
}

std::span<const Vertex> MinDegreeQueue::min_bucket() const { return buckets_[min_key()]; }

Vertex MinDegreeQueue::pick_min(Rng& rng) const {
  auto bucket = min_bucket();
  return bucket[static_cast<std::size_t>(rng.below(bucket.size()))];
}

}  // namespace mislab
