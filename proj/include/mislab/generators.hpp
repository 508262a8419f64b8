#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mislab/graph.hpp"
#include "mislab/rng.hpp"

namespace mislab {

enum class GraphFamily { ER, BA, File };

struct GraphParams {
  GraphFamily family = GraphFamily::ER;
  std::size_t n = 0;
  std::optional<double> d;       // ER target average degree
  std::optional<std::size_t> m;  // BA attachment count
  Seed seed = 0;
  std::string source_path;       // File

  /// Short stable key such as "er_n1000_d10" or "ba_n300_m15".
  std::string cell_id() const;
};

/// G(n, M) with M = floor(n * d / 2) distinct pairs drawn uniformly.
/// Requires n >= 2 and 0 < d < n.
Graph generate_er(std::size_t n, double d, Seed seed);

/// Preferential attachment seeded by a clique on vertices 0..m-1. Every later
/// vertex links to m distinct earlier vertices drawn proportionally to their
/// degree at the start of its round. Edge count is m(m-1)/2 + m(n-m).
/// Requires 1 <= m < n.
Graph generate_ba(std::size_t n, std::size_t m, Seed seed);

/// Generates (ER/BA) or loads (File) the graph described by `params`.
Graph make_graph(const GraphParams& params);

GraphFamily parse_family(const std::string& name);
std::string family_name(GraphFamily family);

}  // namespace mislab
