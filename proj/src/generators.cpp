#include "mislab/generators.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "mislab/errors.hpp"
#include "mislab/graph_io.hpp"

namespace mislab {

namespace {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string GraphParams::cell_id() const {
  switch (family) {
    case GraphFamily::ER:
      return "er_n" + std::to_string(n) + "_d" + format_number(d.value_or(0.0));
    case GraphFamily::BA:
      return "ba_n" + std::to_string(n) + "_m" + std::to_string(m.value_or(0));
    case GraphFamily::File:
      break;
  }
  auto slash = source_path.find_last_of('/');
  return "file_" + (slash == std::string::npos ? source_path : source_path.substr(slash + 1));
}

Graph generate_er(std::size_t n, double d, Seed seed) {
  if (n < 2) throw ParameterError("ER generation needs n >= 2");
  if (!(d > 0.0) || d >= static_cast<double>(n)) {
    throw ParameterError("ER generation needs 0 < d < n");
  }
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto target = static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * d / 2.0));

  // Above half density, rejection-sample the missing pairs instead.
  const bool complement = target > total / 2;
  const std::uint64_t draws = complement ? total - target : target;

  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draws * 2);
  std::vector<Edge> edges;
  edges.reserve(target);
  while (chosen.size() < draws) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (chosen.insert(static_cast<std::uint64_t>(u) * n + v).second && !complement) {
      edges.push_back({u, v});
    }
  }
  if (complement) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (!chosen.contains(static_cast<std::uint64_t>(u) * n + v)) edges.push_back({u, v});
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph generate_ba(std::size_t n, std::size_t m, Seed seed) {
  if (m < 1 || m >= n) throw ParameterError("BA generation needs 1 <= m < n");

  std::vector<Edge> edges;
  edges.reserve(m * (m - 1) / 2 + m * (n - m));
  // One entry per edge endpoint, so a uniform draw is degree-proportional.
  std::vector<Vertex> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (Vertex u = 0; u < m; ++u) {
    for (Vertex v = u + 1; v < m; ++v) {
      edges.push_back({u, v});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }

  Rng rng(seed);
  std::vector<char> picked(n, 0);
  std::vector<Vertex> targets;
  targets.reserve(m);
  for (std::size_t t = m; t < n; ++t) {
    targets.clear();
    const std::size_t frozen = endpoints.size();
    while (targets.size() < m) {
      // Only m == 1 starts from a lone degree-0 vertex; fall back to uniform.
      Vertex c = frozen == 0 ? static_cast<Vertex>(rng.below(t))
                             : endpoints[static_cast<std::size_t>(rng.below(frozen))];
      if (picked[c]) continue;
      picked[c] = 1;
      targets.push_back(c);
    }
    for (Vertex c : targets) {
      picked[c] = 0;
      edges.push_back({c, static_cast<Vertex>(t)});
      endpoints.push_back(c);
      endpoints.push_back(static_cast<Vertex>(t));
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph make_graph(const GraphParams& params) {
  switch (params.family) {
    case GraphFamily::ER:
      if (!params.d) throw ParameterError("ER cell needs d");
      return generate_er(params.n, *params.d, params.seed);
    case GraphFamily::BA:
      if (!params.m) throw ParameterError("BA cell needs m");
      return generate_ba(params.n, *params.m, params.seed);
    case GraphFamily::File:
      return load_graph_file(params.source_path);
  }
  throw ParameterError("unknown graph family");
}

GraphFamily parse_family(const std::string& name) {
  if (name == "er" || name == "ER") return GraphFamily::ER;
  if (name == "ba" || name == "BA") return GraphFamily::BA;
  if (name == "file" || name == "File") return GraphFamily::File;
  throw ParameterError("unknown graph family '" + name + "'");
}

std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::ER: return "er";
    case GraphFamily::BA: return "ba";
    case GraphFamily::File: return "file";
  }
  return "?";
}

}  // namespace mislab
