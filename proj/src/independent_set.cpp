#include "mislab/independent_set.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "mislab/errors.hpp"

namespace mislab {

Verdict verify_independent(const Graph& g, std::span<const Vertex> members) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in(n, 0);
  for (Vertex v : members) {
    if (v >= n) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    if (in[v]) throw InvalidSolution("vertex " + std::to_string(v) + " listed twice");
    in[v] = 1;
  }

  Verdict verdict;
  // Scanning members ascending and their larger neighbors ascending visits
  // violating edges in canonical (min, max) order.
  for (Vertex u = 0; u < n && !verdict.violation; ++u) {
    if (!in[u]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (v > u && in[v]) {
        verdict.violation = Edge{u, v};
        break;
      }
    }
  }
  if (verdict.violation) return verdict;

  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) continue;
    auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex u) { return in[u] != 0; })) {
      ++verdict.free_vertices;
    }
  }
  verdict.maximal = verdict.free_vertices == 0;
  return verdict;
}

IndependentSet IndependentSet::certify(const Graph& g, std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  auto verdict = verify_independent(g, members);
  if (verdict.violation) {
    throw InvalidSolution("not independent: edge (" + std::to_string(verdict.violation->u) +
                          "," + std::to_string(verdict.violation->v) + ")");
  }
  IndependentSet s;
  s.members_ = std::move(members);
  return s;
}

IndependentSet IndependentSet::from_mask(const Graph& g, std::span<const char> mask) {
  std::vector<Vertex> members;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) members.push_back(static_cast<Vertex>(v));
  }
  return certify(g, std::move(members));
}

bool IndependentSet::contains(Vertex v) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<Vertex> parse_solution_text(std::string_view text) {
  std::vector<Vertex> ids;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw ParseError(line_no, "expected one vertex id, got '" + std::string(line) + "'");
    }
    ids.push_back(v);
  }
  return ids;
}

std::string emit_solution_text(const IndependentSet& s) {
  std::string out;
  for (Vertex v : s.members()) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace mislab
