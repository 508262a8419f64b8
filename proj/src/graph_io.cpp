#include "mislab/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "mislab/errors.hpp"

namespace mislab {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

/// Splits into lines, dropping blanks and lines whose first non-space
/// character is one of `comment_chars`.
std::vector<Line> content_lines(std::string_view text, std::string_view comment_chars) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (comment_chars.find(line[first]) != std::string_view::npos) continue;
    lines.push_back({number, line.substr(first)});
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t to_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

class EdgeCollector {
 public:
  EdgeCollector(std::size_t n, bool merge_duplicates) : n_(n), merge_(merge_duplicates) {}

  void add(std::uint64_t u, std::uint64_t v, std::size_t line) {
    if (u >= n_ || v >= n_) {
      throw ParseError(line, "vertex id out of range (n=" + std::to_string(n_) + ")");
    }
    if (u == v) throw ParseError(line, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen_.insert(u * n_ + v).second) {
      if (merge_) return;
      throw ParseError(line, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    edges_.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }

  std::size_t size() const { return edges_.size(); }
  Graph build() { return Graph::from_edges(n_, std::move(edges_)); }

 private:
  std::size_t n_;
  bool merge_;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<Edge> edges_;
};

}  // namespace

Graph parse_edge_list(std::string_view text) {
  auto lines = content_lines(text, "#");
  if (lines.empty()) throw ParseError(0, "missing header line 'n m'");
  auto header = tokens(lines[0].text);
  if (header.size() != 2) throw ParseError(lines[0].number, "header must be 'n m'");
  const auto n = to_uint(header[0], lines[0].number);
  const auto m = to_uint(header[1], lines[0].number);
  if (n > 0xFFFFFFFFULL) throw ParseError(lines[0].number, "too many vertices");

  EdgeCollector edges(n, false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto tok = tokens(lines[i].text);
    if (tok.size() != 2) throw ParseError(lines[i].number, "edge line must be 'u v'");
    edges.add(to_uint(tok[0], lines[i].number), to_uint(tok[1], lines[i].number), lines[i].number);
  }
  if (edges.size() != m) {
    throw ParseError(0, "header declares " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));
  }
  return edges.build();
}

std::string emit_edge_list(const Graph& g) {
  std::string out;
  out.reserve(16 + g.num_edges() * 12);
  out += std::to_string(g.num_vertices());
  out += ' ';
  out += std::to_string(g.num_edges());
  out += '\n';
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

Graph parse_dimacs(std::string_view text) {
  auto lines = content_lines(text, "c%#");
  std::optional<EdgeCollector> edges;
  for (const auto& line : lines) {
    auto tok = tokens(line.text);
    if (tok[0] == "p") {
      if (edges) throw ParseError(line.number, "second 'p' line");
      if (tok.size() != 4) throw ParseError(line.number, "problem line must be 'p edge n m'");
      edges.emplace(to_uint(tok[2], line.number), true);
    } else if (tok[0] == "e") {
      if (!edges) throw ParseError(line.number, "edge before 'p' line");
      if (tok.size() != 3) throw ParseError(line.number, "edge line must be 'e u v'");
      auto u = to_uint(tok[1], line.number);
      auto v = to_uint(tok[2], line.number);
      if (u == 0 || v == 0) throw ParseError(line.number, "DIMACS ids are 1-based");
      edges->add(u - 1, v - 1, line.number);
    } else {
      throw ParseError(line.number, "unexpected line '" + std::string(line.text) + "'");
    }
  }
  if (!edges) throw ParseError(0, "missing 'p edge n m' line");
  return edges->build();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Graph load_graph_file(const std::string& path) {
  auto text = read_text_file(path);
  auto lines = content_lines(text, "c#");
  if (!lines.empty() && lines[0].text.starts_with("p")) return parse_dimacs(text);
  return parse_edge_list(text);
}

void save_graph_file(const std::string& path, const Graph& g) {
  write_text_file(path, emit_edge_list(g));
}

}  // namespace mislab
