#pragma once

// Text codecs for graphs.
//
// Edge-list format (0-based ids):
//   # optional comment lines anywhere
//   <n> <number of edges>
//   <u> <v>
//   ...
// Self-loops, duplicate edges (in either orientation), out-of-range ids,
// and a header/body edge-count mismatch are rejected with the line number.
//
// DIMACS format (1-based ids, converted to 0-based):
//   c comment
//   p edge <n> <m>
//   e <u> <v>
// Repeated edges are common in third-party DIMACS files and are merged.

#include <string>
#include <string_view>

#include "mislab/graph.hpp"

namespace mislab {

Graph parse_edge_list(std::string_view text);

/// Canonical form: header, then edges sorted by (min, max), min endpoint first.
std::string emit_edge_list(const Graph& g);

Graph parse_dimacs(std::string_view text);

/// Reads a file, choosing DIMACS when the first non-comment line starts with 'p'.
Graph load_graph_file(const std::string& path);
void save_graph_file(const std::string& path, const Graph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace mislab
