#ifndef KWAY_IO_HPP
#define KWAY_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "kway/graph.hpp"

namespace kway {

struct ReadOptions {
  // Sum the weights of repeated pairs instead of rejecting them.
  bool merge_duplicates = false;
};

// One edge per line, "u v [w]" with 0-based ids and w defaulting to 1.
// Blank lines and lines starting with '#' are skipped. The vertex count is
// one more than the largest id seen.
WeightedGraph parse_edge_list(std::istream& in, const ReadOptions& opts = {});

// Matrix Market coordinate files (real, integer or pattern; symmetric or
// general), 1-based. Diagonal entries are dropped. In general files the two
// orientations of a pair must agree and are stored once.
WeightedGraph parse_matrix_market(std::istream& in, const ReadOptions& opts = {});

// Dispatches on a leading "%%MatrixMarket" banner. Throws InputNotFound when
// the file cannot be opened and ParseError (with the line number) on bad
// content.
WeightedGraph read_graph(const std::string& path, const ReadOptions& opts = {});

void write_edge_list(std::ostream& out, const WeightedGraph& g);

// One label per line; line i names vertex i.
std::vector<std::string> read_labels(const std::string& path);

}  // namespace kway

#endif  // KWAY_IO_HPP
