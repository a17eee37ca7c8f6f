#pragma once

// Text formats for multigraphs.
//
// Edge list (ASCII, LF line endings):
//   n m
//   i j c      c parallel edges between 1-based vertices i < j
//   i i c      c loops at vertex i (stored diagonal is 2c)
// Only nonzero cells are listed, sorted by (i, j) in numeric order.

#include <iosfwd>
#include <string>
#include <string_view>

#include "densemg/graph.hpp"

namespace densemg {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_edge_list(const AdjacencyMatrix& b);
void write_edge_list(std::ostream& os, const AdjacencyMatrix& b);

/// Strict parser: rejects unsorted or duplicate lines, zero counts, indices
/// outside [1, n], i > j, and a header edge count that disagrees with the body.
AdjacencyMatrix parse_edge_list(std::string_view text);
AdjacencyMatrix read_edge_list(std::istream& is);

/// Single-line form of the edge list with ';' separating records, e.g.
/// "2 2;1 1 1;1 2 1". Used as a stable key in distribution tables.
std::string canonical_key(const AdjacencyMatrix& b);
/// Inverse of canonical_key.
AdjacencyMatrix parse_canonical_key(std::string_view key);

/// 1-based colors separated by spaces, e.g. "1 2 2 1".
std::string canonical_key(const UrnConfiguration& psi);
std::string canonical_key(const DegreeSequence& d);

}  // namespace densemg
