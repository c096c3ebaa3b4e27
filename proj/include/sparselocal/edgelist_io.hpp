#pragma once

#include <iosfwd>
#include <string>

#include "sparselocal/graph.hpp"

namespace sparselocal {

// Plain-text edge list:
//
//   n m
//   u v        (m lines, u < v, whitespace separated)
//   #arrival   (optional section)
//   id         (n lines: vertex id in arrival order, earliest first)
//
// Writing emits edges sorted lexicographically and the arrival section only
// when the graph has arrival data. Reading accepts blank lines and tolerates
// edges in either orientation but rejects structural errors (bad counts,
// out-of-range ids, duplicates, self-loops, malformed arrival).
void write_edgelist(std::ostream& out, const Graph& g);
Graph read_edgelist(std::istream& in);

void save_edgelist(const std::string& path, const Graph& g);
Graph load_edgelist(const std::string& path);

}  // namespace sparselocal
