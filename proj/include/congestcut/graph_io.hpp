#pragma once

#include <iosfwd>
#include <string>

#include "congestcut/graph.hpp"

namespace congestcut {

/// Text edge list. Header "n m [weighted]", then one "u v [w]" line per
/// edge. '#' starts a comment. Rejects self-loops and duplicates with
/// line-numbered errors.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace congestcut
