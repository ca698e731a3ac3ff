#pragma once

#include <iosfwd>
#include <string>

#include "streampart/graph.hpp"

namespace streampart {

// Edge-list text format, stable for golden tests:
//   n l
//   u v mult          (one line per unique edge, u < v, ascending)
//   label v c         (one line per vertex when l > 0)
// l is the number of clusters, 0 when the graph is unlabeled.
void save_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(std::istream& in);

void save_edge_list_file(const Graph& g, const std::string& path);
Graph load_edge_list_file(const std::string& path);

}  // namespace streampart
