#pragma once

#include <span>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/types.hpp"

namespace preserver {

// Single-source shortest distances with non-negative weights (binary-heap
// Dijkstra). Unreachable nodes get kUnreachable. With `reverse` set, edges
// are traversed head -> tail, yielding distances TO `source` in a directed
// graph; for undirected graphs the flag has no effect.
std::vector<Weight> shortest_distances(const WeightedGraph& graph, NodeId source,
                                       bool reverse = false);

// Same, restricted to edges whose id is marked in `edge_mask`
// (edge_mask.size() == graph.num_edges()).
std::vector<Weight> shortest_distances_filtered(const WeightedGraph& graph, NodeId source,
                                                std::span<const char> edge_mask,
                                                bool reverse = false);

}  // namespace preserver
