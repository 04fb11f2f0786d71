#include "preserver/shortest_path.hpp"

#include <queue>
#include <utility>

namespace preserver {

namespace {

std::vector<Weight> dijkstra(const WeightedGraph& graph, NodeId source,
                             const char* edge_mask, bool reverse) {
  std::vector<Weight> dist(graph.num_nodes(), kUnreachable);
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[source] = 0;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    const auto& arcs = reverse ? graph.in_arcs(v) : graph.out_arcs(v);
    for (const auto& arc : arcs) {
      if (edge_mask && !edge_mask[arc.edge]) continue;
      Weight nd = d + graph.edge(arc.edge).weight;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.push({nd, arc.to});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<Weight> shortest_distances(const WeightedGraph& graph, NodeId source, bool reverse) {
  return dijkstra(graph, source, nullptr, reverse);
}

std::vector<Weight> shortest_distances_filtered(const WeightedGraph& graph, NodeId source,
                                                std::span<const char> edge_mask, bool reverse) {
  return dijkstra(graph, source, edge_mask.data(), reverse);
}

}  // namespace preserver
