#include "preserver/reduction.hpp"

#include <string>

#include "preserver/errors.hpp"

namespace preserver {

EdgeId ReductionMap::original_edge_of_middle(EdgeId reduced_edge) const {
  if (reduced_edge % 5 != 4) return -1;
  return reduced_edge / 5;
}

ReducedInstance undirected_to_directed(const Instance& instance) {
  if (instance.graph.directed())
    throw AlreadyDirectedError("instance is already directed");

  const WeightedGraph& g = instance.graph;
  ReducedInstance reduced;
  reduced.map.original_nodes = g.num_nodes();
  reduced.map.original_edge_count = g.num_edges();

  std::vector<Edge> edges;
  edges.reserve(5 * static_cast<size_t>(g.num_edges()));
  for (EdgeId k = 0; k < g.num_edges(); ++k) {
    const Edge& ed = g.edge(k);
    NodeId entry = reduced.map.entry_node(k);
    NodeId exit = reduced.map.exit_node(k);
    edges.push_back({ed.tail, entry, 0});
    edges.push_back({ed.head, entry, 0});
    edges.push_back({exit, ed.tail, 0});
    edges.push_back({exit, ed.head, 0});
    edges.push_back({entry, exit, ed.weight});
  }
  reduced.instance.graph =
      WeightedGraph(true, g.num_nodes() + 2 * g.num_edges(), std::move(edges));
  reduced.instance.pairs = instance.pairs;
  reduced.instance.epsilon = instance.epsilon;
  return reduced;
}

PreserverSolution map_solution_back(const Instance& original, const ReductionMap& map,
                                    const PreserverSolution& reduced_solution) {
  if (map.original_nodes != original.graph.num_nodes() ||
      map.original_edge_count != original.graph.num_edges())
    throw DimensionMismatchError("reduction map does not describe this instance");

  std::vector<EdgeId> edges;
  for (EdgeId e : reduced_solution.edges) {
    EdgeId k = map.original_edge_of_middle(e);
    if (k >= 0) edges.push_back(k);
  }

  // A reduced shortest path between original nodes visits
  // orig, v', v'', orig, v', v'', ..., orig: keep every third node and turn
  // each gadget crossing into its original edge.
  std::vector<Path> witnesses;
  witnesses.reserve(reduced_solution.witnesses.size());
  for (const Path& w : reduced_solution.witnesses) {
    if ((w.nodes.size() - 1) % 3 != 0)
      throw ValidationError("reduced witness does not alternate through gadgets");
    Path mapped;
    for (size_t i = 0; i < w.nodes.size(); i += 3) {
      NodeId v = w.nodes[i];
      if (!map.is_original_node(v))
        throw ValidationError("reduced witness misaligned with gadget boundaries");
      mapped.nodes.push_back(v);
    }
    for (size_t i = 1; i < w.edges.size(); i += 3) {
      EdgeId k = map.original_edge_of_middle(w.edges[i]);
      if (k < 0)
        throw ValidationError("reduced witness misaligned with gadget middles");
      mapped.edges.push_back(k);
    }
    witnesses.push_back(std::move(mapped));
  }
  return finalize_solution(original, std::move(edges), std::move(witnesses));
}

}  // namespace preserver
