#pragma once

#include "preserver/graph.hpp"
#include "preserver/solution.hpp"

namespace preserver {

// Per-edge gadget replacing undirected edge k = (a, b) of weight c:
//   new nodes  v'  = n + 2k,  v'' = n + 2k + 1
//   new edges  5k+0: a -> v'   weight 0
//              5k+1: b -> v'   weight 0
//              5k+2: v'' -> a  weight 0
//              5k+3: v'' -> b  weight 0
//              5k+4: v' -> v'' weight c
// The directed graph has n + 2m nodes and 5m edges; all pairwise distances
// between original nodes are preserved, as is the objective value.
struct ReductionMap {
  NodeId original_nodes = 0;
  EdgeId original_edge_count = 0;

  NodeId entry_node(EdgeId k) const { return original_nodes + 2 * k; }       // v'
  NodeId exit_node(EdgeId k) const { return original_nodes + 2 * k + 1; }    // v''
  EdgeId middle_edge(EdgeId k) const { return 5 * k + 4; }                   // v' -> v''
  bool is_original_node(NodeId v) const { return v < original_nodes; }
  EdgeId original_edge_of_middle(EdgeId reduced_edge) const;                 // -1 if none
};

struct ReducedInstance {
  Instance instance;
  ReductionMap map;
};

// Throws AlreadyDirectedError when the input is directed.
ReducedInstance undirected_to_directed(const Instance& instance);

// Maps a solution of the reduced instance back to the original undirected
// instance: original edge k enters H iff the middle edge of gadget k is in
// the reduced solution; witness paths keep every third node.
PreserverSolution map_solution_back(const Instance& original, const ReductionMap& map,
                                    const PreserverSolution& reduced_solution);

}  // namespace preserver
