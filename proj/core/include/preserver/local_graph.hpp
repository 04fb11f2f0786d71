#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/types.hpp"

namespace preserver {

// Arc of a local shortest-path graph. For directed graphs this is the edge
// itself; for undirected graphs it is the edge oriented in a direction that
// lies on some shortest s -> t path. Only zero-weight edges can appear in
// both orientations.
struct DagArc {
  NodeId tail = 0;
  NodeId head = 0;
  EdgeId edge = 0;
};

// Local shortest-path graph of one demand pair: edge e = (u, v) belongs iff
//   dist(s, u) + c(e) + dist(v, t) == dist(s, t),
// evaluated in exact integer arithmetic. Every cycle in this graph consists
// of zero-weight edges only, so contracting zero-weight strongly connected
// components yields a DAG. Components are renumbered in topological order;
// the source lives in component 0 and the target in the last component.
struct ShortestPathDag {
  Pair demand{};
  Weight distance = 0;

  std::vector<NodeId> nodes;      // sorted node ids on some shortest path
  std::vector<DagArc> arcs;       // sorted by (tail, head, edge)
  std::vector<Weight> arc_cost;   // edge weight per arc
  std::vector<EdgeId> edge_ids;   // sorted, unique

  // Adjacency by local node index (positions in `nodes`); entries are
  // indices into `arcs`, kept in sorted arc order.
  std::vector<std::vector<int>> out_arcs;
  std::vector<std::vector<int>> in_arcs;
  std::vector<int> arc_tail_local;  // local index of each arc's tail
  std::vector<int> arc_head_local;  // local index of each arc's head

  // Zero-weight component contraction.
  int num_comps = 0;
  std::vector<int> comp;                      // by local node index, topo order
  std::vector<std::vector<int>> comp_members; // local node indices per comp
  std::vector<std::vector<int>> comp_out;     // inter-component arc indices per comp
  std::vector<std::vector<int>> intra_out;    // zero-weight intra-component arcs per local node

  int local_index(NodeId v) const;            // -1 when v is not in the graph
  bool contains_edge(EdgeId e) const;
  std::vector<int> arcs_of_edge(EdgeId e) const;
  int source_comp() const { return 0; }
  int target_comp() const { return num_comps - 1; }
};

// Builds the local graph of one pair. Throws UnreachablePairError when t is
// not reachable from s.
ShortestPathDag build_local_graph(const WeightedGraph& graph, Pair demand);

// Variant reusing precomputed distances from s and to t (sized num_nodes).
ShortestPathDag build_local_graph(const WeightedGraph& graph, Pair demand,
                                  std::span<const Weight> dist_from_s,
                                  std::span<const Weight> dist_to_t);

// One local graph per demand pair, in pair order.
std::vector<ShortestPathDag> build_local_graphs(const WeightedGraph& graph,
                                                std::span<const Pair> pairs);

// Deterministic canonical shortest path. When the local graph is acyclic the
// node sequence is lexicographically smallest; inside zero-weight components
// a canonical lexicographic traversal is used.
Path canonical_path(const ShortestPathDag& dag);

// Canonical shortest path traversing the given arc (index into dag.arcs).
// For zero-weight arcs inside a component the result may revisit nodes when
// no simple shortest path through the arc exists.
Path canonical_path_through(const ShortestPathDag& dag, int arc_index);

// Number of distinct shortest paths (zero-weight detours canonicalized),
// saturating at cap + 1.
std::uint64_t count_shortest_paths(const ShortestPathDag& dag, std::uint64_t cap);

// All distinct shortest paths in deterministic order. Routings that differ
// only inside a zero-weight component are collapsed to one canonical path.
// Throws PathExplosionError when more than `cap` paths exist.
std::vector<Path> enumerate_shortest_paths(const ShortestPathDag& dag, std::uint64_t cap);

// Maximum-weight shortest path under per-edge weights (indexed by edge id,
// all non-negative). Weights must vanish on zero-weight intra-component
// edges. Ties prefer the lexicographically smallest node sequence. Throws
// CyclicAfterContractionError if a positive-weight cycle is detected.
struct MaxWeightPath {
  Path path;
  Weight weight = 0;
};
MaxWeightPath max_weight_path(const ShortestPathDag& dag, std::span<const Weight> edge_weight);

}  // namespace preserver
