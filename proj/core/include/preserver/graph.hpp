#pragma once

#include <string>
#include <vector>

#include "preserver/types.hpp"

namespace preserver {

// Edge of a weighted graph. For undirected graphs (tail, head) is just the
// order the endpoints were given in; traversal works both ways.
struct Edge {
  NodeId tail = 0;
  NodeId head = 0;
  Weight weight = 0;
};

// Weighted graph with non-negative integer weights, parallel edges allowed.
// Edge ids are positions in `edges`. Adjacency is built once on construction
// and the structure is immutable afterwards, so concurrent reads are safe.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(bool directed, NodeId num_nodes, std::vector<Edge> edges);

  bool directed() const { return directed_; }
  NodeId num_nodes() const { return num_nodes_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  // Arcs leaving / entering a node. For undirected graphs an edge appears in
  // the out list of both endpoints and the in lists mirror the out lists.
  struct Arc {
    NodeId to = 0;
    EdgeId edge = 0;
  };
  const std::vector<Arc>& out_arcs(NodeId v) const { return out_[v]; }
  const std::vector<Arc>& in_arcs(NodeId v) const { return in_[v]; }

  // Sum of weights over a set of edge ids (ids may repeat; each counted once).
  Weight cost_of(const std::vector<EdgeId>& edge_ids) const;

 private:
  bool directed_ = true;
  NodeId num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

// Problem instance: graph, demand pairs and the accuracy parameter used by
// the approximation pipeline. Pairs keep their input order; duplicates are
// removed by normalize_instance (parsing and generation both run it).
struct Instance {
  WeightedGraph graph;
  std::vector<Pair> pairs;
  double epsilon = 0.5;
};

// Structural validation shared by parsing, generation and the public API.
// Checks id ranges, non-negative weights, s != t, and epsilon in (0, 1).
// Deduplicates pairs in place, appending one warning line per duplicate to
// `warnings` when given. Throws ValidationError on hard violations.
void normalize_instance(Instance& instance, std::vector<std::string>* warnings = nullptr);

}  // namespace preserver
