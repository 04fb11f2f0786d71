#include "preserver/graph.hpp"

#include <algorithm>
#include <set>

#include "preserver/errors.hpp"

namespace preserver {

WeightedGraph::WeightedGraph(bool directed, NodeId num_nodes, std::vector<Edge> edges)
    : directed_(directed), num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 0) throw ValidationError("negative node count");
  // adjacency lists index by endpoint, so range errors must be caught here
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.tail < 0 || ed.tail >= num_nodes_ || ed.head < 0 || ed.head >= num_nodes_)
      throw ValidationError("edge " + std::to_string(e) + " references a node out of range");
  }
  out_.resize(num_nodes_);
  in_.resize(num_nodes_);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    const Edge& ed = edges_[e];
    out_[ed.tail].push_back({ed.head, e});
    in_[ed.head].push_back({ed.tail, e});
    if (!directed_) {
      out_[ed.head].push_back({ed.tail, e});
      in_[ed.tail].push_back({ed.head, e});
    }
  }
}

Weight WeightedGraph::cost_of(const std::vector<EdgeId>& edge_ids) const {
  std::vector<EdgeId> ids = edge_ids;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Weight total = 0;
  for (EdgeId e : ids) total += edges_[e].weight;
  return total;
}

void normalize_instance(Instance& instance, std::vector<std::string>* warnings) {
  const WeightedGraph& g = instance.graph;
  if (g.num_nodes() < 0) throw ValidationError("negative node count");
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.tail < 0 || ed.tail >= g.num_nodes() || ed.head < 0 || ed.head >= g.num_nodes())
      throw ValidationError("edge " + std::to_string(e) + " references a node out of range");
    if (ed.tail == ed.head)
      throw ValidationError("edge " + std::to_string(e) + " is a self loop");
    if (ed.weight < 0)
      throw ValidationError("edge " + std::to_string(e) + " has negative weight");
  }
  if (!(instance.epsilon > 0.0 && instance.epsilon < 1.0))
    throw ValidationError("epsilon must lie strictly between 0 and 1");

  std::vector<Pair> unique_pairs;
  std::set<Pair> seen;
  for (const Pair& p : instance.pairs) {
    if (p.s < 0 || p.s >= g.num_nodes() || p.t < 0 || p.t >= g.num_nodes())
      throw ValidationError("demand pair references a node out of range");
    if (p.s == p.t)
      throw ValidationError("demand pair with identical endpoints");
    if (seen.insert(p).second) {
      unique_pairs.push_back(p);
    } else if (warnings) {
      warnings->push_back("duplicate demand pair (" + std::to_string(p.s) + ", " +
                          std::to_string(p.t) + ") dropped");
    }
  }
  instance.pairs = std::move(unique_pairs);
}

}  // namespace preserver
