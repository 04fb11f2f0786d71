#include "preserver/solution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "preserver/errors.hpp"
#include "preserver/shortest_path.hpp"

namespace preserver {

namespace {

// Distances from every distinct demand source, computed once each.
std::map<NodeId, std::vector<Weight>> source_distances(const Instance& instance) {
  std::map<NodeId, std::vector<Weight>> dist;
  for (const Pair& p : instance.pairs)
    if (!dist.count(p.s)) dist[p.s] = shortest_distances(instance.graph, p.s);
  return dist;
}

}  // namespace

Weight trivial_upper_bound(const Instance& instance) {
  auto dist = source_distances(instance);
  Weight total = 0;
  for (const Pair& p : instance.pairs) {
    Weight d = dist[p.s][p.t];
    if (d == kUnreachable)
      throw UnreachablePairError("node " + std::to_string(p.t) +
                                 " is unreachable from node " + std::to_string(p.s));
    total += d;
  }
  return total;
}

PreserverSolution finalize_solution(const Instance& instance, std::vector<EdgeId> edges,
                                    std::vector<Path> witnesses) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  PreserverSolution solution;
  solution.edges = std::move(edges);
  solution.witnesses = std::move(witnesses);
  solution.upper_bound = trivial_upper_bound(instance);
  solution.cost = instance.graph.cost_of(solution.edges);
  solution.objective = solution.upper_bound - solution.cost;
  return solution;
}

FeasibilityReport verify_feasible(const Instance& instance,
                                  const PreserverSolution& solution) {
  const WeightedGraph& g = instance.graph;
  std::vector<char> mask(g.num_edges(), 0);
  for (EdgeId e : solution.edges) {
    if (e < 0 || e >= g.num_edges())
      throw ValidationError("solution edge id out of range");
    mask[e] = 1;
  }

  std::map<NodeId, std::vector<Weight>> full, restricted;
  FeasibilityReport report;
  for (const Pair& p : instance.pairs) {
    if (!full.count(p.s)) {
      full[p.s] = shortest_distances(g, p.s);
      restricted[p.s] = shortest_distances_filtered(g, p.s, mask);
    }
    Weight required = full[p.s][p.t];
    if (required == kUnreachable)
      throw UnreachablePairError("node " + std::to_string(p.t) +
                                 " is unreachable from node " + std::to_string(p.s));
    Weight achieved = restricted[p.s][p.t];
    if (achieved != required) {
      report.feasible = false;
      report.violations.push_back({p, required, achieved});
    }
  }
  return report;
}

SavingsReport savings_report(const Instance& instance, const PreserverSolution& solution) {
  const WeightedGraph& g = instance.graph;
  if (solution.witnesses.size() != instance.pairs.size())
    throw ValidationError("expected one witness path per demand pair");

  std::vector<EdgeId> edges = solution.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto in_h = [&](EdgeId e) {
    return std::binary_search(edges.begin(), edges.end(), e);
  };

  auto dist = source_distances(instance);
  std::vector<int> multiplicity(g.num_edges(), 0);
  Weight upper_bound = 0;

  for (size_t i = 0; i < instance.pairs.size(); ++i) {
    const Pair& p = instance.pairs[i];
    const Path& w = solution.witnesses[i];
    if (w.nodes.size() < 2 || w.edges.size() + 1 != w.nodes.size() ||
        w.nodes.front() != p.s || w.nodes.back() != p.t)
      throw ValidationError("witness " + std::to_string(i) + " is malformed");
    Weight length = 0;
    for (size_t k = 0; k < w.edges.size(); ++k) {
      EdgeId e = w.edges[k];
      if (e < 0 || e >= g.num_edges())
        throw ValidationError("witness edge id out of range");
      const Edge& ed = g.edge(e);
      bool forward = ed.tail == w.nodes[k] && ed.head == w.nodes[k + 1];
      bool backward =
          !g.directed() && ed.head == w.nodes[k] && ed.tail == w.nodes[k + 1];
      if (!forward && !backward)
        throw ValidationError("witness " + std::to_string(i) +
                              " uses edge " + std::to_string(e) +
                              " between nodes it does not join");
      if (!in_h(e))
        throw ValidationError("witness " + std::to_string(i) + " leaves the subgraph");
      length += ed.weight;
    }
    Weight required = dist[p.s][p.t];
    if (required == kUnreachable)
      throw UnreachablePairError("node " + std::to_string(p.t) +
                                 " is unreachable from node " + std::to_string(p.s));
    if (length != required)
      throw NonShortestWitnessError(
          "witness " + std::to_string(i) + " has length " + std::to_string(length) +
          ", shortest distance is " + std::to_string(required));
    upper_bound += length;

    std::vector<EdgeId> seen = w.edges;
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (EdgeId e : seen) ++multiplicity[e];
  }

  SavingsReport report;
  report.upper_bound = upper_bound;
  report.cost = g.cost_of(edges);
  report.objective = upper_bound - report.cost;
  Weight total_savings = 0;
  for (EdgeId e : edges) {
    if (multiplicity[e] == 0 && g.edge(e).weight > 0)
      throw ValidationError("positive-weight edge " + std::to_string(e) +
                            " is not covered by any witness");
    Weight share =
        multiplicity[e] > 0 ? (multiplicity[e] - 1) * g.edge(e).weight : 0;
    report.shares.push_back({e, multiplicity[e], share});
    total_savings += share;
  }
  if (total_savings != report.objective)
    throw std::logic_error("witness accounting does not match the objective");
  return report;
}

}  // namespace preserver
