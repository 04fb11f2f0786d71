#pragma once

// Shared fixtures and independent reference implementations for the test
// suites. Everything here recomputes results from first principles (simple
// path enumeration, exhaustive selection) so library outputs are checked
// against a second, structurally different computation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/types.hpp"

namespace testsupport {

using preserver::Edge;
using preserver::EdgeId;
using preserver::Instance;
using preserver::NodeId;
using preserver::Pair;
using preserver::Path;
using preserver::Weight;
using preserver::WeightedGraph;

inline Weight path_weight(const WeightedGraph& g, const Path& p) {
  Weight w = 0;
  for (EdgeId e : p.edges) w += g.edge(e).weight;
  return w;
}

// Structural check that `p` is a node-simple s-t walk over existing edges
// with matching orientation (either orientation when undirected).
inline bool is_simple_path(const WeightedGraph& g, const Path& p, NodeId s,
                           NodeId t) {
  if (p.nodes.empty() || p.nodes.front() != s || p.nodes.back() != t)
    return false;
  if (p.edges.size() + 1 != p.nodes.size()) return false;
  std::set<NodeId> seen;
  for (NodeId v : p.nodes)
    if (!seen.insert(v).second) return false;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = g.edge(p.edges[i]);
    bool forward = e.tail == p.nodes[i] && e.head == p.nodes[i + 1];
    bool backward = e.tail == p.nodes[i + 1] && e.head == p.nodes[i];
    if (!(forward || (!g.directed() && backward))) return false;
  }
  return true;
}

// Every node-simple s-t path, found by plain depth-first search over the
// edge list (no reliance on library adjacency or shortest-path machinery).
inline std::vector<Path> all_simple_paths(const WeightedGraph& g, NodeId s,
                                          NodeId t) {
  std::vector<Path> result;
  std::vector<char> used(g.num_nodes(), 0);
  Path cur;
  cur.nodes.push_back(s);
  used[s] = 1;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (v == t) {
      result.push_back(cur);
      return;
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      NodeId next = -1;
      if (ed.tail == v && !used[ed.head])
        next = ed.head;
      else if (!g.directed() && ed.head == v && ed.tail != ed.head &&
               !used[ed.tail])
        next = ed.tail;
      if (next < 0) continue;
      used[next] = 1;
      cur.nodes.push_back(next);
      cur.edges.push_back(e);
      dfs(next);
      cur.nodes.pop_back();
      cur.edges.pop_back();
      used[next] = 0;
    }
  };
  dfs(s);
  return result;
}

// Reference shortest distance: minimum weight over all simple paths
// (exponential, for tiny graphs only). Unreachable -> kUnreachable.
inline Weight brute_distance(const WeightedGraph& g, NodeId s, NodeId t) {
  if (s == t) return 0;
  Weight best = preserver::kUnreachable;
  for (const Path& p : all_simple_paths(g, s, t))
    best = std::min(best, path_weight(g, p));
  return best;
}

// Reference savings of one combination of witness paths: U - c(union).
inline Weight combo_objective(const WeightedGraph& g,
                              const std::vector<Path>& chosen) {
  Weight upper = 0;
  std::set<EdgeId> uni;
  for (const Path& p : chosen) {
    upper += path_weight(g, p);
    uni.insert(p.edges.begin(), p.edges.end());
  }
  Weight cost = 0;
  for (EdgeId e : uni) cost += g.edge(e).weight;
  return upper - cost;
}

// Exhaustive exact optimum over one-shortest-path-per-pair selections,
// computed with the local enumeration above. Returns U - min union cost.
inline Weight brute_force_objective(const Instance& inst) {
  std::vector<std::vector<Path>> options;
  for (const Pair& q : inst.pairs) {
    Weight d = brute_distance(inst.graph, q.s, q.t);
    std::vector<Path> shortest;
    for (const Path& p : all_simple_paths(inst.graph, q.s, q.t))
      if (path_weight(inst.graph, p) == d) shortest.push_back(p);
    options.push_back(std::move(shortest));
  }
  Weight best = std::numeric_limits<Weight>::min();
  std::vector<int> pick(options.size(), 0);
  while (true) {
    std::vector<Path> chosen;
    for (std::size_t i = 0; i < options.size(); ++i)
      chosen.push_back(options[i][pick[i]]);
    best = std::max(best, combo_objective(inst.graph, chosen));
    int i = static_cast<int>(options.size()) - 1;
    while (i >= 0 && pick[i] + 1 == static_cast<int>(options[i].size()))
      pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return best;
}

// --- Canonical fixtures -------------------------------------------------

// Directed path a -> b -> c -> d with unit weights and the two overlapping
// demands (a, c), (b, d). One unit of savings is available on edge b -> c.
inline Instance chain_instance(double epsilon = 0.5) {
  Instance inst;
  inst.graph = WeightedGraph(true, 4,
                             {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  inst.pairs = {{0, 2}, {1, 3}};
  inst.epsilon = epsilon;
  return inst;
}

// Directed diamond: 0 -> 1 -> 3 and 0 -> 2 -> 3, unit weights, demands
// (0, 3), (1, 3). Sharing edge 1 -> 3 saves one unit.
inline Instance diamond_instance(double epsilon = 0.5) {
  Instance inst;
  inst.graph = WeightedGraph(
      true, 4, {{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}});
  inst.pairs = {{0, 3}, {1, 3}};
  inst.epsilon = epsilon;
  return inst;
}

// Diamond plus `pads` disjoint single-edge demands. With enough pads the
// thickness threshold exceeds 2, so every edge is thin, every pair is
// small, and the restricted LP sees the full sharing opportunity (optimum
// 1, on edge 1 -> 3).
inline Instance padded_diamond_instance(int pads, double epsilon = 0.25) {
  Instance inst;
  std::vector<Edge> edges{{0, 1, 1}, {1, 3, 1}, {0, 2, 1}, {2, 3, 1}};
  std::vector<Pair> pairs{{0, 3}, {1, 3}};
  NodeId next = 4;
  for (int i = 0; i < pads; ++i) {
    edges.push_back({next, next + 1, 1});
    pairs.push_back({next, next + 1});
    next += 2;
  }
  inst.graph = WeightedGraph(true, next, std::move(edges));
  inst.pairs = std::move(pairs);
  inst.epsilon = epsilon;
  return inst;
}

// Two chain demands overlapping on nine unit edges, plus 89 pad demands so
// m = 100 exactly. With epsilon = 0.05 every edge is thin and both chain
// pairs sit exactly on the b = sqrt(m) survival boundary, so pruning keeps
// them: the thin savings survive, i.e. the instance is heavy.
inline Instance heavy_chain_instance() {
  Instance inst;
  std::vector<Edge> edges;
  std::vector<Pair> pairs;
  for (NodeId v = 0; v < 11; ++v) edges.push_back({v, v + 1, 1});
  pairs.push_back({0, 10});
  pairs.push_back({1, 11});
  NodeId next = 12;
  for (int i = 0; i < 89; ++i) {
    edges.push_back({next, next + 1, 1});
    pairs.push_back({next, next + 1});
    next += 2;
  }
  inst.graph = WeightedGraph(true, next, std::move(edges));
  inst.pairs = std::move(pairs);
  inst.epsilon = 0.05;
  return inst;
}

}  // namespace testsupport
