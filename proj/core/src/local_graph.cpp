#include "preserver/local_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <queue>
#include <stdexcept>
#include <string>

#include "preserver/errors.hpp"
#include "preserver/shortest_path.hpp"

namespace preserver {

namespace {

struct ArcLess {
  bool operator()(const DagArc& a, const DagArc& b) const {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.head != b.head) return a.head < b.head;
    return a.edge < b.edge;
  }
};

// Iterative Tarjan over the local graph; fills comp_raw with component ids.
int tarjan_components(int num_nodes, const std::vector<std::vector<int>>& out_arcs,
                      const std::vector<int>& arc_head_local, std::vector<int>& comp_raw) {
  std::vector<int> index(num_nodes, -1), low(num_nodes, 0);
  std::vector<char> on_stack(num_nodes, 0);
  std::vector<int> stack;
  comp_raw.assign(num_nodes, -1);
  int next_index = 0, next_comp = 0;

  struct Frame {
    int node;
    size_t arc_pos;
  };
  std::vector<Frame> frames;
  for (int start = 0; start < num_nodes; ++start) {
    if (index[start] != -1) continue;
    frames.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.arc_pos < out_arcs[f.node].size()) {
        int w = arc_head_local[out_arcs[f.node][f.arc_pos++]];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
      } else {
        int v = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] = std::min(low[frames.back().node], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp_raw[w] = next_comp;
            if (w == v) break;
          }
          ++next_comp;
        }
      }
    }
  }
  return next_comp;
}

// Depth-first reachability through zero-weight intra-component arcs,
// ignoring nodes marked in `blocked`.
bool zero_reachable(const ShortestPathDag& dag, int from, int to,
                    const std::vector<char>& blocked) {
  if (from == to) return true;
  std::vector<char> seen(dag.nodes.size(), 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int ai : dag.intra_out[v]) {
      int h = dag.arc_head_local[ai];
      if (h == to) return true;
      if (seen[h] || blocked[h]) continue;
      seen[h] = 1;
      stack.push_back(h);
    }
  }
  return false;
}

// Greedy lexicographic simple walk from `from` to `to` through zero-weight
// intra-component arcs, avoiding `blocked`. On success appends everything
// after `from` to `out`, marks the traversed nodes in `blocked` and returns
// true; on failure leaves both untouched.
bool try_append_zero_path(const ShortestPathDag& dag, int from, int to,
                          std::vector<char>& blocked, Path& out) {
  if (from == to) return true;
  std::vector<char> visited = blocked;
  visited[from] = 1;
  Path segment;
  int cur = from;
  while (cur != to) {
    int chosen = -1;
    for (int ai : dag.intra_out[cur]) {
      int h = dag.arc_head_local[ai];
      if (visited[h]) continue;
      if (h == to || zero_reachable(dag, h, to, visited)) {
        chosen = ai;
        break;
      }
    }
    if (chosen < 0) return false;
    int h = dag.arc_head_local[chosen];
    visited[h] = 1;
    segment.nodes.push_back(dag.arcs[chosen].head);
    segment.edges.push_back(dag.arcs[chosen].edge);
    cur = h;
  }
  blocked = std::move(visited);
  out.nodes.insert(out.nodes.end(), segment.nodes.begin(), segment.nodes.end());
  out.edges.insert(out.edges.end(), segment.edges.begin(), segment.edges.end());
  return true;
}

// Fewest-hops walk from `from` to `to` through intra-component arcs with
// deterministic parent selection. Ignores any outside visitation state; used
// as the fallback when no simple routing exists.
void append_zero_walk_bfs(const ShortestPathDag& dag, int from, int to, Path& out) {
  if (from == to) return;
  std::vector<int> parent_arc(dag.nodes.size(), -1);
  std::vector<char> seen(dag.nodes.size(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (int ai : dag.intra_out[v]) {
      int h = dag.arc_head_local[ai];
      if (seen[h]) continue;
      seen[h] = 1;
      parent_arc[h] = ai;
      queue.push_back(h);
    }
  }
  std::vector<int> rev;
  for (int v = to; v != from; v = dag.arc_tail_local[parent_arc[v]])
    rev.push_back(parent_arc[v]);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    out.nodes.push_back(dag.arcs[*it].head);
    out.edges.push_back(dag.arcs[*it].edge);
  }
}

void append_arc(const ShortestPathDag& dag, int arc_index, Path& out) {
  out.nodes.push_back(dag.arcs[arc_index].head);
  out.edges.push_back(dag.arcs[arc_index].edge);
}

// Canonical continuation from a node to the target, choosing the first
// inter-component arc at every component. `strict` demands simple routing.
bool append_canonical_tail(const ShortestPathDag& dag, int start_local,
                           std::vector<char>& blocked, Path& out, bool strict) {
  int cur = start_local;
  int t_local = dag.local_index(dag.demand.t);
  while (dag.comp[cur] != dag.target_comp()) {
    int arc = dag.comp_out[dag.comp[cur]][0];
    int tail = dag.arc_tail_local[arc];
    if (strict) {
      if (!try_append_zero_path(dag, cur, tail, blocked, out)) return false;
    } else {
      append_zero_walk_bfs(dag, cur, tail, out);
    }
    append_arc(dag, arc, out);
    cur = dag.arc_head_local[arc];
    blocked[cur] = 1;
  }
  if (strict) return try_append_zero_path(dag, cur, t_local, blocked, out);
  append_zero_walk_bfs(dag, cur, t_local, out);
  return true;
}

}  // namespace

int ShortestPathDag::local_index(NodeId v) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) return -1;
  return static_cast<int>(it - nodes.begin());
}

bool ShortestPathDag::contains_edge(EdgeId e) const {
  return std::binary_search(edge_ids.begin(), edge_ids.end(), e);
}

std::vector<int> ShortestPathDag::arcs_of_edge(EdgeId e) const {
  std::vector<int> result;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i)
    if (arcs[i].edge == e) result.push_back(i);
  return result;
}

ShortestPathDag build_local_graph(const WeightedGraph& graph, Pair demand) {
  if (demand.s < 0 || demand.s >= graph.num_nodes() || demand.t < 0 ||
      demand.t >= graph.num_nodes())
    throw ValidationError("demand pair references a node out of range");
  std::vector<Weight> dist_s = shortest_distances(graph, demand.s, false);
  std::vector<Weight> dist_t = shortest_distances(graph, demand.t, true);
  return build_local_graph(graph, demand, dist_s, dist_t);
}

ShortestPathDag build_local_graph(const WeightedGraph& graph, Pair demand,
                                  std::span<const Weight> dist_from_s,
                                  std::span<const Weight> dist_to_t) {
  if (demand.s == demand.t)
    throw ValidationError("demand pair with identical endpoints");
  if (demand.s < 0 || demand.s >= graph.num_nodes() || demand.t < 0 ||
      demand.t >= graph.num_nodes())
    throw ValidationError("demand pair references a node out of range");
  if (dist_from_s[demand.t] == kUnreachable)
    throw UnreachablePairError("node " + std::to_string(demand.t) +
                               " is unreachable from node " + std::to_string(demand.s));

  ShortestPathDag dag;
  dag.demand = demand;
  dag.distance = dist_from_s[demand.t];

  auto qualifies = [&](NodeId u, NodeId v, Weight w) {
    return dist_from_s[u] != kUnreachable && dist_to_t[v] != kUnreachable &&
           dist_from_s[u] + w + dist_to_t[v] == dag.distance;
  };
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    if (ed.tail == ed.head) continue;  // self loops never lie on a simple path
    if (qualifies(ed.tail, ed.head, ed.weight)) dag.arcs.push_back({ed.tail, ed.head, e});
    if (!graph.directed() && qualifies(ed.head, ed.tail, ed.weight))
      dag.arcs.push_back({ed.head, ed.tail, e});
  }
  std::sort(dag.arcs.begin(), dag.arcs.end(), ArcLess{});

  dag.nodes.push_back(demand.s);
  dag.nodes.push_back(demand.t);
  for (const DagArc& a : dag.arcs) {
    dag.nodes.push_back(a.tail);
    dag.nodes.push_back(a.head);
  }
  std::sort(dag.nodes.begin(), dag.nodes.end());
  dag.nodes.erase(std::unique(dag.nodes.begin(), dag.nodes.end()), dag.nodes.end());

  for (const DagArc& a : dag.arcs) {
    dag.edge_ids.push_back(a.edge);
    dag.arc_cost.push_back(graph.edge(a.edge).weight);
  }
  std::sort(dag.edge_ids.begin(), dag.edge_ids.end());
  dag.edge_ids.erase(std::unique(dag.edge_ids.begin(), dag.edge_ids.end()),
                     dag.edge_ids.end());

  int num_local = static_cast<int>(dag.nodes.size());
  dag.out_arcs.resize(num_local);
  dag.in_arcs.resize(num_local);
  dag.arc_tail_local.resize(dag.arcs.size());
  dag.arc_head_local.resize(dag.arcs.size());
  for (int i = 0; i < static_cast<int>(dag.arcs.size()); ++i) {
    int tl = dag.local_index(dag.arcs[i].tail);
    int hl = dag.local_index(dag.arcs[i].head);
    dag.arc_tail_local[i] = tl;
    dag.arc_head_local[i] = hl;
    dag.out_arcs[tl].push_back(i);
    dag.in_arcs[hl].push_back(i);
  }

  std::vector<int> comp_raw;
  int num_comps = tarjan_components(num_local, dag.out_arcs, dag.arc_head_local, comp_raw);

  // Renumber components topologically (Kahn; ties broken by the smallest
  // member node id). The source component gets id 0, the target the last id.
  std::vector<std::vector<int>> comp_heads(num_comps);
  std::vector<int> indegree(num_comps, 0);
  for (int i = 0; i < static_cast<int>(dag.arcs.size()); ++i) {
    int ct = comp_raw[dag.arc_tail_local[i]];
    int ch = comp_raw[dag.arc_head_local[i]];
    if (ct != ch) {
      comp_heads[ct].push_back(ch);
      ++indegree[ch];
    }
  }
  std::vector<NodeId> comp_min_node(num_comps, std::numeric_limits<NodeId>::max());
  for (int v = 0; v < num_local; ++v)
    comp_min_node[comp_raw[v]] = std::min(comp_min_node[comp_raw[v]], dag.nodes[v]);
  using HeapItem = std::pair<NodeId, int>;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> ready;
  for (int c = 0; c < num_comps; ++c)
    if (indegree[c] == 0) ready.push({comp_min_node[c], c});
  std::vector<int> topo_id(num_comps, -1);
  int next_id = 0;
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    topo_id[c] = next_id++;
    for (int h : comp_heads[c])
      if (--indegree[h] == 0) ready.push({comp_min_node[h], h});
  }

  dag.num_comps = num_comps;
  dag.comp.resize(num_local);
  for (int v = 0; v < num_local; ++v) dag.comp[v] = topo_id[comp_raw[v]];
  dag.comp_members.resize(num_comps);
  for (int v = 0; v < num_local; ++v) dag.comp_members[dag.comp[v]].push_back(v);
  dag.comp_out.resize(num_comps);
  dag.intra_out.resize(num_local);
  for (int i = 0; i < static_cast<int>(dag.arcs.size()); ++i) {
    int ct = dag.comp[dag.arc_tail_local[i]];
    int ch = dag.comp[dag.arc_head_local[i]];
    if (ct == ch) {
      if (dag.arc_cost[i] != 0)
        throw CyclicAfterContractionError(
            "positive-weight edge inside a contracted component of pair (" +
            std::to_string(demand.s) + ", " + std::to_string(demand.t) + ")");
      dag.intra_out[dag.arc_tail_local[i]].push_back(i);
    } else {
      dag.comp_out[ct].push_back(i);
    }
  }
  return dag;
}

std::vector<ShortestPathDag> build_local_graphs(const WeightedGraph& graph,
                                                std::span<const Pair> pairs) {
  std::vector<ShortestPathDag> dags;
  dags.reserve(pairs.size());
  for (const Pair& p : pairs) dags.push_back(build_local_graph(graph, p));
  return dags;
}

Path canonical_path(const ShortestPathDag& dag) {
  Path p;
  p.nodes.push_back(dag.demand.s);
  std::vector<char> blocked(dag.nodes.size(), 0);
  int cur = dag.local_index(dag.demand.s);
  blocked[cur] = 1;
  append_canonical_tail(dag, cur, blocked, p, /*strict=*/true);
  return p;
}

Path canonical_path_through(const ShortestPathDag& dag, int arc_index) {
  if (arc_index < 0 || arc_index >= static_cast<int>(dag.arcs.size()))
    throw ValidationError("arc index out of range");
  int tail_comp = dag.comp[dag.arc_tail_local[arc_index]];
  int head_comp = dag.comp[dag.arc_head_local[arc_index]];

  // Components from which the arc's tail component can be reached.
  std::vector<char> reaches(dag.num_comps, 0);
  reaches[tail_comp] = 1;
  for (int c = tail_comp - 1; c >= 0; --c)
    for (int ai : dag.comp_out[c])
      if (reaches[dag.comp[dag.arc_head_local[ai]]]) {
        reaches[c] = 1;
        break;
      }

  for (int attempt = 0; attempt < 2; ++attempt) {
    bool strict = attempt == 0;
    Path p;
    p.nodes.push_back(dag.demand.s);
    std::vector<char> blocked(dag.nodes.size(), 0);
    int cur = dag.local_index(dag.demand.s);
    blocked[cur] = 1;

    // Walk to the arc's component, steered by condensation reachability.
    bool ok = true;
    while (dag.comp[cur] != tail_comp) {
      int chosen = -1;
      for (int ai : dag.comp_out[dag.comp[cur]]) {
        if (reaches[dag.comp[dag.arc_head_local[ai]]]) {
          chosen = ai;
          break;
        }
      }
      if (chosen < 0) {
        ok = false;
        break;
      }
      int tail = dag.arc_tail_local[chosen];
      if (strict) {
        if (!try_append_zero_path(dag, cur, tail, blocked, p)) {
          ok = false;
          break;
        }
      } else {
        append_zero_walk_bfs(dag, cur, tail, p);
      }
      append_arc(dag, chosen, p);
      cur = dag.arc_head_local[chosen];
      blocked[cur] = 1;
    }
    if (!ok) {
      if (strict) continue;
      throw ValidationError("arc is not reachable from the source");
    }

    // Route through the arc itself.
    int tail = dag.arc_tail_local[arc_index];
    if (strict) {
      std::vector<char> avoid = blocked;
      if (tail_comp == head_comp) avoid[dag.arc_head_local[arc_index]] = 1;
      if (!try_append_zero_path(dag, cur, tail, avoid, p)) continue;
      avoid[dag.arc_head_local[arc_index]] = 0;
      blocked = std::move(avoid);
    } else {
      append_zero_walk_bfs(dag, cur, tail, p);
    }
    append_arc(dag, arc_index, p);
    cur = dag.arc_head_local[arc_index];
    blocked[cur] = 1;

    if (append_canonical_tail(dag, cur, blocked, p, strict)) return p;
  }
  throw CyclicAfterContractionError("unable to route through arc");  // unreachable
}

std::uint64_t count_shortest_paths(const ShortestPathDag& dag, std::uint64_t cap) {
  std::vector<std::uint64_t> ways(dag.num_comps, 0);
  ways[dag.target_comp()] = 1;
  for (int c = dag.num_comps - 2; c >= 0; --c) {
    std::uint64_t total = 0;
    for (int ai : dag.comp_out[c]) {
      total += ways[dag.comp[dag.arc_head_local[ai]]];
      if (total > cap) return cap + 1;
    }
    ways[c] = total;
  }
  return ways[0];
}

std::vector<Path> enumerate_shortest_paths(const ShortestPathDag& dag, std::uint64_t cap) {
  std::vector<Path> results;
  std::vector<int> prefix;  // inter-component arc indices

  auto expand = [&]() {
    Path p;
    p.nodes.push_back(dag.demand.s);
    std::vector<char> blocked(dag.nodes.size(), 0);
    int cur = dag.local_index(dag.demand.s);
    blocked[cur] = 1;
    for (int ai : prefix) {
      try_append_zero_path(dag, cur, dag.arc_tail_local[ai], blocked, p);
      append_arc(dag, ai, p);
      cur = dag.arc_head_local[ai];
      blocked[cur] = 1;
    }
    try_append_zero_path(dag, cur, dag.local_index(dag.demand.t), blocked, p);
    return p;
  };

  // Depth-first over condensation arcs; entry nodes do not affect the set of
  // available continuations, so the prefix alone identifies a path.
  auto visit = [&](auto&& self, int entry_local) -> void {
    if (dag.comp[entry_local] == dag.target_comp()) {
      if (results.size() >= cap)
        throw PathExplosionError("more than " + std::to_string(cap) +
                                 " shortest paths for pair (" + std::to_string(dag.demand.s) +
                                 ", " + std::to_string(dag.demand.t) + ")");
      results.push_back(expand());
      return;
    }
    for (int ai : dag.comp_out[dag.comp[entry_local]]) {
      prefix.push_back(ai);
      self(self, dag.arc_head_local[ai]);
      prefix.pop_back();
    }
  };
  visit(visit, dag.local_index(dag.demand.s));
  return results;
}

MaxWeightPath max_weight_path(const ShortestPathDag& dag,
                              std::span<const Weight> edge_weight) {
  if (!dag.edge_ids.empty() &&
      dag.edge_ids.back() >= static_cast<EdgeId>(edge_weight.size()))
    throw DimensionMismatchError("edge weight vector too short");
  for (int v = 0; v < static_cast<int>(dag.nodes.size()); ++v)
    for (int ai : dag.intra_out[v])
      if (edge_weight[dag.arcs[ai].edge] != 0)
        throw std::invalid_argument(
            "nonzero weight on an edge inside a contracted component");
  for (const EdgeId e : dag.edge_ids)
    if (edge_weight[e] < 0) throw std::invalid_argument("negative edge weight");

  std::vector<Weight> best(dag.num_comps, 0);
  for (int c = dag.num_comps - 2; c >= 0; --c) {
    Weight b = std::numeric_limits<Weight>::min();
    for (int ai : dag.comp_out[c]) {
      Weight cand = edge_weight[dag.arcs[ai].edge] + best[dag.comp[dag.arc_head_local[ai]]];
      b = std::max(b, cand);
    }
    best[c] = b;
  }

  MaxWeightPath result;
  result.weight = best[0];
  Path& p = result.path;
  p.nodes.push_back(dag.demand.s);
  std::vector<char> blocked(dag.nodes.size(), 0);
  int cur = dag.local_index(dag.demand.s);
  blocked[cur] = 1;
  while (dag.comp[cur] != dag.target_comp()) {
    int chosen = -1;
    for (int ai : dag.comp_out[dag.comp[cur]]) {
      if (edge_weight[dag.arcs[ai].edge] + best[dag.comp[dag.arc_head_local[ai]]] ==
          best[dag.comp[cur]]) {
        chosen = ai;
        break;
      }
    }
    try_append_zero_path(dag, cur, dag.arc_tail_local[chosen], blocked, p);
    append_arc(dag, chosen, p);
    cur = dag.arc_head_local[chosen];
    blocked[cur] = 1;
  }
  try_append_zero_path(dag, cur, dag.local_index(dag.demand.t), blocked, p);
  return result;
}

}  // namespace preserver
