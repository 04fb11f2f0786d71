#include "preserver/lp_thin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>

#include "preserver/errors.hpp"
#include "preserver/rng.hpp"

namespace preserver {

namespace {

constexpr double kFlowTol = 1e-9;

// Arc of `dag` realizing edge e from local node `tail` to local node `head`.
int arc_between(const ShortestPathDag& dag, int tail_local, int head_local,
                EdgeId e) {
  for (int a : dag.arcs_of_edge(e)) {
    if (dag.arc_tail_local[a] == tail_local &&
        dag.arc_head_local[a] == head_local)
      return a;
  }
  throw std::logic_error("path arc missing from local graph");
}

// Adds `amount` of flow along `path` (taken from `dag`) to `flow`.
void add_path_flow(const ShortestPathDag& dag, const Path& path, double amount,
                   std::vector<double>& flow) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    int tail = dag.local_index(path.nodes[i]);
    int head = dag.local_index(path.nodes[i + 1]);
    flow[arc_between(dag, tail, head, path.edges[i])] += amount;
  }
}

// Per-pair flow that a routing places on edge e (sums both orientations when
// an undirected zero-weight edge shows up twice in the local graph).
double pair_edge_flow(const ShortestPathDag& dag,
                      const std::vector<double>& arc_flow, EdgeId e) {
  double total = 0.0;
  for (int a : dag.arcs_of_edge(e)) total += arc_flow[a];
  return total;
}

// Recomputes edge_load (max pair flow per qualifying edge) and the restricted
// objective of `sol` in place.
void refresh_loads(FractionalSolution& sol, const Instance& instance,
                   const std::vector<ShortestPathDag>& dags,
                   const std::vector<EdgeId>& qualifying) {
  sol.edge_load.assign(instance.graph.num_edges(), 0.0);
  sol.restricted_objective = 0.0;
  for (EdgeId e : qualifying) {
    double load = 0.0;
    double total = 0.0;
    for (std::size_t p = 0; p < dags.size(); ++p) {
      if (!dags[p].contains_edge(e)) continue;
      double f = pair_edge_flow(dags[p], sol.arc_flow[p], e);
      load = std::max(load, f);
      total += f;
    }
    sol.edge_load[e] = load;
    sol.restricted_objective +=
        static_cast<double>(instance.graph.edge(e).weight) * (total - load);
  }
}

}  // namespace

std::vector<EdgeId> qualifying_edges(const Instance& instance,
                                     const std::vector<ShortestPathDag>& dags,
                                     const ThicknessProfile& profile) {
  const EdgeId m = instance.graph.num_edges();
  std::vector<char> seen(m, 0);
  for (std::size_t p = 0; p < dags.size(); ++p) {
    if (!small_pair(profile.thin_count[p], m)) continue;
    for (EdgeId e : dags[p].edge_ids)
      if (!profile.thick[e]) seen[e] = 1;
  }
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < m; ++e)
    if (seen[e]) out.push_back(e);
  return out;
}

RestrictedLp build_restricted_lp(const Instance& instance,
                                 const std::vector<ShortestPathDag>& dags,
                                 const ThicknessProfile& profile) {
  RestrictedLp r;
  r.qualifying = qualifying_edges(instance, dags, profile);
  r.is_qualifying.assign(instance.graph.num_edges(), 0);
  for (EdgeId e : r.qualifying) r.is_qualifying[e] = 1;

  r.x_var.resize(dags.size());
  r.y_var.assign(instance.graph.num_edges(), -1);
  r.pair_in_lp.assign(dags.size(), 0);

  int next_var = 0;
  for (std::size_t p = 0; p < dags.size(); ++p) {
    bool touches = false;
    for (EdgeId e : dags[p].edge_ids)
      if (r.is_qualifying[e]) { touches = true; break; }
    if (!touches) continue;
    r.pair_in_lp[p] = 1;
    r.x_var[p].resize(dags[p].arcs.size());
    for (std::size_t a = 0; a < dags[p].arcs.size(); ++a)
      r.x_var[p][a] = next_var++;
  }
  for (EdgeId e : r.qualifying) r.y_var[e] = next_var++;

  r.lp.num_vars = next_var;
  r.lp.objective.assign(next_var, 0.0);
  for (EdgeId e : r.qualifying) {
    double c = static_cast<double>(instance.graph.edge(e).weight);
    r.lp.objective[r.y_var[e]] = -c;
    for (std::size_t p = 0; p < dags.size(); ++p) {
      if (!r.pair_in_lp[p] || !dags[p].contains_edge(e)) continue;
      for (int a : dags[p].arcs_of_edge(e)) r.lp.objective[r.x_var[p][a]] += c;
    }
  }

  // Unit s-t flow per participating pair, conservation at every local node.
  for (std::size_t p = 0; p < dags.size(); ++p) {
    if (!r.pair_in_lp[p]) continue;
    const ShortestPathDag& dag = dags[p];
    int s_local = dag.local_index(dag.demand.s);
    int t_local = dag.local_index(dag.demand.t);
    for (std::size_t v = 0; v < dag.nodes.size(); ++v) {
      LinearProgram::Row row;
      row.relation = LinearProgram::Relation::kEqual;
      for (int a : dag.in_arcs[v])
        row.coeffs.emplace_back(r.x_var[p][a], 1.0);
      for (int a : dag.out_arcs[v])
        row.coeffs.emplace_back(r.x_var[p][a], -1.0);
      if (static_cast<int>(v) == s_local)
        row.rhs = -1.0;
      else if (static_cast<int>(v) == t_local)
        row.rhs = 1.0;
      else
        row.rhs = 0.0;
      r.lp.rows.push_back(std::move(row));
    }
  }

  // y_e dominates every pair's flow across e.
  for (EdgeId e : r.qualifying) {
    for (std::size_t p = 0; p < dags.size(); ++p) {
      if (!r.pair_in_lp[p] || !dags[p].contains_edge(e)) continue;
      LinearProgram::Row row;
      row.relation = LinearProgram::Relation::kLessEqual;
      row.rhs = 0.0;
      for (int a : dags[p].arcs_of_edge(e))
        row.coeffs.emplace_back(r.x_var[p][a], 1.0);
      row.coeffs.emplace_back(r.y_var[e], -1.0);
      r.lp.rows.push_back(std::move(row));
    }
  }

  // Every variable lives in [0,1]; nonnegativity is implicit in the solver.
  for (int v = 0; v < next_var; ++v) {
    LinearProgram::Row row;
    row.relation = LinearProgram::Relation::kLessEqual;
    row.rhs = 1.0;
    row.coeffs.emplace_back(v, 1.0);
    r.lp.rows.push_back(std::move(row));
  }
  return r;
}

FractionalSolution solve_restricted_lp(const Instance& instance,
                                       const std::vector<ShortestPathDag>& dags,
                                       const ThicknessProfile& profile) {
  RestrictedLp r = build_restricted_lp(instance, dags, profile);

  FractionalSolution out;
  out.arc_flow.resize(dags.size());
  for (std::size_t p = 0; p < dags.size(); ++p)
    out.arc_flow[p].assign(dags[p].arcs.size(), 0.0);

  if (!r.qualifying.empty()) {
    LpResult lp = solve_lp(r.lp);
    for (std::size_t p = 0; p < dags.size(); ++p) {
      if (!r.pair_in_lp[p]) continue;
      for (std::size_t a = 0; a < dags[p].arcs.size(); ++a)
        out.arc_flow[p][a] = std::clamp(lp.x[r.x_var[p][a]], 0.0, 1.0);
    }
  }
  for (std::size_t p = 0; p < dags.size(); ++p) {
    if (r.pair_in_lp[p]) continue;
    add_path_flow(dags[p], canonical_path(dags[p]), 1.0, out.arc_flow[p]);
  }
  refresh_loads(out, instance, dags, r.qualifying);
  return out;
}

FractionalSolution uniform_extension_solution(
    const Instance& instance, const std::vector<ShortestPathDag>& dags,
    const ThicknessProfile& profile) {
  const EdgeId m = instance.graph.num_edges();
  FractionalSolution out;
  out.arc_flow.resize(dags.size());
  for (std::size_t p = 0; p < dags.size(); ++p) {
    const ShortestPathDag& dag = dags[p];
    out.arc_flow[p].assign(dag.arcs.size(), 0.0);
    int b = profile.thin_count[p];
    if (small_pair(b, m) && b >= 1) {
      double share = 1.0 / static_cast<double>(b);
      for (EdgeId e : dag.edge_ids) {
        if (profile.thick[e]) continue;
        Path through = canonical_path_through(dag, dag.arcs_of_edge(e)[0]);
        add_path_flow(dag, through, share, out.arc_flow[p]);
      }
    } else {
      add_path_flow(dag, canonical_path(dag), 1.0, out.arc_flow[p]);
    }
  }
  refresh_loads(out, instance, dags, qualifying_edges(instance, dags, profile));
  return out;
}

FractionalSolution mix_solutions(const FractionalSolution& a,
                                 const FractionalSolution& b,
                                 const Instance& instance,
                                 const std::vector<ShortestPathDag>& dags,
                                 const ThicknessProfile& profile) {
  if (a.arc_flow.size() != b.arc_flow.size() ||
      a.arc_flow.size() != dags.size())
    throw DimensionMismatchError("mix: pair counts differ");
  FractionalSolution out;
  out.arc_flow.resize(dags.size());
  for (std::size_t p = 0; p < dags.size(); ++p) {
    if (a.arc_flow[p].size() != b.arc_flow[p].size() ||
        a.arc_flow[p].size() != dags[p].arcs.size())
      throw DimensionMismatchError("mix: arc counts differ");
    out.arc_flow[p].resize(dags[p].arcs.size());
    for (std::size_t i = 0; i < dags[p].arcs.size(); ++i)
      out.arc_flow[p][i] = 0.5 * (a.arc_flow[p][i] + b.arc_flow[p][i]);
  }
  refresh_loads(out, instance, dags, qualifying_edges(instance, dags, profile));
  return out;
}

namespace {

// Peels one positive-flow cycle reachable while walking forward from `start`
// along arcs with flow >= kFlowTol.  Returns true if a cycle was found and
// drained (then the caller restarts its seed scan).
bool peel_cycle(const ShortestPathDag& dag, std::vector<double>& f,
                int start) {
  std::vector<int> order(dag.nodes.size(), -1);  // position in walk
  std::vector<int> walk_nodes{start};
  std::vector<int> walk_arcs;
  order[start] = 0;
  int v = start;
  while (true) {
    int next_arc = -1;
    for (int a : dag.out_arcs[v])
      if (f[a] >= kFlowTol) { next_arc = a; break; }
    if (next_arc < 0) return false;
    int h = dag.arc_head_local[next_arc];
    walk_arcs.push_back(next_arc);
    if (order[h] >= 0) {
      double bottleneck = std::numeric_limits<double>::infinity();
      for (std::size_t i = order[h]; i < walk_arcs.size(); ++i)
        bottleneck = std::min(bottleneck, f[walk_arcs[i]]);
      for (std::size_t i = order[h]; i < walk_arcs.size(); ++i)
        f[walk_arcs[i]] -= bottleneck;
      return true;
    }
    order[h] = static_cast<int>(walk_nodes.size());
    walk_nodes.push_back(h);
    v = h;
  }
}

// Any dag path between two local nodes, ignoring flow.  Exists whenever
// `from` precedes `to` in the condensation; used only when rounding error
// breaks conservation mid-extension.
std::vector<int> bfs_arcs(const ShortestPathDag& dag, int from, int to) {
  std::vector<int> via(dag.nodes.size(), -1);
  std::vector<int> queue{from};
  std::vector<char> seen(dag.nodes.size(), 0);
  seen[from] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    if (v == to) break;
    for (int a : dag.out_arcs[v]) {
      int h = dag.arc_head_local[a];
      if (seen[h]) continue;
      seen[h] = 1;
      via[h] = a;
      queue.push_back(h);
    }
  }
  std::vector<int> arcs;
  int v = to;
  while (v != from) {
    int a = via[v];
    if (a < 0) throw std::logic_error("local graph node cannot reach target");
    arcs.push_back(a);
    v = dag.arc_tail_local[a];
  }
  std::reverse(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace

std::vector<PathFlow> path_decompose(const ShortestPathDag& dag,
                                     const std::vector<double>& arc_flow) {
  if (arc_flow.size() != dag.arcs.size())
    throw DimensionMismatchError("decompose: flow length != arc count");
  const int s_local = dag.local_index(dag.demand.s);
  const int t_local = dag.local_index(dag.demand.t);

  // Reject input that is not (numerically) a unit s-t flow; slips below the
  // tolerance are healed during extension instead.
  constexpr double kConservationTol = 1e-6;
  std::vector<double> net(dag.nodes.size(), 0.0);
  for (std::size_t a = 0; a < arc_flow.size(); ++a) {
    net[dag.arc_head_local[a]] += arc_flow[a];
    net[dag.arc_tail_local[a]] -= arc_flow[a];
  }
  for (std::size_t v = 0; v < net.size(); ++v) {
    double want = 0.0;
    if (static_cast<int>(v) == s_local) want = -1.0;
    if (static_cast<int>(v) == t_local) want = 1.0;
    if (std::abs(net[v] - want) > kConservationTol)
      throw NonConservingInputError(
          "decompose: node imbalance " + std::to_string(net[v]) +
          " at local node " + std::to_string(v));
  }

  std::vector<double> f = arc_flow;
  for (double& v : f) v = std::max(v, 0.0);

  std::vector<PathFlow> paths;
  // Each round either drains a seed arc or a cycle arc, so it terminates.
  int guard = static_cast<int>(dag.arcs.size()) * 4 + 16;
  while (guard-- > 0) {
    int seed = -1;
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (f[a] < kFlowTol) continue;
      if (seed < 0 || f[a] < f[seed] ||
          (f[a] == f[seed] && dag.arcs[a].edge < dag.arcs[seed].edge))
        seed = static_cast<int>(a);
    }
    if (seed < 0) break;

    // Extend the seed arc to a full s-t arc sequence along positive flow.
    std::vector<int> arcs{seed};
    std::vector<char> visited(dag.nodes.size(), 0);
    visited[dag.arc_tail_local[seed]] = 1;
    visited[dag.arc_head_local[seed]] = 1;
    bool retry = false;
    int v = dag.arc_tail_local[seed];
    while (v != s_local) {
      int pick = -1;
      for (int a : dag.in_arcs[v])
        if (f[a] >= kFlowTol && !visited[dag.arc_tail_local[a]]) { pick = a; break; }
      if (pick < 0) {
        // Positive in-flow but all tails visited means a flow cycle blocks
        // the walk; drain it and rescan.  Otherwise conservation slipped:
        // finish the prefix with an arbitrary dag path.
        bool has_flow = false;
        for (int a : dag.in_arcs[v])
          if (f[a] >= kFlowTol) { has_flow = true; break; }
        if (has_flow) {
          for (int a : dag.in_arcs[v])
            if (f[a] >= kFlowTol) {
              if (peel_cycle(dag, f, dag.arc_tail_local[a])) break;
            }
          retry = true;
          break;
        }
        std::vector<int> prefix = bfs_arcs(dag, s_local, v);
        arcs.insert(arcs.begin(), prefix.begin(), prefix.end());
        v = s_local;
        break;
      }
      arcs.insert(arcs.begin(), pick);
      v = dag.arc_tail_local[pick];
      visited[v] = 1;
    }
    if (retry) continue;
    v = dag.arc_head_local[seed];
    while (v != t_local) {
      int pick = -1;
      for (int a : dag.out_arcs[v])
        if (f[a] >= kFlowTol && !visited[dag.arc_head_local[a]]) { pick = a; break; }
      if (pick < 0) {
        bool has_flow = false;
        for (int a : dag.out_arcs[v])
          if (f[a] >= kFlowTol) { has_flow = true; break; }
        if (has_flow) {
          if (peel_cycle(dag, f, v)) { retry = true; break; }
        }
        std::vector<int> suffix = bfs_arcs(dag, v, t_local);
        arcs.insert(arcs.end(), suffix.begin(), suffix.end());
        v = t_local;
        break;
      }
      arcs.push_back(pick);
      v = dag.arc_head_local[pick];
      visited[v] = 1;
    }
    if (retry) continue;

    double bottleneck = std::numeric_limits<double>::infinity();
    for (int a : arcs)
      if (f[a] >= kFlowTol) bottleneck = std::min(bottleneck, f[a]);
    if (!std::isfinite(bottleneck)) break;
    for (int a : arcs) f[a] = std::max(0.0, f[a] - bottleneck);

    PathFlow pf;
    pf.weight = bottleneck;
    pf.path.nodes.push_back(dag.nodes[dag.arc_tail_local[arcs.front()]]);
    for (int a : arcs) {
      pf.path.nodes.push_back(dag.nodes[dag.arc_head_local[a]]);
      pf.path.edges.push_back(dag.arcs[a].edge);
    }
    paths.push_back(std::move(pf));
  }

  double total = 0.0;
  for (const PathFlow& pf : paths) total += pf.weight;
  if (total <= kFlowTol) {
    paths.clear();
    paths.push_back({canonical_path(dag), 1.0});
    return paths;
  }
  for (PathFlow& pf : paths) pf.weight /= total;
  return paths;
}

std::vector<double> restricted_edge_savings(
    const Instance& instance, const std::vector<ShortestPathDag>& dags,
    const FractionalSolution& sol, const std::vector<EdgeId>& qualifying) {
  if (sol.arc_flow.size() != dags.size())
    throw DimensionMismatchError("edge savings: pair counts differ");
  std::vector<double> out(qualifying.size(), 0.0);
  for (std::size_t i = 0; i < qualifying.size(); ++i) {
    EdgeId e = qualifying[i];
    double load = 0.0;
    double total = 0.0;
    for (std::size_t p = 0; p < dags.size(); ++p) {
      if (!dags[p].contains_edge(e)) continue;
      double f = pair_edge_flow(dags[p], sol.arc_flow[p], e);
      load = std::max(load, f);
      total += f;
    }
    out[i] = static_cast<double>(instance.graph.edge(e).weight) *
             (total - load);
  }
  return out;
}

SavingsExpectation expected_savings(
    const Instance& instance, const std::vector<EdgeId>& qualifying,
    const std::vector<std::vector<PathFlow>>& decomposed) {
  SavingsExpectation result;
  result.per_edge.assign(qualifying.size(), 0.0);
  for (std::size_t i = 0; i < qualifying.size(); ++i) {
    EdgeId e = qualifying[i];
    double sum_q = 0.0;
    double miss_all = 1.0;
    for (const std::vector<PathFlow>& paths : decomposed) {
      double q = 0.0;
      for (const PathFlow& pf : paths) {
        bool uses = false;
        for (EdgeId pe : pf.path.edges)
          if (pe == e) { uses = true; break; }
        if (uses) q += pf.weight;
      }
      q = std::clamp(q, 0.0, 1.0);
      sum_q += q;
      miss_all *= 1.0 - q;
    }
    double coverage = 1.0 - miss_all;
    result.per_edge[i] = (sum_q - coverage) *
                         static_cast<double>(instance.graph.edge(e).weight);
    result.total += result.per_edge[i];
  }
  return result;
}

int sample_path_index(const std::vector<PathFlow>& paths, double u) {
  double acc = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths[i].weight > 0.0) last_positive = static_cast<int>(i);
    acc += paths[i].weight;
    if (u < acc) return static_cast<int>(i);
  }
  return last_positive;
}

Algorithm2Result run_algorithm2(const Instance& instance,
                                const std::vector<ShortestPathDag>& dags,
                                const ThicknessProfile& profile, int trials,
                                std::uint64_t seed) {
  Algorithm2Result result;
  result.qualifying = qualifying_edges(instance, dags, profile);
  result.uniform = uniform_extension_solution(instance, dags, profile);
  if (result.qualifying.empty()) {
    // Nothing to optimize over; the uniform routing stands in for the LP.
    result.lp_solution = result.uniform;
  } else {
    result.lp_solution = solve_restricted_lp(instance, dags, profile);
  }
  result.restricted_objective = result.lp_solution.restricted_objective;
  result.mixed = mix_solutions(result.lp_solution, result.uniform, instance,
                               dags, profile);

  result.flow_paths.resize(dags.size());
  for (std::size_t p = 0; p < dags.size(); ++p)
    result.flow_paths[p] = path_decompose(dags[p], result.mixed.arc_flow[p]);
  result.mixed_expected_savings =
      expected_savings(instance, result.qualifying, result.flow_paths).total;

  if (trials < 1) trials = 1;
  bool have_best = false;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<Path> witnesses(dags.size());
    std::set<EdgeId> edge_set;
    for (std::size_t p = 0; p < dags.size(); ++p) {
      int k = sample_path_index(result.flow_paths[p], uniform01(rng));
      witnesses[p] = result.flow_paths[p][k].path;
      edge_set.insert(witnesses[p].edges.begin(), witnesses[p].edges.end());
    }
    std::vector<EdgeId> edges(edge_set.begin(), edge_set.end());
    PreserverSolution candidate =
        finalize_solution(instance, edges, std::move(witnesses));
    bool better =
        !have_best || candidate.objective > result.solution.objective ||
        (candidate.objective == result.solution.objective &&
         candidate.edges < result.solution.edges);
    if (better) {
      result.solution = std::move(candidate);
      result.best_trial = trial;
      have_best = true;
    }
  }
  return result;
}

Algorithm2Result run_algorithm2(const Instance& instance, int trials,
                                std::uint64_t seed) {
  std::vector<ShortestPathDag> dags =
      build_local_graphs(instance.graph, instance.pairs);
  ThicknessProfile profile = classify_edges(instance, dags);
  return run_algorithm2(instance, dags, profile, trials, seed);
}

}  // namespace preserver
