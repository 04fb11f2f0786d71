#include "preserver/main_algo.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "preserver/errors.hpp"
#include "preserver/lp_thin.hpp"
#include "preserver/rng.hpp"
#include "preserver/thick_dp.hpp"

namespace preserver {

Path canonical_path_in_subgraph(const WeightedGraph& graph,
                                const std::vector<EdgeId>& edges,
                                Pair demand) {
  std::vector<Edge> sub_edges;
  sub_edges.reserve(edges.size());
  for (EdgeId e : edges) sub_edges.push_back(graph.edge(e));
  WeightedGraph sub(graph.directed(), graph.num_nodes(), std::move(sub_edges));
  ShortestPathDag dag;
  try {
    dag = build_local_graph(sub, demand);
  } catch (const UnreachablePairError&) {
    return {};
  }
  Path path = canonical_path(dag);
  for (EdgeId& e : path.edges) e = edges[e];  // back to original ids
  return path;
}

PreserverSolution patch_solution(const Instance& instance,
                                 const std::vector<ShortestPathDag>& all_dags,
                                 const PreserverSolution& candidate,
                                 const std::vector<int>& active) {
  if (candidate.witnesses.size() != active.size())
    throw DimensionMismatchError("patch: witness count != active pair count");

  std::set<EdgeId> edge_set(candidate.edges.begin(), candidate.edges.end());
  std::vector<Path> witnesses(instance.pairs.size());
  std::vector<char> have(instance.pairs.size(), 0);
  for (std::size_t i = 0; i < active.size(); ++i) {
    witnesses[active[i]] = candidate.witnesses[i];
    have[active[i]] = 1;
  }

  std::vector<EdgeId> edges(edge_set.begin(), edge_set.end());
  for (std::size_t p = 0; p < instance.pairs.size(); ++p) {
    if (have[p]) continue;
    Path inside =
        canonical_path_in_subgraph(instance.graph, edges, instance.pairs[p]);
    if (!inside.nodes.empty() &&
        instance.graph.cost_of(inside.edges) == all_dags[p].distance) {
      witnesses[p] = std::move(inside);
      continue;
    }
    // H misses the pair's distance; buy its canonical shortest path.
    witnesses[p] = canonical_path(all_dags[p]);
    bool grew = false;
    for (EdgeId e : witnesses[p].edges) grew |= edge_set.insert(e).second;
    if (grew) edges.assign(edge_set.begin(), edge_set.end());
  }
  return finalize_solution(instance, std::move(edges), std::move(witnesses));
}

std::vector<int> prune_pairs(const ThicknessProfile& profile,
                             EdgeId num_edges) {
  std::vector<int> survivors;
  for (std::size_t p = 0; p < profile.thin_count.size(); ++p)
    if (surviving_pair(profile.thin_count[p], num_edges))
      survivors.push_back(static_cast<int>(p));
  return survivors;
}

MainResult run_main(const Instance& instance, int trials,
                    std::uint64_t seed) {
  MainResult result;
  std::vector<ShortestPathDag> all_dags =
      build_local_graphs(instance.graph, instance.pairs);

  std::vector<int> active(instance.pairs.size());
  for (std::size_t p = 0; p < instance.pairs.size(); ++p)
    active[p] = static_cast<int>(p);

  const int max_rounds =
      static_cast<int>(std::ceil(2.0 / instance.epsilon)) + 1;
  bool have_best = false;

  for (int round = 0; round < max_rounds && !active.empty(); ++round) {
    Instance sub;
    sub.graph = instance.graph;
    sub.epsilon = instance.epsilon;
    for (int p : active) sub.pairs.push_back(instance.pairs[p]);

    std::vector<ShortestPathDag> dags;
    dags.reserve(active.size());
    for (int p : active) dags.push_back(all_dags[p]);
    ThicknessProfile profile = classify_edges(sub, dags);

    Algorithm1Result dense = run_algorithm1(sub, dags, profile);
    Algorithm2Result sparse =
        run_algorithm2(sub, dags, profile, trials,
                       mix_seed(seed, static_cast<std::uint64_t>(round)));

    PreserverSolution dense_patched =
        patch_solution(instance, all_dags, dense.solution, active);
    PreserverSolution sparse_patched =
        patch_solution(instance, all_dags, sparse.solution, active);

    MainIteration it;
    it.round = round;
    it.active_pairs = static_cast<int>(active.size());
    it.threshold = profile.threshold;
    it.dense_objective = dense_patched.objective;
    it.sparse_objective = sparse_patched.objective;

    for (PreserverSolution* cand : {&dense_patched, &sparse_patched}) {
      bool better = !have_best || cand->objective > result.solution.objective ||
                    (cand->objective == result.solution.objective &&
                     cand->edges < result.solution.edges);
      if (better) {
        result.solution = std::move(*cand);
        have_best = true;
      }
    }
    it.lower_bound = result.solution.objective;

    std::vector<int> survivors_local = prune_pairs(profile, instance.graph.num_edges());
    it.survivors = static_cast<int>(survivors_local.size());
    result.trace.push_back(it);
    result.rounds = round + 1;

    if (survivors_local.size() == active.size()) break;  // no progress
    std::vector<int> next;
    next.reserve(survivors_local.size());
    for (int i : survivors_local) next.push_back(active[i]);
    active = std::move(next);
  }

  if (!have_best) {
    // No rounds ran (no demand pairs): the empty preserver is optimal.
    result.solution = finalize_solution(instance, {}, {});
  }
  return result;
}

}  // namespace preserver
