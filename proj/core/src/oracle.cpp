#include "preserver/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "preserver/errors.hpp"

namespace preserver {

namespace {

std::vector<std::vector<Path>> enumerate_all(const WeightedGraph& graph,
                                             std::span<const ShortestPathDag> dags,
                                             std::uint64_t combination_cap) {
  std::uint64_t product = 1;
  for (const ShortestPathDag& dag : dags) {
    std::uint64_t count = count_shortest_paths(dag, combination_cap);
    if (count == 0) count = 1;  // cannot happen: the pair is reachable
    if (product > combination_cap / count)
      throw PathExplosionError("more than " + std::to_string(combination_cap) +
                               " shortest-path combinations");
    product *= count;
  }
  std::vector<std::vector<Path>> paths;
  paths.reserve(dags.size());
  for (const ShortestPathDag& dag : dags)
    paths.push_back(enumerate_shortest_paths(dag, combination_cap));
  (void)graph;
  return paths;
}

std::vector<EdgeId> distinct_edges(const Path& path) {
  std::vector<EdgeId> edges = path.edges;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

void for_each_path_combination(const WeightedGraph& graph,
                               std::span<const ShortestPathDag> dags,
                               std::uint64_t combination_cap,
                               const std::function<void(const CombinationView&)>& visit) {
  std::vector<std::vector<Path>> paths = enumerate_all(graph, dags, combination_cap);
  const size_t p = paths.size();
  std::vector<std::vector<EdgeId>> path_edges(p);  // deduplicated, current selection
  std::vector<int> selection(p, 0);
  std::vector<int> multiplicity(graph.num_edges(), 0);
  Weight union_cost = 0;

  auto add = [&](size_t i) {
    path_edges[i] = distinct_edges(paths[i][selection[i]]);
    for (EdgeId e : path_edges[i])
      if (multiplicity[e]++ == 0) union_cost += graph.edge(e).weight;
  };
  auto remove = [&](size_t i) {
    for (EdgeId e : path_edges[i])
      if (--multiplicity[e] == 0) union_cost -= graph.edge(e).weight;
  };

  for (size_t i = 0; i < p; ++i) add(i);
  while (true) {
    visit({selection, paths, multiplicity, union_cost});
    // Advance the odometer, last pair fastest.
    size_t i = p;
    while (i > 0) {
      --i;
      remove(i);
      if (selection[i] + 1 < static_cast<int>(paths[i].size())) {
        ++selection[i];
        add(i);
        break;
      }
      selection[i] = 0;
      add(i);
      if (i == 0) return;
    }
    if (p == 0) return;  // single empty combination
  }
}

OracleResult brute_force_optimum(const Instance& instance, const OracleOptions& opts) {
  std::vector<ShortestPathDag> dags =
      build_local_graphs(instance.graph, instance.pairs);

  OracleResult result;
  if (instance.pairs.empty()) {
    result.solution = finalize_solution(instance, {}, {});
    return result;
  }

  Weight best_cost = kUnreachable;
  std::vector<int> best_selection;
  for_each_path_combination(
      instance.graph, dags, opts.combination_cap, [&](const CombinationView& view) {
        ++result.combinations;
        if (view.union_cost < best_cost) {
          best_cost = view.union_cost;
          best_selection = view.selection;
        }
      });

  std::vector<EdgeId> edges;
  std::vector<Path> witnesses;
  for (size_t i = 0; i < dags.size(); ++i) {
    Path path = enumerate_shortest_paths(dags[i], opts.combination_cap)[best_selection[i]];
    for (EdgeId e : path.edges) edges.push_back(e);
    witnesses.push_back(std::move(path));
  }
  result.solution = finalize_solution(instance, std::move(edges), std::move(witnesses));
  result.optimum = result.solution.objective;
  return result;
}

DominanceReport classify_dominance(const Instance& instance, const OracleOptions& opts) {
  std::vector<ShortestPathDag> dags =
      build_local_graphs(instance.graph, instance.pairs);
  ThicknessProfile profile = classify_edges(instance, dags);

  DominanceReport report;
  if (instance.pairs.empty()) {
    report.verdict = Dominance::kThinDominant;
    return report;
  }

  Weight best_cost = kUnreachable;
  Weight upper_bound = 0;
  for (const ShortestPathDag& dag : dags) upper_bound += dag.distance;
  for_each_path_combination(instance.graph, dags, opts.combination_cap,
                            [&](const CombinationView& view) {
                              best_cost = std::min(best_cost, view.union_cost);
                            });
  report.optimum = upper_bound - best_cost;

  // No optimal solution can put a positive share anywhere when the whole
  // optimum is zero, so the thick side cannot strictly dominate.
  if (report.optimum == 0) {
    report.verdict = Dominance::kThinDominant;
    return report;
  }

  const double needed = static_cast<double>(report.optimum) /
                        std::pow(static_cast<double>(instance.graph.num_edges()),
                                 instance.epsilon);
  bool found_thick = false;
  bool truncated = false;
  std::uint64_t optima = 0;
  for_each_path_combination(
      instance.graph, dags, opts.combination_cap, [&](const CombinationView& view) {
        if (found_thick || truncated || view.union_cost != best_cost) return;
        if (++optima > opts.optima_scan_cap) {
          truncated = true;
          return;
        }
        Weight thick_savings = 0;
        for (EdgeId e : profile.thick_edges)
          if (view.multiplicity[e] > 0)
            thick_savings +=
                static_cast<Weight>(view.multiplicity[e] - 1) * instance.graph.edge(e).weight;
        if (static_cast<double>(thick_savings) > needed) found_thick = true;
      });
  report.optima_seen = std::min<std::uint64_t>(optima, opts.optima_scan_cap);
  report.scan_truncated = truncated;
  if (found_thick)
    report.verdict = Dominance::kThickDominant;
  else if (truncated)
    report.verdict = Dominance::kUnknown;
  else
    report.verdict = Dominance::kThinDominant;
  return report;
}

LightnessReport classify_lightness(const Instance& instance, const OracleOptions& opts) {
  std::vector<ShortestPathDag> dags =
      build_local_graphs(instance.graph, instance.pairs);
  ThicknessProfile profile = classify_edges(instance, dags);
  const WeightedGraph& g = instance.graph;

  LightnessReport report;
  if (instance.pairs.empty()) {
    report.solution = finalize_solution(instance, {}, {});
    return report;
  }

  auto thin_savings_of = [&](const std::vector<int>& multiplicity) {
    Weight total = 0;
    for (EdgeId e : profile.thin_edges)
      if (multiplicity[e] > 0)
        total += static_cast<Weight>(multiplicity[e] - 1) * g.edge(e).weight;
    return total;
  };

  Weight best = -1;
  std::vector<int> best_selection;
  for_each_path_combination(g, dags, opts.combination_cap,
                            [&](const CombinationView& view) {
                              Weight value = thin_savings_of(view.multiplicity);
                              if (value > best) {
                                best = value;
                                best_selection = view.selection;
                              }
                            });
  report.thin_optimum = best;

  // Recount thin shares over the surviving pairs only.
  std::vector<int> survivor_mult(g.num_edges(), 0);
  std::vector<EdgeId> edges;
  std::vector<Path> witnesses;
  for (size_t i = 0; i < dags.size(); ++i) {
    Path path =
        enumerate_shortest_paths(dags[i], opts.combination_cap)[best_selection[i]];
    if (surviving_pair(profile.thin_count[i], g.num_edges()))
      for (EdgeId e : distinct_edges(path)) ++survivor_mult[e];
    for (EdgeId e : path.edges) edges.push_back(e);
    witnesses.push_back(std::move(path));
  }
  Weight survivor_savings = 0;
  for (EdgeId e : profile.thin_edges)
    if (survivor_mult[e] > 0)
      survivor_savings += static_cast<Weight>(survivor_mult[e] - 1) * g.edge(e).weight;
  report.survivor_savings = survivor_savings;

  const double allowance =
      (1.0 - 1.0 / std::pow(static_cast<double>(g.num_edges()), instance.epsilon)) *
      static_cast<double>(report.thin_optimum);
  report.verdict = static_cast<double>(survivor_savings) <= allowance
                       ? Lightness::kLight
                       : Lightness::kHeavy;
  report.solution = finalize_solution(instance, std::move(edges), std::move(witnesses));
  return report;
}

}  // namespace preserver
