#include "preserver/thick_dp.hpp"

#include <algorithm>

namespace preserver {

namespace {

// Positions of `subset` edges along the reference edge sequence must form
// one contiguous block (or be empty).
bool contiguous_overlap(const std::vector<EdgeId>& reference_sequence,
                        const std::vector<EdgeId>& subset) {
  std::vector<EdgeId> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  int first = -1, last = -1, count = 0;
  for (int i = 0; i < static_cast<int>(reference_sequence.size()); ++i) {
    if (!std::binary_search(sorted.begin(), sorted.end(), reference_sequence[i])) continue;
    if (first < 0) first = i;
    last = i;
    ++count;
  }
  return count == 0 || last - first + 1 == count;
}

}  // namespace

Algorithm1Result run_algorithm1(const Instance& instance,
                                std::span<const ShortestPathDag> dags,
                                const ThicknessProfile& profile) {
  const WeightedGraph& g = instance.graph;
  Algorithm1Result result;
  if (dags.empty()) {
    result.solution = finalize_solution(instance, {}, {});
    return result;
  }

  std::vector<Weight> shared_value(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (profile.thick[e])
      shared_value[e] =
          static_cast<Weight>(profile.multiplicity[e] - 1) * g.edge(e).weight;

  result.pair_scores.reserve(dags.size());
  for (size_t i = 0; i < dags.size(); ++i) {
    MaxWeightPath best = max_weight_path(dags[i], shared_value);
    result.pair_scores.push_back(best.weight);
    if (result.centric.pair_index < 0 || best.weight > result.centric.weight) {
      result.centric.pair_index = static_cast<int>(i);
      result.centric.path = std::move(best.path);
      result.centric.weight = result.pair_scores.back();
    }
  }

  std::vector<Weight> overlap_value(g.num_edges(), 0);
  std::vector<char> on_centric(g.num_edges(), 0);
  for (EdgeId e : result.centric.path.edges) {
    overlap_value[e] = g.edge(e).weight;
    on_centric[e] = 1;
  }

  std::vector<EdgeId> edges;
  std::vector<Path> witnesses;
  witnesses.reserve(dags.size());
  for (const ShortestPathDag& dag : dags) {
    MaxWeightPath h = max_weight_path(dag, overlap_value);
    std::vector<EdgeId> shared;
    for (EdgeId e : h.path.edges)
      if (on_centric[e]) shared.push_back(e);
    if (!contiguous_overlap(result.centric.path.edges, shared))
      result.overlap_contiguous = false;
    for (EdgeId e : h.path.edges) edges.push_back(e);
    witnesses.push_back(std::move(h.path));
  }
  result.solution = finalize_solution(instance, std::move(edges), std::move(witnesses));
  return result;
}

Algorithm1Result run_algorithm1(const Instance& instance) {
  std::vector<ShortestPathDag> dags = build_local_graphs(instance.graph, instance.pairs);
  ThicknessProfile profile = classify_edges(instance, dags);
  return run_algorithm1(instance, dags, profile);
}

}  // namespace preserver
