#pragma once

#include <cstdint>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/solution.hpp"
#include "preserver/thickness.hpp"

namespace preserver {

// Canonical shortest path for `demand` using only the given edges, or an
// empty path when the restriction no longer realizes the full-graph
// distance. Edge ids refer to `graph`.
Path canonical_path_in_subgraph(const WeightedGraph& graph,
                                const std::vector<EdgeId>& edges, Pair demand);

// Extends a solution computed for a subset of the pairs to all pairs:
// pairs already preserved get a witness routed inside H, the rest get their
// canonical shortest path added to H. `active` maps the candidate's witness
// order to pair indices.
PreserverSolution patch_solution(const Instance& instance,
                                 const std::vector<ShortestPathDag>& all_dags,
                                 const PreserverSolution& candidate,
                                 const std::vector<int>& active);

// Pair indices (into `active`'s positions) whose thin-edge count keeps them
// in play for the next round: b^2 >= m.
std::vector<int> prune_pairs(const ThicknessProfile& profile, EdgeId num_edges);

struct MainIteration {
  int round = 0;
  int active_pairs = 0;
  double threshold = 0.0;
  Weight dense_objective = 0;    // shared-edge candidate, after patching
  Weight sparse_objective = 0;   // rounded-flow candidate, after patching
  Weight lower_bound = 0;        // best objective seen so far
  int survivors = 0;
};

struct MainResult {
  PreserverSolution solution;  // best patched candidate
  std::vector<MainIteration> trace;
  int rounds = 0;
};

// Full pipeline: alternate the shared-edge and rounded-flow candidates on a
// shrinking pair set, keep the best patched solution. The pair set loses at
// least a m^epsilon factor per round, and the round count is capped at
// ceil(2 / epsilon) + 1.
MainResult run_main(const Instance& instance, int trials, std::uint64_t seed);

}  // namespace preserver
