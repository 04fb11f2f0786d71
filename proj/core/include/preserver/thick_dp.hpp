#pragma once

#include <span>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/solution.hpp"
#include "preserver/thickness.hpp"

namespace preserver {

// The centric path: the shortest path maximizing total shared thick value
// (v_e - 1) c(e) across all pairs. Ties keep the earliest pair.
struct CentricPathChoice {
  int pair_index = -1;
  Path path;
  Weight weight = 0;  // a*: best score over all pairs
};

struct Algorithm1Result {
  PreserverSolution solution;
  CentricPathChoice centric;
  std::vector<Weight> pair_scores;  // per pair: its best thick-value path weight
  // Every witness is chosen to maximize overlap with the centric path; the
  // shared edges are expected to form one contiguous stretch of it. The
  // flag records whether that held (it is asserted by tests, not repaired).
  bool overlap_contiguous = true;
};

// Thick-edge dynamic program: scores every pair's shortest-path DAG with
// w(e) = (v_e - 1) c(e) on thick edges (0 on thin), picks the best-scoring
// path as the centric path, then reweights with w(e) = c(e) on centric
// edges and takes every pair's maximum-overlap shortest path. The union of
// those witnesses is the preserver.
Algorithm1Result run_algorithm1(const Instance& instance,
                                std::span<const ShortestPathDag> dags,
                                const ThicknessProfile& profile);

// Convenience overload building the local graphs and profile itself.
Algorithm1Result run_algorithm1(const Instance& instance);

}  // namespace preserver
