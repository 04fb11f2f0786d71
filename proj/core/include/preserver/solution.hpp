#pragma once

#include <vector>

#include "preserver/graph.hpp"
#include "preserver/types.hpp"

namespace preserver {

// A preserver: subgraph H (edge ids) meant to reproduce every demand
// distance exactly. Witnesses, when present, hold one shortest path per
// demand pair in pair order; every positive-weight edge of H must lie on at
// least one witness.
struct PreserverSolution {
  std::vector<EdgeId> edges;    // sorted, unique
  std::vector<Path> witnesses;  // empty, or one per pair
  Weight upper_bound = 0;       // U: sum of demand distances
  Weight cost = 0;              // c(H)
  Weight objective = 0;         // U - c(H)
};

// Sum of shortest distances over all demand pairs; the objective baseline.
// Throws UnreachablePairError if any pair is disconnected.
Weight trivial_upper_bound(const Instance& instance);

// Builds a solution record from an edge set and optional witnesses,
// computing cost, the upper bound and the objective.
PreserverSolution finalize_solution(const Instance& instance, std::vector<EdgeId> edges,
                                    std::vector<Path> witnesses);

struct FeasibilityViolation {
  Pair pair{};
  Weight required = 0;
  Weight achieved = 0;  // kUnreachable when disconnected inside H
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<FeasibilityViolation> violations;
};

// Checks dist_H(s, t) == dist_G(s, t) for every demand pair.
FeasibilityReport verify_feasible(const Instance& instance,
                                  const PreserverSolution& solution);

// Witness-multiplicity accounting. For edge e let u_e be the number of
// witnesses through it; then U - c(H) == sum over H of (u_e - 1) c(e)
// whenever every positive-weight edge of H is covered. The report exposes
// the per-edge shares and revalidates the identity.
struct EdgeShare {
  EdgeId edge = 0;
  int multiplicity = 0;
  Weight savings = 0;
};

struct SavingsReport {
  Weight upper_bound = 0;
  Weight cost = 0;
  Weight objective = 0;
  std::vector<EdgeShare> shares;  // edges of H, ascending
};

// Throws NonShortestWitnessError when a witness is not a shortest path of
// its pair, and ValidationError on structural defects (missing witnesses,
// edges outside H, uncovered positive-weight edges of H).
SavingsReport savings_report(const Instance& instance, const PreserverSolution& solution);

}  // namespace preserver
