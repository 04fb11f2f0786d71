#pragma once

#include <cstdint>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/simplex.hpp"
#include "preserver/solution.hpp"
#include "preserver/thickness.hpp"

namespace preserver {

// Fractional routing: one flow value per dag arc, plus a per-edge load y.
// Pairs keep their dag-local arc indexing; y is indexed by global edge id
// but only meaningful on qualifying edges.
struct FractionalSolution {
  std::vector<std::vector<double>> arc_flow;  // [pair][dag arc]
  std::vector<double> edge_load;              // [edge id], zero off qualifying
  double restricted_objective = 0.0;          // savings measured on qualifying edges
};

// Thin edges that appear in the dag of at least one small pair.  Only these
// edges carry objective weight in the restricted program.
std::vector<EdgeId> qualifying_edges(const Instance& instance,
                                     const std::vector<ShortestPathDag>& dags,
                                     const ThicknessProfile& profile);

struct RestrictedLp {
  LinearProgram lp;
  std::vector<EdgeId> qualifying;          // sorted
  std::vector<char> is_qualifying;         // [edge id]
  std::vector<std::vector<int>> x_var;     // [pair][dag arc] -> lp var, -1 if pair excluded
  std::vector<int> y_var;                  // [edge id] -> lp var, -1 off qualifying
  std::vector<char> pair_in_lp;            // pair participates (dag touches qualifying edge)
};

// Maximize sum over qualifying e of c(e) * (sum of pair flows on e - y_e)
// subject to unit s-t flow per participating pair and y_e >= flow of every
// pair on e.  Excluded pairs are routed afterwards on canonical paths.
RestrictedLp build_restricted_lp(const Instance& instance,
                                 const std::vector<ShortestPathDag>& dags,
                                 const ThicknessProfile& profile);

// Solve the restricted program and return a complete fractional routing:
// every pair has a unit flow, y = max per-pair edge flow on qualifying edges.
FractionalSolution solve_restricted_lp(const Instance& instance,
                                       const std::vector<ShortestPathDag>& dags,
                                       const ThicknessProfile& profile);

// Deterministic fallback routing: small pairs spread 1/b over their thin
// edges (one canonical path through each), other pairs route a single
// canonical path.  Guarantees flow >= 1/b on every thin edge of a small pair.
FractionalSolution uniform_extension_solution(const Instance& instance,
                                              const std::vector<ShortestPathDag>& dags,
                                              const ThicknessProfile& profile);

// Arc-wise average of two routings over identical dags.
FractionalSolution mix_solutions(const FractionalSolution& a,
                                 const FractionalSolution& b,
                                 const Instance& instance,
                                 const std::vector<ShortestPathDag>& dags,
                                 const ThicknessProfile& profile);

// One s-t path with its share of the pair's unit flow.
struct PathFlow {
  Path path;
  double weight = 0.0;
};

// Decompose one pair's arc flow into weighted s-t paths (weights sum to 1).
std::vector<PathFlow> path_decompose(const ShortestPathDag& dag,
                                     const std::vector<double>& arc_flow);

// Savings c(e) * (sum of pair flows - max pair flow) per qualifying edge,
// aligned with `qualifying`.
std::vector<double> restricted_edge_savings(
    const Instance& instance, const std::vector<ShortestPathDag>& dags,
    const FractionalSolution& sol, const std::vector<EdgeId>& qualifying);

// Expected savings when every pair independently samples a path from its
// decomposition: per edge e, with q_p the chance pair p routes over e, the
// expectation is (sum_p q_p - (1 - prod_p (1 - q_p))) c(e).
struct SavingsExpectation {
  std::vector<double> per_edge;  // aligned with the qualifying list
  double total = 0.0;
};

SavingsExpectation expected_savings(
    const Instance& instance, const std::vector<EdgeId>& qualifying,
    const std::vector<std::vector<PathFlow>>& decomposed);

// Pick one path index per the distribution; u is uniform in [0,1).
int sample_path_index(const std::vector<PathFlow>& paths, double u);

struct Algorithm2Result {
  PreserverSolution solution;
  FractionalSolution lp_solution;      // restricted optimum, extended
  FractionalSolution uniform;          // deterministic fallback
  FractionalSolution mixed;            // the half/half mix that gets rounded
  std::vector<EdgeId> qualifying;
  std::vector<std::vector<PathFlow>> flow_paths;  // decomposition of mixed
  double restricted_objective = 0.0;   // LP optimum on qualifying edges
  double mixed_expected_savings = 0.0;
  int best_trial = -1;
};

// Randomized rounding of the mixed routing: `trials` independent samples,
// keep the best integral solution (objective, then lexicographic edge set).
Algorithm2Result run_algorithm2(const Instance& instance,
                                const std::vector<ShortestPathDag>& dags,
                                const ThicknessProfile& profile, int trials,
                                std::uint64_t seed);

Algorithm2Result run_algorithm2(const Instance& instance, int trials,
                                std::uint64_t seed);

}  // namespace preserver
