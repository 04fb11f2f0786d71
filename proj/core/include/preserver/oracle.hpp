#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/solution.hpp"
#include "preserver/thickness.hpp"

namespace preserver {

struct OracleOptions {
  std::uint64_t combination_cap = 1'000'000;  // max path combinations
  std::uint64_t optima_scan_cap = 10'000;     // max optimal solutions examined
};

// One combination of shortest paths (one per pair). `multiplicity` counts
// selected paths per edge id; `union_cost` is the weight of their union.
struct CombinationView {
  const std::vector<int>& selection;
  const std::vector<std::vector<Path>>& paths;
  const std::vector<int>& multiplicity;
  Weight union_cost;
};

// Enumerates every combination of one shortest path per pair in
// lexicographic order (last pair cycles fastest), maintaining the edge
// multiplicities incrementally. Throws PathExplosionError when the number
// of combinations exceeds the cap.
void for_each_path_combination(const WeightedGraph& graph,
                               std::span<const ShortestPathDag> dags,
                               std::uint64_t combination_cap,
                               const std::function<void(const CombinationView&)>& visit);

struct OracleResult {
  PreserverSolution solution;     // lexicographically first optimal combination
  Weight optimum = 0;             // U - min cost
  std::uint64_t combinations = 0; // combinations examined
};

// Exact optimum by exhausting all shortest-path combinations.
OracleResult brute_force_optimum(const Instance& instance, const OracleOptions& opts = {});

// Whether some optimal solution earns more than a 1/m^epsilon share of the
// optimum on thick edges. "Unknown" means the optimum has more optimal
// combinations than the scan cap and none seen so far qualified.
enum class Dominance { kThickDominant, kThinDominant, kUnknown };

struct DominanceReport {
  Dominance verdict = Dominance::kUnknown;
  Weight optimum = 0;
  std::uint64_t optima_seen = 0;
  bool scan_truncated = false;
};

DominanceReport classify_dominance(const Instance& instance, const OracleOptions& opts = {});

// Lightness of the thin-restricted problem: take the lexicographically
// first combination maximizing the savings earned on thin edges; the
// instance is light when the part of those savings owed to pairs that
// survive pruning (b >= sqrt(m)) stays within (1 - 1/m^epsilon) times the
// thin optimum. Survivor-side shares are recomputed over survivors alone,
// so an edge used only by small pairs contributes nothing.
enum class Lightness { kLight, kHeavy };

struct LightnessReport {
  Lightness verdict = Lightness::kLight;
  Weight thin_optimum = 0;        // best thin-restricted savings
  Weight survivor_savings = 0;    // thin savings of surviving pairs at that solution
  PreserverSolution solution;     // the chosen thin-optimal combination
};

LightnessReport classify_lightness(const Instance& instance, const OracleOptions& opts = {});

}  // namespace preserver
