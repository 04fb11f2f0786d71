#pragma once

#include <span>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/local_graph.hpp"

namespace preserver {

// Edge multiplicity profile across the demand pairs' local graphs.
// An edge is thick when the number of local graphs containing it reaches
// |P| / m^(1/2 + epsilon); covered edges below that line are thin.
struct ThicknessProfile {
  double threshold = 0.0;
  std::vector<int> multiplicity;   // v_e, by edge id
  std::vector<char> thick;         // by edge id
  std::vector<EdgeId> thick_edges; // ascending, v_e >= 1 only
  std::vector<EdgeId> thin_edges;  // ascending, covered thin edges
  std::vector<int> thin_count;     // b_(s,t): thin edges per pair, pair order
};

ThicknessProfile classify_edges(const Instance& instance,
                                std::span<const ShortestPathDag> dags);

// Exact integer form of b <= sqrt(m); pairs passing it feed the restricted
// LP objective and the per-thin-edge uniform extension.
bool small_pair(int thin_count, EdgeId num_edges);

// Exact integer form of b >= sqrt(m); pairs passing it survive pruning.
bool surviving_pair(int thin_count, EdgeId num_edges);

}  // namespace preserver
