#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/solution.hpp"
#include "preserver/types.hpp"

namespace preserver {

// Label-cover style instance: a bipartite graph whose sides are split into k
// parts of equal size. Vertices are numbered 0..k*part_size-1 on each side
// and part membership is by contiguous blocks: vertex g lies in part
// g / part_size. Picking one representative per part covers the super-edge
// (i, j) when the chosen representatives of left part i and right part j are
// adjacent; the goal is to cover as many super-edges as possible.
struct MaxRepInstance {
  int num_parts = 0;  // k
  int part_size = 0;  // vertices per part, both sides
  std::vector<std::pair<int, int>> edges;  // (left vertex, right vertex)

  int side_size() const { return num_parts * part_size; }
  int part_of(int vertex) const { return vertex / part_size; }
};

// Throws InvalidPartitionError unless k >= 1, part_size >= 1, all edge
// endpoints are in range, and every right vertex has at least one neighbor
// (an isolated right vertex would have no candidate witness path in the
// generated instance).
void validate_maxrep(const MaxRepInstance& maxrep);

// Node map and canonical witness paths of a generated instance. With n the
// side size, each left vertex v owns a source-sink path over nodes
// x(v, 1..2n); each right vertex u owns a detour path threading the
// weight-1 edges (x(*, 2r-1), x(*, 2r)) of its private slot r = u + 1.
struct GadgetLayout {
  int num_parts = 0;
  int part_size = 0;
  Weight max_right_degree = 0;  // d_max over right vertices
  Weight heavy_weight = 0;      // 3 * d_max

  std::vector<Path> left_paths;   // by left vertex, serves pair (s_i, t_i)
  std::vector<Path> right_paths;  // by right vertex, serves pair (o_j, d_j)
  std::vector<std::string> node_labels;  // role tag per node id

  int side_size() const { return num_parts * part_size; }
  NodeId s(int i) const { return 2 * i; }
  NodeId t(int i) const { return 2 * i + 1; }
  NodeId o(int j) const { return 2 * num_parts + 2 * j; }
  NodeId d(int j) const { return 2 * num_parts + 2 * j + 1; }
  NodeId y(int u) const { return 4 * num_parts + u; }
  NodeId x(int v, int step) const {  // step in 1..2n
    return 4 * num_parts + side_size() + v * 2 * side_size() + (step - 1);
  }
};

// Builds the directed distance-preservation instance whose optimal savings
// equal the instance's maximum super-edge coverage. Demand pairs are the k
// left source-sink pairs followed by the k right ones.
std::pair<Instance, GadgetLayout> generate_cspdp(const MaxRepInstance& maxrep);

struct Representatives {
  std::vector<int> left;   // chosen left vertex per part
  std::vector<int> right;  // chosen right vertex per part
};

int count_covered(const MaxRepInstance& maxrep, const Representatives& reps);

struct MaxRepResult {
  Representatives reps;
  int covered = 0;
};

// Exhaustive search over part_size^(2k) representative choices; throws
// PathExplosionError when that count exceeds `cap`. Ties resolve to the
// first maximum in odometer order (rightmost part cycling fastest).
MaxRepResult maxrep_brute_force(const MaxRepInstance& maxrep,
                                std::uint64_t cap = 20'000'000);

struct CorrespondenceReport {
  Representatives reps;
  int covered = 0;
  Weight savings = 0;
  bool match = false;  // savings == covered
};

// Reads the representative choice off a feasible solution's witnesses and
// checks its savings against the recounted coverage. Throws
// StructureViolationError when a witness is not one of the canonical paths,
// and DimensionMismatchError when `instance` was not generated from
// `maxrep`.
CorrespondenceReport verify_correspondence(const MaxRepInstance& maxrep,
                                           const Instance& instance,
                                           const PreserverSolution& solution);

struct StructureReport {
  bool holds = true;
  std::string detail;  // first mismatch, empty when holds
};

// Enumerates all shortest paths of every demand pair of the generated
// instance and checks they are exactly the canonical witness paths.
StructureReport check_path_structure(const MaxRepInstance& maxrep);

}  // namespace preserver
