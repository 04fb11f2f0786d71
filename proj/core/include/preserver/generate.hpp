#pragma once

#include <cstdint>

#include "preserver/graph.hpp"
#include "preserver/hardness.hpp"

namespace preserver {

// Seeded random instance. A random spanning tree keeps the graph connected
// (weakly, when directed); the remaining edges and the pair endpoints are
// uniform. Weights are uniform in [0, max_weight]. Pairs are distinct and
// resampled until reachable. Throws InfeasibleParametersError when the
// counts cannot be met (m < n-1, too many pairs, n < 2, ...).
Instance gen_random(bool directed, NodeId num_nodes, EdgeId num_edges,
                    int num_pairs, Weight max_weight, std::uint64_t seed);

// Undirected rows x cols grid with uniform weights in [1, 8] and `num_pairs`
// distinct random demand pairs.
Instance gen_grid(int rows, int cols, int num_pairs, std::uint64_t seed);

// Bipartite part-structured instance: each left-right vertex pair is joined
// with probability `density`; right vertices that end up isolated get one
// uniform neighbor, since the gadget construction requires degree >= 1.
MaxRepInstance gen_maxrep_random(int num_parts, int part_size, double density,
                                 std::uint64_t seed);

}  // namespace preserver
