#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace preserver {

using NodeId = int32_t;
using EdgeId = int32_t;
using Weight = int64_t;

// Sentinel distance for unreachable targets.
inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::max();

// A walk through the graph, stored as its node sequence plus the edge ids
// traversed between consecutive nodes (edges.size() == nodes.size() - 1).
struct Path {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  bool operator==(const Path& other) const = default;
};

// Demand pair: preserve the exact s -> t distance.
struct Pair {
  NodeId s = 0;
  NodeId t = 0;

  bool operator==(const Pair& other) const = default;
  auto operator<=>(const Pair& other) const = default;
};

}  // namespace preserver
