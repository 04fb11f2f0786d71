#include "preserver/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "preserver/errors.hpp"
#include "preserver/rng.hpp"
#include "preserver/shortest_path.hpp"

namespace preserver {

namespace {

// Distinct reachable pairs, resampled uniformly. Reachability is checked on
// the final graph, one distance sweep per distinct source.
std::vector<Pair> sample_pairs(const WeightedGraph& graph, int num_pairs,
                               std::mt19937_64& rng) {
  const NodeId n = graph.num_nodes();
  std::set<Pair> chosen;
  std::vector<std::vector<Weight>> dist_cache(n);
  int attempts = 0;
  const int max_attempts = 1000 * std::max(1, num_pairs);
  while (static_cast<int>(chosen.size()) < num_pairs) {
    if (++attempts > max_attempts)
      throw InfeasibleParametersError(
          "could not sample enough distinct reachable pairs");
    Pair pair;
    pair.s = static_cast<NodeId>(rand_below(rng, static_cast<std::uint64_t>(n)));
    pair.t = static_cast<NodeId>(rand_below(rng, static_cast<std::uint64_t>(n)));
    if (pair.s == pair.t || chosen.count(pair)) continue;
    if (dist_cache[pair.s].empty())
      dist_cache[pair.s] = shortest_distances(graph, pair.s);
    if (dist_cache[pair.s][pair.t] == kUnreachable) continue;
    chosen.insert(pair);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

Instance gen_random(bool directed, NodeId num_nodes, EdgeId num_edges,
                    int num_pairs, Weight max_weight, std::uint64_t seed) {
  if (num_nodes < 2)
    throw InfeasibleParametersError("need at least 2 nodes");
  if (num_edges < num_nodes - 1)
    throw InfeasibleParametersError("need at least n-1 edges for connectivity");
  if (num_pairs < 0 ||
      static_cast<std::int64_t>(num_pairs) >
          static_cast<std::int64_t>(num_nodes) * (num_nodes - 1))
    throw InfeasibleParametersError("pair count out of range");
  if (max_weight < 0)
    throw InfeasibleParametersError("max weight must be non-negative");

  std::mt19937_64 rng(seed);
  std::vector<NodeId> perm(num_nodes);
  std::iota(perm.begin(), perm.end(), 0);
  for (NodeId i = num_nodes - 1; i > 0; --i)
    std::swap(perm[i],
              perm[rand_below(rng, static_cast<std::uint64_t>(i) + 1)]);

  std::vector<Edge> edges;
  edges.reserve(num_edges);
  for (NodeId i = 1; i < num_nodes; ++i) {
    NodeId anchor = perm[rand_below(rng, static_cast<std::uint64_t>(i))];
    Edge e;
    e.tail = anchor;
    e.head = perm[i];
    if (directed && rand_below(rng, 2) == 1) std::swap(e.tail, e.head);
    e.weight = static_cast<Weight>(
        rand_below(rng, static_cast<std::uint64_t>(max_weight) + 1));
    edges.push_back(e);
  }
  while (static_cast<EdgeId>(edges.size()) < num_edges) {
    Edge e;
    e.tail = static_cast<NodeId>(
        rand_below(rng, static_cast<std::uint64_t>(num_nodes)));
    e.head = static_cast<NodeId>(
        rand_below(rng, static_cast<std::uint64_t>(num_nodes)));
    if (e.tail == e.head) continue;
    e.weight = static_cast<Weight>(
        rand_below(rng, static_cast<std::uint64_t>(max_weight) + 1));
    edges.push_back(e);
  }

  Instance instance;
  instance.graph = WeightedGraph(directed, num_nodes, std::move(edges));
  instance.pairs = sample_pairs(instance.graph, num_pairs, rng);
  normalize_instance(instance);
  return instance;
}

Instance gen_grid(int rows, int cols, int num_pairs, std::uint64_t seed) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw InfeasibleParametersError("grid needs at least 2 cells");
  const NodeId n = static_cast<NodeId>(rows) * cols;
  if (num_pairs < 0 ||
      static_cast<std::int64_t>(num_pairs) >
          static_cast<std::int64_t>(n) * (n - 1))
    throw InfeasibleParametersError("pair count out of range");

  std::mt19937_64 rng(seed);
  auto cell = [cols](int r, int c) { return static_cast<NodeId>(r * cols + c); };
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols)
        edges.push_back({cell(r, c), cell(r, c + 1),
                         static_cast<Weight>(1 + rand_below(rng, 8))});
      if (r + 1 < rows)
        edges.push_back({cell(r, c), cell(r + 1, c),
                         static_cast<Weight>(1 + rand_below(rng, 8))});
    }

  Instance instance;
  instance.graph = WeightedGraph(false, n, std::move(edges));
  instance.pairs = sample_pairs(instance.graph, num_pairs, rng);
  normalize_instance(instance);
  return instance;
}

MaxRepInstance gen_maxrep_random(int num_parts, int part_size, double density,
                                 std::uint64_t seed) {
  if (num_parts < 1 || part_size < 1)
    throw InfeasibleParametersError("parts and part size must be positive");
  if (!(density >= 0.0 && density <= 1.0))
    throw InfeasibleParametersError("density must be in [0, 1]");

  std::mt19937_64 rng(seed);
  MaxRepInstance maxrep;
  maxrep.num_parts = num_parts;
  maxrep.part_size = part_size;
  const int n = maxrep.side_size();
  std::vector<char> has_neighbor(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (uniform01(rng) < density) {
        maxrep.edges.emplace_back(v, u);
        has_neighbor[u] = 1;
      }
  for (int u = 0; u < n; ++u)
    if (!has_neighbor[u])
      maxrep.edges.emplace_back(
          static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(n))), u);
  validate_maxrep(maxrep);
  return maxrep;
}

}  // namespace preserver
