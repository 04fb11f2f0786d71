#include "preserver/hardness.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "preserver/errors.hpp"
#include "preserver/local_graph.hpp"

namespace preserver {

namespace {

// Sorted, deduplicated left neighbors per right vertex.
std::vector<std::vector<int>> right_adjacency(const MaxRepInstance& maxrep) {
  std::vector<std::set<int>> sets(maxrep.side_size());
  for (auto [v, u] : maxrep.edges) sets[u].insert(v);
  std::vector<std::vector<int>> adj(maxrep.side_size());
  for (int u = 0; u < maxrep.side_size(); ++u)
    adj[u].assign(sets[u].begin(), sets[u].end());
  return adj;
}

}  // namespace

void validate_maxrep(const MaxRepInstance& maxrep) {
  if (maxrep.num_parts < 1)
    throw InvalidPartitionError("part count must be at least 1");
  if (maxrep.part_size < 1)
    throw InvalidPartitionError("part size must be at least 1");
  const int n = maxrep.side_size();
  std::vector<char> has_neighbor(n, 0);
  for (auto [v, u] : maxrep.edges) {
    if (v < 0 || v >= n)
      throw InvalidPartitionError("left endpoint " + std::to_string(v) +
                                  " out of range");
    if (u < 0 || u >= n)
      throw InvalidPartitionError("right endpoint " + std::to_string(u) +
                                  " out of range");
    has_neighbor[u] = 1;
  }
  for (int u = 0; u < n; ++u)
    if (!has_neighbor[u])
      throw InvalidPartitionError("right vertex " + std::to_string(u) +
                                  " has no neighbors");
}

std::pair<Instance, GadgetLayout> generate_cspdp(const MaxRepInstance& maxrep) {
  validate_maxrep(maxrep);
  const int k = maxrep.num_parts;
  const int n = maxrep.side_size();
  std::vector<std::vector<int>> adj = right_adjacency(maxrep);

  GadgetLayout layout;
  layout.num_parts = k;
  layout.part_size = maxrep.part_size;
  for (int u = 0; u < n; ++u)
    layout.max_right_degree =
        std::max(layout.max_right_degree, static_cast<Weight>(adj[u].size()));
  layout.heavy_weight = 3 * layout.max_right_degree;
  const Weight heavy = layout.heavy_weight;

  const NodeId num_nodes = 4 * k + n + 2 * n * n;
  layout.node_labels.assign(num_nodes, "");
  for (int i = 0; i < k; ++i) {
    layout.node_labels[layout.s(i)] = "s " + std::to_string(i);
    layout.node_labels[layout.t(i)] = "t " + std::to_string(i);
    layout.node_labels[layout.o(i)] = "o " + std::to_string(i);
    layout.node_labels[layout.d(i)] = "d " + std::to_string(i);
  }
  for (int u = 0; u < n; ++u)
    layout.node_labels[layout.y(u)] = "y " + std::to_string(u);
  for (int v = 0; v < n; ++v)
    for (int step = 1; step <= 2 * n; ++step)
      layout.node_labels[layout.x(v, step)] =
          "x " + std::to_string(v) + " " + std::to_string(step);

  std::vector<Edge> edges;
  // One source-sink path per left vertex: the edge into step r's second node
  // (odd step to even step) weighs 1; everything else weighs 3 * d_max.
  layout.left_paths.resize(n);
  for (int v = 0; v < n; ++v) {
    Path& path = layout.left_paths[v];
    const int part = maxrep.part_of(v);
    path.nodes.push_back(layout.s(part));
    NodeId prev = layout.s(part);
    for (int step = 1; step <= 2 * n; ++step) {
      NodeId cur = layout.x(v, step);
      path.nodes.push_back(cur);
      path.edges.push_back(static_cast<EdgeId>(edges.size()));
      edges.push_back({prev, cur, step % 2 == 0 ? Weight{1} : heavy});
      prev = cur;
    }
    path.nodes.push_back(layout.t(part));
    path.edges.push_back(static_cast<EdgeId>(edges.size()));
    edges.push_back({prev, layout.t(part), heavy});
  }

  // Right-side stubs o_j -> y_u, then one detour chain per right vertex u
  // through slot r = u + 1 of each neighbor's path.
  for (int u = 0; u < n; ++u)
    edges.push_back({layout.o(maxrep.part_of(u)), layout.y(u),
                     2 * static_cast<Weight>(n) * heavy});
  layout.right_paths.resize(n);
  for (int u = 0; u < n; ++u) {
    const int r = u + 1;
    const int part = maxrep.part_of(u);
    Path& path = layout.right_paths[u];
    path.nodes.push_back(layout.o(part));
    path.edges.push_back(static_cast<EdgeId>(n * (2 * n + 1) + u));
    path.nodes.push_back(layout.y(u));

    NodeId prev = layout.y(u);
    for (std::size_t i = 0; i < adj[u].size(); ++i) {
      const int v = adj[u][i];
      path.edges.push_back(static_cast<EdgeId>(edges.size()));
      edges.push_back({prev, layout.x(v, 2 * r - 1),
                       i == 0 ? Weight{0} : Weight{2}});
      path.nodes.push_back(layout.x(v, 2 * r - 1));
      // Ride the neighbor's weight-1 slot edge, laid down above.
      path.edges.push_back(layout.left_paths[v].edges[2 * r - 1]);
      path.nodes.push_back(layout.x(v, 2 * r));
      prev = layout.x(v, 2 * r);
    }
    const Weight exit_weight = (2 * static_cast<Weight>(n) + 1) * heavy -
                               (3 * static_cast<Weight>(adj[u].size()) - 1);
    path.edges.push_back(static_cast<EdgeId>(edges.size()));
    edges.push_back({prev, layout.d(part), exit_weight});
    path.nodes.push_back(layout.d(part));
  }

  Instance instance;
  instance.graph = WeightedGraph(true, num_nodes, std::move(edges));
  for (int i = 0; i < k; ++i)
    instance.pairs.push_back({layout.s(i), layout.t(i)});
  for (int j = 0; j < k; ++j)
    instance.pairs.push_back({layout.o(j), layout.d(j)});
  normalize_instance(instance);
  return {std::move(instance), std::move(layout)};
}

int count_covered(const MaxRepInstance& maxrep, const Representatives& reps) {
  std::set<std::pair<int, int>> edge_set(maxrep.edges.begin(),
                                         maxrep.edges.end());
  int covered = 0;
  for (int i = 0; i < maxrep.num_parts; ++i)
    for (int j = 0; j < maxrep.num_parts; ++j)
      if (edge_set.count({reps.left[i], reps.right[j]})) ++covered;
  return covered;
}

MaxRepResult maxrep_brute_force(const MaxRepInstance& maxrep,
                                std::uint64_t cap) {
  validate_maxrep(maxrep);
  const int k = maxrep.num_parts;
  const std::uint64_t base = static_cast<std::uint64_t>(maxrep.part_size);
  std::uint64_t combos = 1;
  for (int i = 0; i < 2 * k; ++i) {
    if (combos > cap / base)
      throw PathExplosionError("representative combinations exceed cap");
    combos *= base;
  }
  if (combos > cap)
    throw PathExplosionError("representative combinations exceed cap");

  // Odometer over 2k part-local choices, right parts in the low positions.
  std::vector<int> choice(2 * k, 0);
  MaxRepResult best;
  best.covered = -1;
  while (true) {
    Representatives reps;
    for (int i = 0; i < k; ++i)
      reps.left.push_back(i * maxrep.part_size + choice[i]);
    for (int j = 0; j < k; ++j)
      reps.right.push_back(j * maxrep.part_size + choice[k + j]);
    int covered = count_covered(maxrep, reps);
    if (covered > best.covered) {
      best.reps = std::move(reps);
      best.covered = covered;
    }
    int pos = 2 * k - 1;
    while (pos >= 0 && choice[pos] == maxrep.part_size - 1) choice[pos--] = 0;
    if (pos < 0) break;
    ++choice[pos];
  }
  return best;
}

CorrespondenceReport verify_correspondence(const MaxRepInstance& maxrep,
                                           const Instance& instance,
                                           const PreserverSolution& solution) {
  auto [generated, layout] = generate_cspdp(maxrep);
  if (generated.graph.num_nodes() != instance.graph.num_nodes() ||
      generated.graph.edges().size() != instance.graph.edges().size() ||
      generated.pairs != instance.pairs)
    throw DimensionMismatchError("instance does not match the generator");
  const int k = maxrep.num_parts;
  if (solution.witnesses.size() != static_cast<std::size_t>(2 * k))
    throw DimensionMismatchError("expected one witness per demand pair");

  CorrespondenceReport report;
  for (int i = 0; i < k; ++i) {
    int found = -1;
    for (int v = i * maxrep.part_size; v < (i + 1) * maxrep.part_size; ++v)
      if (layout.left_paths[v] == solution.witnesses[i]) { found = v; break; }
    if (found < 0)
      throw StructureViolationError(
          "witness of left pair " + std::to_string(i) +
          " is not one of the canonical source-sink paths");
    report.reps.left.push_back(found);
  }
  for (int j = 0; j < k; ++j) {
    int found = -1;
    for (int u = j * maxrep.part_size; u < (j + 1) * maxrep.part_size; ++u)
      if (layout.right_paths[u] == solution.witnesses[k + j]) { found = u; break; }
    if (found < 0)
      throw StructureViolationError(
          "witness of right pair " + std::to_string(j) +
          " is not one of the canonical detour paths");
    report.reps.right.push_back(found);
  }
  report.covered = count_covered(maxrep, report.reps);
  report.savings = solution.objective;
  report.match = report.savings == static_cast<Weight>(report.covered);
  return report;
}

StructureReport check_path_structure(const MaxRepInstance& maxrep) {
  auto [instance, layout] = generate_cspdp(maxrep);
  const int k = maxrep.num_parts;
  StructureReport report;

  auto compare = [&](Pair pair, std::vector<Path> expected,
                     const std::string& label) {
    ShortestPathDag dag = build_local_graph(instance.graph, pair);
    std::vector<Path> found =
        enumerate_shortest_paths(dag, 1'000'000);
    auto by_nodes = [](const Path& a, const Path& b) {
      return a.nodes < b.nodes;
    };
    std::sort(found.begin(), found.end(), by_nodes);
    std::sort(expected.begin(), expected.end(), by_nodes);
    if (found != expected) {
      report.holds = false;
      if (report.detail.empty())
        report.detail = label + ": expected " +
                        std::to_string(expected.size()) +
                        " canonical shortest paths, found " +
                        std::to_string(found.size());
    }
  };

  for (int i = 0; i < k && report.holds; ++i) {
    std::vector<Path> expected(
        layout.left_paths.begin() + i * maxrep.part_size,
        layout.left_paths.begin() + (i + 1) * maxrep.part_size);
    compare(instance.pairs[i], std::move(expected),
            "left pair " + std::to_string(i));
  }
  for (int j = 0; j < k && report.holds; ++j) {
    std::vector<Path> expected(
        layout.right_paths.begin() + j * maxrep.part_size,
        layout.right_paths.begin() + (j + 1) * maxrep.part_size);
    compare(instance.pairs[k + j], std::move(expected),
            "right pair " + std::to_string(j));
  }
  return report;
}

}  // namespace preserver
