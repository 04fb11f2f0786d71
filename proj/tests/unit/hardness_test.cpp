#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "preserver/errors.hpp"
#include "preserver/generate.hpp"
#include "preserver/hardness.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/oracle.hpp"
#include "preserver/solution.hpp"
#include "test_support.hpp"

using namespace preserver;

namespace {

// Independent exhaustive coverage maximum (plain nested odometer).
int local_best_coverage(const MaxRepInstance& mr) {
  const int k = mr.num_parts, ps = mr.part_size;
  std::set<std::pair<int, int>> edges(mr.edges.begin(), mr.edges.end());
  std::vector<int> digits(2 * k, 0);
  int best = 0;
  while (true) {
    int covered = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (edges.count({i * ps + digits[i], j * ps + digits[k + j]}))
          ++covered;
    best = std::max(best, covered);
    int pos = 2 * k - 1;
    while (pos >= 0 && digits[pos] == ps - 1) digits[pos--] = 0;
    if (pos < 0) break;
    ++digits[pos];
  }
  return best;
}

}  // namespace

TEST_CASE("single-part single-vertex gadget layout") {
  MaxRepInstance mr{1, 1, {{0, 0}}};
  auto [inst, layout] = generate_cspdp(mr);

  CHECK(layout.max_right_degree == 1);
  CHECK(layout.heavy_weight == 3);
  CHECK(inst.graph.num_nodes() == 7);  // 4k + n + 2n^2
  CHECK(inst.graph.num_edges() == 6);
  CHECK(inst.graph.directed());
  REQUIRE(inst.pairs.size() == 2);
  CHECK(inst.pairs[0] == Pair{layout.s(0), layout.t(0)});
  CHECK(inst.pairs[1] == Pair{layout.o(0), layout.d(0)});

  // source-sink path: heavy, slot, heavy
  const Path& left = layout.left_paths[0];
  REQUIRE(left.edges.size() == 3);
  CHECK(inst.graph.edge(left.edges[0]).weight == 3);
  CHECK(inst.graph.edge(left.edges[1]).weight == 1);
  CHECK(inst.graph.edge(left.edges[2]).weight == 3);

  // detour path: stub 2n * heavy, free connector, the slot edge, exit
  const Path& right = layout.right_paths[0];
  REQUIRE(right.edges.size() == 4);
  CHECK(inst.graph.edge(right.edges[0]).weight == 6);
  CHECK(inst.graph.edge(right.edges[1]).weight == 0);
  CHECK(right.edges[2] == left.edges[1]);  // rides the slot edge
  CHECK(inst.graph.edge(right.edges[3]).weight == 7);

  // the shared weight-1 edge is the whole optimum
  OracleResult oracle = brute_force_optimum(inst);
  CHECK(oracle.optimum == 1);
  CHECK(oracle.combinations == 1);
  CHECK(check_path_structure(mr).holds);
}

TEST_CASE("all detours in a part tie on length") {
  // 2 parts of size 2, complete bipartite graph
  MaxRepInstance mr{2, 2, {}};
  for (int v = 0; v < 4; ++v)
    for (int u = 0; u < 4; ++u) mr.edges.push_back({v, u});
  auto [inst, layout] = generate_cspdp(mr);
  const int n = mr.side_size();
  CHECK(inst.graph.num_nodes() == 4 * 2 + n + 2 * n * n);

  // every left pair and every right pair offers part_size shortest paths
  for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
    ShortestPathDag dag = build_local_graph(inst.graph, inst.pairs[p]);
    CHECK(enumerate_shortest_paths(dag, 1000).size() == 2);
  }
  StructureReport sr = check_path_structure(mr);
  CHECK(sr.holds);
  CHECK(sr.detail.empty());
}

TEST_CASE("coverage counting matches a direct recount") {
  MaxRepInstance mr{2, 2, {{0, 0}, {0, 2}, {1, 3}, {2, 1}, {3, 3}, {2, 2}}};
  // chosen cells (0,0), (0,2), (2,0), (2,2): three are super-edges
  CHECK(count_covered(mr, Representatives{{0, 2}, {0, 2}}) == 3);
  // chosen cells (0,1), (0,3), (3,1), (3,3): only (3,3) is present
  CHECK(count_covered(mr, Representatives{{0, 3}, {1, 3}}) == 1);
  // chosen cells (1,1), (1,3), (2,1), (2,3): two are present
  CHECK(count_covered(mr, Representatives{{1, 2}, {1, 3}}) == 2);
}

TEST_CASE("exhaustive representative search") {
  MaxRepInstance mr{1, 2, {{0, 0}, {1, 1}}};
  MaxRepResult best = maxrep_brute_force(mr);
  CHECK(best.covered == 1);
  // ties resolve to the first maximum in odometer order
  CHECK(best.reps.left == std::vector<int>{0});
  CHECK(best.reps.right == std::vector<int>{0});

  for (std::uint64_t seed = 900; seed < 910; ++seed) {
    MaxRepInstance random = gen_maxrep_random(2, 3, 0.4, seed);
    MaxRepResult r = maxrep_brute_force(random);
    CHECK(r.covered == local_best_coverage(random));
    CHECK(count_covered(random, r.reps) == r.covered);
  }

  MaxRepInstance big{4, 4, {}};
  for (int v = 0; v < 16; ++v) big.edges.push_back({v, v});
  CHECK_THROWS_AS(maxrep_brute_force(big, 10), PathExplosionError);
}

TEST_CASE("optimal savings equal the maximum coverage") {
  std::vector<MaxRepInstance> cases;
  cases.push_back({1, 1, {{0, 0}}});
  cases.push_back({1, 2, {{0, 0}, {1, 1}}});
  cases.push_back({2, 1, {{0, 0}, {0, 1}, {1, 1}}});
  for (std::uint64_t seed = 920; seed < 928; ++seed)
    cases.push_back(gen_maxrep_random(2, 2, 0.5, seed));
  for (const MaxRepInstance& mr : cases) {
    auto [inst, layout] = generate_cspdp(mr);
    OracleResult oracle = brute_force_optimum(inst);
    MaxRepResult best = maxrep_brute_force(mr);
    CHECK(oracle.optimum == static_cast<Weight>(best.covered));

    CorrespondenceReport report =
        verify_correspondence(mr, inst, oracle.solution);
    CHECK(report.match);
    CHECK(report.covered == best.covered);
    CHECK(report.savings == oracle.optimum);
    CHECK(count_covered(mr, report.reps) == report.covered);
  }
}

TEST_CASE("correspondence rejects foreign witnesses and instances") {
  MaxRepInstance mr{1, 1, {{0, 0}}};
  auto [inst, layout] = generate_cspdp(mr);
  OracleResult oracle = brute_force_optimum(inst);

  PreserverSolution tampered = oracle.solution;
  std::swap(tampered.witnesses[0], tampered.witnesses[1]);
  CHECK_THROWS_AS(verify_correspondence(mr, inst, tampered),
                  StructureViolationError);

  PreserverSolution truncated = oracle.solution;
  truncated.witnesses.pop_back();
  CHECK_THROWS_AS(verify_correspondence(mr, inst, truncated),
                  DimensionMismatchError);

  MaxRepInstance other{1, 2, {{0, 0}, {1, 1}}};
  CHECK_THROWS_AS(verify_correspondence(other, inst, oracle.solution),
                  DimensionMismatchError);
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(validate_maxrep({0, 1, {}}), InvalidPartitionError);
  CHECK_THROWS_AS(validate_maxrep({1, 0, {}}), InvalidPartitionError);
  // right vertex 1 isolated
  CHECK_THROWS_AS(validate_maxrep({1, 2, {{0, 0}, {1, 0}}}),
                  InvalidPartitionError);
  CHECK_THROWS_AS(validate_maxrep({1, 1, {{0, 1}}}), InvalidPartitionError);
  CHECK_THROWS_AS(validate_maxrep({1, 1, {{-1, 0}}}), InvalidPartitionError);
  CHECK_NOTHROW(validate_maxrep({1, 2, {{0, 0}, {0, 1}}}));
}
