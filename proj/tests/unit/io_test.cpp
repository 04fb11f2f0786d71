#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "preserver/errors.hpp"
#include "preserver/generate.hpp"
#include "preserver/hardness.hpp"
#include "preserver/io.hpp"
#include "preserver/oracle.hpp"
#include "preserver/reduction.hpp"
#include "preserver/solution.hpp"
#include "test_support.hpp"

using namespace preserver;

namespace {

bool same_instance(const Instance& a, const Instance& b) {
  if (a.graph.directed() != b.graph.directed()) return false;
  if (a.graph.num_nodes() != b.graph.num_nodes()) return false;
  if (a.pairs != b.pairs) return false;
  if (a.epsilon != b.epsilon) return false;
  if (a.graph.num_edges() != b.graph.num_edges()) return false;
  for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
    const Edge& x = a.graph.edge(e);
    const Edge& y = b.graph.edge(e);
    if (x.tail != y.tail || x.head != y.head || x.weight != y.weight)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("instance text round-trips byte-identically") {
  for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
    Instance inst = gen_random(seed % 2 == 0, 8, 15, 5, 6, seed);
    std::string text = write_instance_string(inst);
    Instance back = parse_instance_string(text);
    CHECK(same_instance(inst, back));
    CHECK(write_instance_string(back) == text);
    CHECK(instance_hash(back) == instance_hash(inst));
  }
}

TEST_CASE("minimal instance, comments, and blank lines") {
  std::string text =
      "# two nodes, one edge\n"
      "cspdp directed 2 1 1\n"
      "\n"
      "e 0 1 7   # the only edge\n"
      "q 0 1\n";
  Instance inst = parse_instance_string(text);
  CHECK(inst.graph.directed());
  CHECK(inst.graph.num_nodes() == 2);
  CHECK(inst.graph.num_edges() == 1);
  CHECK(inst.graph.edge(0).weight == 7);
  REQUIRE(inst.pairs.size() == 1);
  CHECK(inst.pairs[0] == Pair{0, 1});
}

TEST_CASE("malformed instances carry the offending line") {
  // negative weight
  CHECK_THROWS_WITH_AS(
      parse_instance_string("cspdp directed 2 1 1\ne 0 1 -3\nq 0 1\n", "bad"),
      doctest::Contains("bad:2"), ParseError);
  // not enough records
  CHECK_THROWS_AS(parse_instance_string("cspdp directed 2 1 1\ne 0 1 3\n"),
                  ParseError);
  // wrong tag
  CHECK_THROWS_AS(
      parse_instance_string("cspdp directed 2 1 1\nx 0 1 3\nq 0 1\n"),
      ParseError);
  // header typo
  CHECK_THROWS_AS(
      parse_instance_string("cspd directed 2 1 1\ne 0 1 3\nq 0 1\n"),
      ParseError);
  // non-numeric field
  CHECK_THROWS_AS(
      parse_instance_string("cspdp directed 2 one 1\ne 0 1 3\nq 0 1\n"),
      ParseError);
  // endpoint out of range surfaces as validation, not parse trouble
  CHECK_THROWS_AS(
      parse_instance_string("cspdp directed 2 1 1\ne 0 5 3\nq 0 1\n"),
      ValidationError);
  CHECK_THROWS_AS(parse_instance_string(""), ParseError);
}

TEST_CASE("hash pins the exact instance text") {
  Instance inst = testsupport::diamond_instance();
  std::string h = instance_hash(inst);
  CHECK(h.size() == 16);
  CHECK(instance_hash(inst) == h);

  Instance heavier = inst;
  heavier.graph = WeightedGraph(
      true, 4, {{0, 1, 1}, {1, 3, 2}, {0, 2, 1}, {2, 3, 1}});
  CHECK(instance_hash(heavier) != h);

  Instance fewer = inst;
  fewer.pairs.pop_back();
  CHECK(instance_hash(fewer) != h);
}

TEST_CASE("solution files round-trip and re-resolve witness edges") {
  for (std::uint64_t seed = 1100; seed < 1112; ++seed) {
    Instance inst = gen_random(seed % 2 == 1, 7, 12, 4, 4, seed);
    OracleResult oracle = brute_force_optimum(inst);
    SolutionFile file;
    file.hash = instance_hash(inst);
    file.algorithm = "oracle";
    file.epsilon = inst.epsilon;
    file.seed = seed;
    file.trials = 1;
    file.feasible = true;
    file.solution = oracle.solution;

    std::string text = write_solution_string(file);
    SolutionFile back = parse_solution_string(text, inst);
    CHECK(back.algorithm == "oracle");
    CHECK(back.seed == seed);
    CHECK(back.solution.edges == file.solution.edges);
    CHECK(back.solution.objective == file.solution.objective);
    REQUIRE(back.solution.witnesses.size() == inst.pairs.size());
    for (std::size_t p = 0; p < inst.pairs.size(); ++p) {
      // node sequences survive; edges may rebind to cheaper duplicates
      CHECK(back.solution.witnesses[p].nodes ==
            file.solution.witnesses[p].nodes);
      CHECK(testsupport::path_weight(inst.graph, back.solution.witnesses[p]) ==
            testsupport::path_weight(inst.graph, file.solution.witnesses[p]));
    }
    CHECK(verify_feasible(inst, back.solution).feasible);
    CHECK(write_solution_string(back) == text);
  }
}

TEST_CASE("witness edge resolution prefers cheap then low ids") {
  // parallel edges 0 -> 1: id 0 weighs 2, ids 1 and 2 weigh 1
  Instance inst;
  inst.graph = WeightedGraph(true, 2, {{0, 1, 2}, {0, 1, 1}, {0, 1, 1}});
  inst.pairs = {{0, 1}};
  normalize_instance(inst);

  SolutionFile file;
  file.hash = instance_hash(inst);
  file.algorithm = "oracle";
  file.epsilon = inst.epsilon;
  file.solution = finalize_solution(inst, {1, 2}, {Path{{0, 1}, {1}}});
  SolutionFile back =
      parse_solution_string(write_solution_string(file), inst);
  REQUIRE(back.solution.witnesses.size() == 1);
  CHECK(back.solution.witnesses[0].edges == std::vector<EdgeId>{1});
}

TEST_CASE("solution parsing rejects tampering") {
  Instance inst = testsupport::chain_instance();
  OracleResult oracle = brute_force_optimum(inst);
  SolutionFile file;
  file.hash = instance_hash(inst);
  file.algorithm = "oracle";
  file.epsilon = inst.epsilon;
  file.solution = oracle.solution;
  std::string text = write_solution_string(file);

  // flip the hash
  std::string wrong_hash = text;
  std::size_t at = wrong_hash.find("instance ") + 9;
  wrong_hash[at] = wrong_hash[at] == '0' ? '1' : '0';
  CHECK_THROWS_AS(parse_solution_string(wrong_hash, inst), ValidationError);

  // overstate the objective
  std::string wrong_objective = text;
  at = wrong_objective.find("objective 1");
  REQUIRE(at != std::string::npos);
  wrong_objective.replace(at, 11, "objective 3");
  CHECK_THROWS_AS(parse_solution_string(wrong_objective, inst),
                  ValidationError);

  // witness stepping outside H
  std::string outside = text;
  at = outside.find("H 3 0 1 2");
  REQUIRE(at != std::string::npos);
  outside.replace(at, 9, "H 2 0 1");
  CHECK_THROWS_AS(parse_solution_string(outside, inst), ParseError);

  // truncated record
  CHECK_THROWS_AS(
      parse_solution_string("cspdp-solution 1\ninstance abc\n", inst),
      ParseError);
  // unsupported version
  CHECK_THROWS_AS(parse_solution_string("cspdp-solution 2\n", inst),
                  ParseError);
}

TEST_CASE("file-based io and auxiliary artifacts") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "preserver_io_test";
  fs::create_directories(dir);

  Instance inst = gen_random(false, 6, 9, 3, 4, 77);
  fs::path instance_path = dir / "instance.cspdp";
  write_instance(inst, instance_path.string());
  Instance back = parse_instance(instance_path.string());
  CHECK(same_instance(inst, back));

  ReducedInstance reduced = undirected_to_directed(inst);
  fs::path map_path = dir / "reduction.map";
  write_reduction_map(reduced.map, map_path.string());
  // one line per original edge, each naming entry/exit/middle
  std::string map_text;
  {
    FILE* f = std::fopen(map_path.string().c_str(), "rb");
    REQUIRE(f != nullptr);
    char buf[4096];
    std::size_t got = std::fread(buf, 1, sizeof buf, f);
    std::fclose(f);
    map_text.assign(buf, got);
  }
  CHECK(std::count(map_text.begin(), map_text.end(), '\n') ==
        static_cast<long>(inst.graph.num_edges()));
  CHECK(map_text.rfind("0 6 7 4\n", 0) == 0);

  MaxRepInstance mr = gen_maxrep_random(2, 2, 0.6, 5);
  fs::path mr_path = dir / "bipartite.maxrep";
  write_maxrep(mr, mr_path.string());
  MaxRepInstance mr_back = parse_maxrep(mr_path.string());
  CHECK(mr_back.num_parts == mr.num_parts);
  CHECK(mr_back.part_size == mr.part_size);
  CHECK(mr_back.edges == mr.edges);

  auto [gadget, layout] = generate_cspdp(mr);
  fs::path layout_path = dir / "layout.txt";
  write_layout(layout, layout_path.string());
  CHECK(fs::file_size(layout_path) > 0);

  CHECK_THROWS_AS(parse_instance((dir / "missing.cspdp").string()),
                  ParseError);
  fs::remove_all(dir);
}

TEST_CASE("bipartite text form round-trips and validates") {
  MaxRepInstance mr{2, 2, {{0, 0}, {1, 3}, {3, 1}, {2, 2}}};
  std::string text = write_maxrep_string(mr);
  CHECK(text.rfind("maxrep 2 2 4\n", 0) == 0);
  MaxRepInstance back = parse_maxrep_string(text);
  CHECK(back.edges == mr.edges);
  CHECK(write_maxrep_string(back) == text);

  CHECK_THROWS_AS(parse_maxrep_string(""), ParseError);
  CHECK_THROWS_AS(parse_maxrep_string("maxrep 2 2 2\nb 0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_maxrep_string("maxrep 2 2 1\nb 0 9\n"),
                  InvalidPartitionError);
}
