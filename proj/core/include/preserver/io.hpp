#pragma once

#include <cstdint>
#include <string>

#include "preserver/graph.hpp"
#include "preserver/hardness.hpp"
#include "preserver/reduction.hpp"
#include "preserver/solution.hpp"

namespace preserver {

// Canonical text form of an instance:
//   cspdp <directed|undirected> <n> <m> <p>
//   e <tail> <head> <weight>   (m lines)
//   q <s> <t>                  (p lines)
// Parsing accepts comments from '#' to end of line and blank lines; writing
// emits none, so parse(write(x)) is byte-stable.
std::string write_instance_string(const Instance& instance);
void write_instance(const Instance& instance, const std::string& path);
Instance parse_instance_string(const std::string& text,
                               const std::string& origin = "<string>");
Instance parse_instance(const std::string& path);

// FNV-1a over the canonical text; ties a solution file to its instance.
std::string instance_hash(const Instance& instance);

// Solution artifact. Witness lines carry node sequences; edges are resolved
// against H on parse (minimum weight, then minimum id), which cannot change
// the length of a shortest path.
struct SolutionFile {
  std::string hash;         // instance_hash of the instance solved
  std::string algorithm;    // oracle | thick | thin | main
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  int trials = 0;
  bool feasible = true;
  PreserverSolution solution;
};

std::string write_solution_string(const SolutionFile& file);
void write_solution(const SolutionFile& file, const std::string& path);
// Re-derives cost/upper bound/objective from the instance and checks them
// against the stated values; throws ValidationError on hash or objective
// mismatch, ParseError on malformed input.
SolutionFile parse_solution_string(const std::string& text,
                                   const Instance& instance,
                                   const std::string& origin = "<string>");
SolutionFile parse_solution(const std::string& path, const Instance& instance);

// One line per original edge: `<orig_edge_id> <entry node> <exit node>
// <middle edge id>`.
void write_reduction_map(const ReductionMap& map, const std::string& path);

// One line per generated node: `node <id> <role...>`.
void write_layout(const GadgetLayout& layout, const std::string& path);

// Bipartite instance text form:
//   maxrep <k> <part_size> <num_edges>
//   b <left> <right>           (num_edges lines)
std::string write_maxrep_string(const MaxRepInstance& maxrep);
void write_maxrep(const MaxRepInstance& maxrep, const std::string& path);
MaxRepInstance parse_maxrep_string(const std::string& text,
                                   const std::string& origin = "<string>");
MaxRepInstance parse_maxrep(const std::string& path);

}  // namespace preserver
