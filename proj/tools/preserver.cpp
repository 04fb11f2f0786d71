// Command line front end: instance generation, the undirected-to-directed
// reduction, the solvers, solution verification and batch benchmarking.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "preserver/bench.hpp"
#include "preserver/errors.hpp"
#include "preserver/generate.hpp"
#include "preserver/hardness.hpp"
#include "preserver/io.hpp"
#include "preserver/lp_thin.hpp"
#include "preserver/main_algo.hpp"
#include "preserver/oracle.hpp"
#include "preserver/reduction.hpp"
#include "preserver/solution.hpp"
#include "preserver/thick_dp.hpp"

namespace {

bool log_enabled() {
  const char* level = std::getenv("PRESERVER_LOG");
  return level != nullptr && *level != '\0' && std::string(level) != "0";
}

void log_line(const std::string& message) {
  if (log_enabled()) std::cerr << "[preserver] " << message << '\n';
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw preserver::ParseError("cannot open " + path + " for writing");
  out << text;
}

struct SolveArgs {
  std::string instance_path;
  std::string algorithm;
  double epsilon = 0.5;
  int trials = 32;
  std::uint64_t seed = 0;
  std::uint64_t cap = 1'000'000;
  std::string out_path;
  std::string trace_path;
};

int run_solve(const SolveArgs& args) {
  preserver::Instance instance = preserver::parse_instance(args.instance_path);
  instance.epsilon = args.epsilon;
  preserver::normalize_instance(instance);
  log_line("solving " + args.instance_path + " with " + args.algorithm);

  preserver::PreserverSolution solution;
  if (args.algorithm == "oracle") {
    preserver::OracleOptions opts;
    opts.combination_cap = args.cap;
    solution = preserver::brute_force_optimum(instance, opts).solution;
  } else if (args.algorithm == "thick") {
    solution = preserver::run_algorithm1(instance).solution;
  } else if (args.algorithm == "thin") {
    solution =
        preserver::run_algorithm2(instance, args.trials, args.seed).solution;
  } else {
    preserver::MainResult result =
        preserver::run_main(instance, args.trials, args.seed);
    solution = std::move(result.solution);
    if (!args.trace_path.empty()) {
      std::string lines;
      for (const preserver::MainIteration& it : result.trace) {
        nlohmann::ordered_json record{
            {"round", it.round},
            {"active_pairs", it.active_pairs},
            {"threshold", it.threshold},
            {"dense_objective", it.dense_objective},
            {"sparse_objective", it.sparse_objective},
            {"lower_bound", it.lower_bound},
            {"survivors", it.survivors},
        };
        lines += record.dump();
        lines += '\n';
      }
      emit(lines, args.trace_path);
    }
  }

  bool feasible = preserver::verify_feasible(instance, solution).feasible;
  preserver::SolutionFile file;
  file.hash = preserver::instance_hash(instance);
  file.algorithm = args.algorithm;
  file.epsilon = args.epsilon;
  file.seed = args.seed;
  file.trials = args.trials;
  file.feasible = feasible;
  file.solution = std::move(solution);
  emit(preserver::write_solution_string(file), args.out_path);
  if (!feasible) {
    std::cerr << "solution does not preserve every demand distance\n";
    return 2;
  }
  return 0;
}

int run_verify(const std::string& instance_path,
               const std::string& solution_path) {
  preserver::Instance instance = preserver::parse_instance(instance_path);
  preserver::SolutionFile file =
      preserver::parse_solution(solution_path, instance);
  preserver::FeasibilityReport report =
      preserver::verify_feasible(instance, file.solution);
  if (!report.feasible) {
    for (const preserver::FeasibilityViolation& v : report.violations)
      std::cerr << "pair (" << v.pair.s << ", " << v.pair.t << ") needs "
                << v.required << ", subgraph gives "
                << (v.achieved == preserver::kUnreachable
                        ? std::string("unreachable")
                        : std::to_string(v.achieved))
                << '\n';
    return 2;
  }
  std::cout << "feasible; objective " << file.solution.objective << " (upper "
            << file.solution.upper_bound << ", cost " << file.solution.cost
            << ")\n";
  if (!file.solution.witnesses.empty()) {
    preserver::SavingsReport savings =
        preserver::savings_report(instance, file.solution);
    std::cout << "witness accounting consistent over "
              << savings.shares.size() << " edges\n";
  }
  return 0;
}

int run_bench_cmd(const std::string& manifest_path, const std::string& algs,
                  int trials, std::uint64_t seed, std::uint64_t cap,
                  const std::string& out_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw preserver::ParseError("cannot open " + manifest_path);
  std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();
  std::vector<std::pair<std::string, preserver::Instance>> instances;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream split(raw);
    std::string token;
    if (!(split >> token)) continue;
    std::filesystem::path path(token);
    if (path.is_relative()) path = base / path;
    instances.emplace_back(token, preserver::parse_instance(path.string()));
  }

  std::vector<std::string> algorithms;
  std::istringstream alg_split(algs);
  std::string name;
  while (std::getline(alg_split, name, ','))
    if (!name.empty()) algorithms.push_back(name);

  preserver::BenchReport report =
      preserver::run_bench(instances, algorithms, trials, seed, cap);
  emit(preserver::bench_report_jsonl(report), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pairwise distance preserver toolkit"};
  app.require_subcommand(1);

  // --- gen ---
  CLI::App* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);

  struct {
    bool directed = false;
    preserver::NodeId nodes = 10;
    preserver::EdgeId edges = 20;
    int pairs = 4;
    preserver::Weight max_weight = 10;
    std::uint64_t seed = 0;
    std::string out;
  } rnd;
  CLI::App* gen_random_cmd = gen->add_subcommand("random", "random instance");
  gen_random_cmd->add_flag("--directed", rnd.directed, "directed graph");
  gen_random_cmd->add_option("-n,--nodes", rnd.nodes, "node count");
  gen_random_cmd->add_option("-m,--edges", rnd.edges, "edge count");
  gen_random_cmd->add_option("-p,--pairs", rnd.pairs, "demand pair count");
  gen_random_cmd->add_option("--max-weight", rnd.max_weight, "max edge weight");
  gen_random_cmd->add_option("--seed", rnd.seed, "rng seed");
  gen_random_cmd->add_option("-o,--out", rnd.out, "output path");

  struct {
    int rows = 3;
    int cols = 3;
    int pairs = 4;
    std::uint64_t seed = 0;
    std::string out;
  } grid;
  CLI::App* gen_grid_cmd = gen->add_subcommand("grid", "grid instance");
  gen_grid_cmd->add_option("--rows", grid.rows, "grid rows");
  gen_grid_cmd->add_option("--cols", grid.cols, "grid columns");
  gen_grid_cmd->add_option("-p,--pairs", grid.pairs, "demand pair count");
  gen_grid_cmd->add_option("--seed", grid.seed, "rng seed");
  gen_grid_cmd->add_option("-o,--out", grid.out, "output path");

  struct {
    int k = 1;
    int part_size = 2;
    double density = 0.5;
    std::uint64_t seed = 0;
    std::string from;
    std::string out;
    std::string layout;
    std::string maxrep_out;
  } mr;
  CLI::App* gen_maxrep_cmd =
      gen->add_subcommand("maxrep", "hardness gadget instance");
  gen_maxrep_cmd->add_option("--k", mr.k, "parts per side");
  gen_maxrep_cmd->add_option("--part-size", mr.part_size, "vertices per part");
  gen_maxrep_cmd->add_option("--density", mr.density, "edge probability");
  gen_maxrep_cmd->add_option("--seed", mr.seed, "rng seed");
  gen_maxrep_cmd->add_option("--from", mr.from,
                             "bipartite edge-list file (skips random generation)");
  gen_maxrep_cmd->add_option("-o,--out", mr.out, "output path");
  gen_maxrep_cmd->add_option("--layout", mr.layout, "node layout sidecar path");
  gen_maxrep_cmd->add_option("--maxrep-out", mr.maxrep_out,
                             "write the bipartite instance itself");

  // --- reduce ---
  struct {
    std::string in;
    std::string out;
    std::string map;
  } red;
  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "undirected to directed reduction");
  reduce_cmd->add_option("instance", red.in, "input instance")->required();
  reduce_cmd->add_option("-o,--out", red.out, "output path");
  reduce_cmd->add_option("--map", red.map, "gadget map path");

  // --- solve ---
  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a solver");
  solve_cmd->add_option("instance", solve_args.instance_path, "input instance")
      ->required();
  solve_cmd
      ->add_option("--alg", solve_args.algorithm,
                   "oracle | thick | thin | main")
      ->required()
      ->check(CLI::IsMember({"oracle", "thick", "thin", "main"}));
  solve_cmd->add_option("--epsilon", solve_args.epsilon, "accuracy parameter");
  solve_cmd->add_option("--trials", solve_args.trials, "rounding trials");
  solve_cmd->add_option("--seed", solve_args.seed, "rng seed");
  solve_cmd->add_option("--cap", solve_args.cap, "oracle combination cap");
  solve_cmd->add_option("-o,--out", solve_args.out_path, "solution path");
  solve_cmd->add_option("--trace", solve_args.trace_path,
                        "per-round trace path (main only)");

  // --- verify ---
  struct {
    std::string instance;
    std::string solution;
  } ver;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a solution file");
  verify_cmd->add_option("instance", ver.instance, "instance path")->required();
  verify_cmd->add_option("solution", ver.solution, "solution path")->required();

  // --- bench ---
  struct {
    std::string manifest;
    std::string algs = "oracle,thick,thin,main";
    int trials = 32;
    std::uint64_t seed = 0;
    std::uint64_t cap = 1'000'000;
    std::string out;
  } bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "batch measurement");
  bench_cmd->add_option("manifest", bench.manifest,
                        "file listing instance paths")
      ->required();
  bench_cmd->add_option("--algs", bench.algs, "comma separated algorithms");
  bench_cmd->add_option("--trials", bench.trials, "rounding trials");
  bench_cmd->add_option("--seed", bench.seed, "rng seed");
  bench_cmd->add_option("--cap", bench.cap, "oracle combination cap");
  bench_cmd->add_option("-o,--out", bench.out, "report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_random_cmd->parsed()) {
      preserver::Instance instance =
          preserver::gen_random(rnd.directed, rnd.nodes, rnd.edges, rnd.pairs,
                                rnd.max_weight, rnd.seed);
      emit(preserver::write_instance_string(instance), rnd.out);
      return 0;
    }
    if (gen_grid_cmd->parsed()) {
      preserver::Instance instance =
          preserver::gen_grid(grid.rows, grid.cols, grid.pairs, grid.seed);
      emit(preserver::write_instance_string(instance), grid.out);
      return 0;
    }
    if (gen_maxrep_cmd->parsed()) {
      preserver::MaxRepInstance maxrep =
          mr.from.empty()
              ? preserver::gen_maxrep_random(mr.k, mr.part_size, mr.density,
                                             mr.seed)
              : preserver::parse_maxrep(mr.from);
      auto [instance, layout] = preserver::generate_cspdp(maxrep);
      emit(preserver::write_instance_string(instance), mr.out);
      if (!mr.layout.empty()) preserver::write_layout(layout, mr.layout);
      if (!mr.maxrep_out.empty()) preserver::write_maxrep(maxrep, mr.maxrep_out);
      return 0;
    }
    if (reduce_cmd->parsed()) {
      preserver::Instance instance = preserver::parse_instance(red.in);
      preserver::ReducedInstance reduced =
          preserver::undirected_to_directed(instance);
      emit(preserver::write_instance_string(reduced.instance), red.out);
      if (!red.map.empty())
        preserver::write_reduction_map(reduced.map, red.map);
      return 0;
    }
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (verify_cmd->parsed()) return run_verify(ver.instance, ver.solution);
    if (bench_cmd->parsed())
      return run_bench_cmd(bench.manifest, bench.algs, bench.trials,
                           bench.seed, bench.cap, bench.out);
  } catch (const preserver::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
