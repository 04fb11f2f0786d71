// Acceptance suite: twelve end-to-end checks, one pass/fail line each.
// Exits with the number of failed checks.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "preserver/bench.hpp"
#include "preserver/errors.hpp"
#include "preserver/generate.hpp"
#include "preserver/hardness.hpp"
#include "preserver/io.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/lp_thin.hpp"
#include "preserver/main_algo.hpp"
#include "preserver/oracle.hpp"
#include "preserver/reduction.hpp"
#include "preserver/rng.hpp"
#include "preserver/solution.hpp"
#include "preserver/thick_dp.hpp"
#include "preserver/thickness.hpp"
#include "test_support.hpp"

using namespace preserver;

namespace {

int g_failures = 0;

void report(int number, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << detail << std::endl;
  if (!pass) ++g_failures;
}

struct Prepared {
  Instance inst;
  std::vector<ShortestPathDag> dags;
  ThicknessProfile profile;
};

Prepared prepare(Instance inst) {
  Prepared p{std::move(inst), {}, {}};
  p.dags = build_local_graphs(p.inst.graph, p.inst.pairs);
  p.profile = classify_edges(p.inst, p.dags);
  return p;
}

double edge_flow(const ShortestPathDag& dag, const std::vector<double>& flow,
                 EdgeId e) {
  double total = 0.0;
  for (int a : dag.arcs_of_edge(e)) total += flow[a];
  return total;
}

// Demand (0, 1) served by `branches` parallel unit edges, plus enough
// single-edge pad demands to keep every edge thin.
Instance parallel_fixture(int branches, int pads, double epsilon) {
  std::vector<Edge> edges;
  std::vector<Pair> pairs;
  for (int i = 0; i < branches; ++i) edges.push_back({0, 1, 1});
  pairs.push_back({0, 1});
  NodeId next = 2;
  for (int i = 0; i < pads; ++i) {
    edges.push_back({next, next + 1, 1});
    pairs.push_back({next, next + 1});
    next += 2;
  }
  Instance inst;
  inst.graph = WeightedGraph(true, next, std::move(edges));
  inst.pairs = std::move(pairs);
  inst.epsilon = epsilon;
  normalize_instance(inst);
  return inst;
}

// Instances whose restricted program is non-trivial: every covered edge is
// thin and at least one demand is small.
Instance thin_heavy_instance(int index) {
  switch (index % 4) {
    case 0:
      return testsupport::padded_diamond_instance(20 + index, 0.25);
    case 1:
      return parallel_fixture(2 + index % 3, 12 + index, 0.2);
    case 2: {
      Instance grid = gen_grid(3, 4, 10, 5000 + index);
      grid.epsilon = 0.15;
      return grid;
    }
    default:
      return testsupport::padded_diamond_instance(30 + index, 0.2);
  }
}

// Best restricted-savings value over integral one-path-per-pair selections.
double best_integral_restricted(const Prepared& p,
                                const std::vector<EdgeId>& qualifying,
                                std::uint64_t cap) {
  double best = 0.0;
  for_each_path_combination(
      p.inst.graph, p.dags, cap, [&](const CombinationView& view) {
        double value = 0.0;
        for (EdgeId e : qualifying)
          if (view.multiplicity[e] > 0)
            value += static_cast<double>(view.multiplicity[e] - 1) *
                     static_cast<double>(p.inst.graph.edge(e).weight);
        best = std::max(best, value);
      });
  return best;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return std::move(out).str();
}

// Runs the installed binary; returns the exit code, -1 on launch failure.
int run_cli(const std::string& bin, const std::string& args) {
  std::string cmd = bin + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

void criterion_feasibility() {
  int violations = 0, runs = 0, oracle_skips = 0;
  for (int i = 0; i < 200; ++i) {
    NodeId n = 6 + (i * 7) % 25;
    EdgeId m = std::min<EdgeId>(120, (n - 1) + (i % 4) * n);
    int p = 2 + (i % 11);
    Instance inst =
        gen_random(i % 3 != 0, n, m, p, 1 + (i % 9), 9000 + i);
    inst.epsilon = (i % 2 == 0) ? 0.3 : 0.5;

    std::vector<PreserverSolution> outputs;
    try {
      OracleOptions opts;
      opts.combination_cap = 200'000;
      outputs.push_back(brute_force_optimum(inst, opts).solution);
    } catch (const PathExplosionError&) {
      ++oracle_skips;
    }
    outputs.push_back(run_algorithm1(inst).solution);
    outputs.push_back(run_algorithm2(inst, 4, 9000 + i).solution);
    outputs.push_back(run_main(inst, 4, 9000 + i).solution);
    for (const PreserverSolution& solution : outputs) {
      ++runs;
      if (!verify_feasible(inst, solution).feasible) ++violations;
    }
  }
  report(1, violations == 0,
         "feasibility: 200 instances, " + std::to_string(runs) +
             " solver runs feasible, " + std::to_string(oracle_skips) +
             " oracle runs skipped at the combination cap, " +
             std::to_string(violations) + " violations");
}

void criterion_oracle_dominance() {
  int checked = 0, violations = 0;
  for (int i = 0; checked < 50 && i < 200; ++i) {
    NodeId n = 7 + (i % 5);
    EdgeId m = n + 2 + (i % 6);
    Instance inst =
        gen_random(i % 2 == 0, n, m, 3 + (i % 4), 1 + (i % 5), 9500 + i);
    inst.epsilon = (i % 2 == 0) ? 0.3 : 0.5;
    OracleResult oracle;
    try {
      oracle = brute_force_optimum(inst);
    } catch (const PathExplosionError&) {
      continue;
    }
    ++checked;
    MainResult r = run_main(inst, 8, 9500 + i);
    double md = static_cast<double>(inst.graph.num_edges());
    int rounds = static_cast<int>(std::ceil(2.0 / inst.epsilon)) + 1;
    double floor = std::pow(1.0 - std::pow(md, -inst.epsilon), rounds) *
                   static_cast<double>(oracle.optimum) /
                   (4.0 * std::pow(md, 0.5 + 2.0 * inst.epsilon));
    if (r.solution.objective > oracle.optimum) ++violations;
    if (static_cast<double>(r.solution.objective) < floor - 1e-9) ++violations;
  }
  report(2, checked == 50 && violations == 0,
         "approximation envelope: " + std::to_string(checked) +
             " oracle-complete instances, " + std::to_string(violations) +
             " bound violations");
}

void criterion_thick_bound() {
  int certified = 0, violations = 0;
  std::vector<Instance> candidates;
  // chain family with guaranteed heavy overlap
  for (int len = 4; len <= 9; ++len) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < len; ++v) edges.push_back({v, v + 1, 2});
    Instance inst;
    inst.graph = WeightedGraph(true, len, std::move(edges));
    inst.pairs = {{0, static_cast<NodeId>(len - 2)},
                  {1, static_cast<NodeId>(len - 1)}};
    inst.epsilon = 0.5;
    normalize_instance(inst);
    candidates.push_back(std::move(inst));
  }
  for (int i = 0; i < 60; ++i) {
    NodeId n = 6 + (i % 5);
    Instance inst =
        gen_random(i % 2 == 1, n, n + 1 + (i % 5), 2 + (i % 3), 1 + (i % 4),
                   9700 + i);
    inst.epsilon = 0.5;
    candidates.push_back(std::move(inst));
  }

  for (const Instance& inst : candidates) {
    if (certified >= 25) break;
    DominanceReport dom;
    try {
      dom = classify_dominance(inst);
    } catch (const PathExplosionError&) {
      continue;
    }
    if (dom.verdict != Dominance::kThickDominant) continue;
    ++certified;
    Algorithm1Result r = run_algorithm1(inst);
    double md = static_cast<double>(inst.graph.num_edges());
    double floor = static_cast<double>(dom.optimum) /
                   std::pow(md, 0.5 + 2.0 * inst.epsilon);
    if (static_cast<double>(r.solution.objective) < floor - 1e-9) ++violations;
    if (!verify_feasible(inst, r.solution).feasible) ++violations;
  }
  report(3, certified >= 20 && violations == 0,
         "shared-edge bound: " + std::to_string(certified) +
             " certified dense instances, " + std::to_string(violations) +
             " violations");
}

void criterion_mixing() {
  int violations = 0, edges_checked = 0;
  for (int i = 0; i < 20; ++i) {
    Prepared p = prepare(thin_heavy_instance(i));
    std::vector<EdgeId> q = qualifying_edges(p.inst, p.dags, p.profile);
    FractionalSolution lp = solve_restricted_lp(p.inst, p.dags, p.profile);
    FractionalSolution uniform =
        uniform_extension_solution(p.inst, p.dags, p.profile);
    FractionalSolution mixed =
        mix_solutions(lp, uniform, p.inst, p.dags, p.profile);
    std::vector<double> lp_savings =
        restricted_edge_savings(p.inst, p.dags, lp, q);
    std::vector<double> mixed_savings =
        restricted_edge_savings(p.inst, p.dags, mixed, q);
    double root_m = std::sqrt(static_cast<double>(p.inst.graph.num_edges()));
    for (std::size_t j = 0; j < q.size(); ++j) {
      ++edges_checked;
      if (mixed_savings[j] < 0.5 * lp_savings[j] - 1e-6) ++violations;
      if (mixed.edge_load[q[j]] < 1.0 / (2.0 * root_m) - 1e-9) ++violations;
    }
  }
  report(4, violations == 0 && edges_checked > 0,
         "fractional mixing: 20 instances, " + std::to_string(edges_checked) +
             " qualifying edges keep half the savings and the load floor, " +
             std::to_string(violations) + " violations");
}

void criterion_decomposition() {
  int violations = 0, instances = 0;
  for (int i = 0; i < 50; ++i) {
    Instance inst;
    if (i < 30) {
      inst = gen_grid(2 + (i % 3), 3 + (i % 3), 4 + (i % 7), 8800 + i);
      inst.epsilon = 0.2 + 0.1 * (i % 3);
    } else {
      inst = thin_heavy_instance(i);
    }
    Prepared p = prepare(std::move(inst));
    FractionalSolution lp = solve_restricted_lp(p.inst, p.dags, p.profile);
    FractionalSolution uniform =
        uniform_extension_solution(p.inst, p.dags, p.profile);
    FractionalSolution mixed =
        mix_solutions(lp, uniform, p.inst, p.dags, p.profile);
    ++instances;

    std::size_t total_paths = 0;
    for (std::size_t pp = 0; pp < p.dags.size(); ++pp) {
      std::vector<PathFlow> paths = path_decompose(p.dags[pp], mixed.arc_flow[pp]);
      total_paths += paths.size();
      double sum = 0.0;
      for (const PathFlow& pf : paths) sum += pf.weight;
      if (std::abs(sum - 1.0) > 1e-9) ++violations;
      for (EdgeId e : p.dags[pp].edge_ids) {
        double recomposed = 0.0;
        for (const PathFlow& pf : paths)
          for (EdgeId pe : pf.path.edges)
            if (pe == e) recomposed += pf.weight;
        if (std::abs(recomposed - edge_flow(p.dags[pp], mixed.arc_flow[pp], e)) >
            1e-6)
          ++violations;
      }
    }
    if (total_paths > p.inst.pairs.size() *
                          static_cast<std::size_t>(p.inst.graph.num_edges()))
      ++violations;
  }
  report(5, violations == 0 && instances == 50,
         "flow decomposition: 50 instances recompose within 1e-6, " +
             std::to_string(violations) + " violations");
}

void criterion_expectation() {
  int violations = 0;
  const int samples = 100'000;
  for (int i = 0; i < 10; ++i) {
    Prepared p = prepare(testsupport::padded_diamond_instance(10 + i, 0.25));
    Algorithm2Result r = run_algorithm2(p.inst, p.dags, p.profile, 1, 60 + i);
    SavingsExpectation ex =
        expected_savings(p.inst, r.qualifying, r.flow_paths);

    std::mt19937_64 rng(mix_seed(123456, static_cast<std::uint64_t>(i)));
    double sum = 0.0, sum_sq = 0.0;
    std::vector<int> count(p.inst.graph.num_edges(), 0);
    for (int it = 0; it < samples; ++it) {
      std::fill(count.begin(), count.end(), 0);
      for (std::size_t pp = 0; pp < p.dags.size(); ++pp) {
        const std::vector<PathFlow>& paths = r.flow_paths[pp];
        const PathFlow& pf = paths[sample_path_index(paths, uniform01(rng))];
        std::set<EdgeId> uniq(pf.path.edges.begin(), pf.path.edges.end());
        for (EdgeId e : uniq) ++count[e];
      }
      double value = 0.0;
      for (EdgeId e : r.qualifying)
        if (count[e] > 0)
          value += static_cast<double>(count[e] - 1) *
                   static_cast<double>(p.inst.graph.edge(e).weight);
      sum += value;
      sum_sq += value * value;
    }
    double mean = sum / samples;
    double variance = std::max(0.0, sum_sq / samples - mean * mean);
    double se = std::sqrt(variance / samples);
    if (std::abs(mean - ex.total) > 3.0 * se + 1e-9) ++violations;

    // proof floor: the expectation keeps a 1/(2 sqrt(m)) share of the
    // fractional savings
    std::vector<double> mixed_savings =
        restricted_edge_savings(p.inst, p.dags, r.mixed, r.qualifying);
    double fractional = 0.0;
    for (double s : mixed_savings) fractional += s;
    double root_m = std::sqrt(static_cast<double>(p.inst.graph.num_edges()));
    if (ex.total < fractional / (2.0 * root_m) - 1e-9) ++violations;
  }
  report(6, violations == 0,
         "sampling expectation: 10 instances within 3 standard errors of "
         "100000-sample means, " +
             std::to_string(violations) + " violations");
}

void criterion_union_bound() {
  std::mt19937_64 rng(777);
  int violations = 0;
  for (int it = 0; it < 10'000; ++it) {
    int k = 1 + static_cast<int>(rand_below(rng, 20));
    double sum = 0.0, miss = 1.0;
    for (int i = 0; i < k; ++i) {
      double x = uniform01(rng);
      sum += x;
      miss *= 1.0 - x;
    }
    if (sum - 1.0 + miss < -1e-12) ++violations;
  }
  report(7, violations == 0,
         "inclusion-exclusion floor: 10000 random vectors, " +
             std::to_string(violations) + " violations");
}

void criterion_reduction() {
  int checked = 0, violations = 0;
  for (int i = 0; checked < 25 && i < 100; ++i) {
    Instance inst =
        gen_random(false, 6 + (i % 3), 8 + (i % 4), 2 + (i % 3), 3, 9900 + i);
    OracleOptions opts;
    opts.combination_cap = 100'000;
    OracleResult before;
    try {
      before = brute_force_optimum(inst, opts);
    } catch (const PathExplosionError&) {
      continue;
    }
    ++checked;
    ReducedInstance reduced = undirected_to_directed(inst);
    if (reduced.instance.graph.num_nodes() !=
        inst.graph.num_nodes() + 2 * inst.graph.num_edges())
      ++violations;
    if (reduced.instance.graph.num_edges() != 5 * inst.graph.num_edges())
      ++violations;
    OracleResult after = brute_force_optimum(reduced.instance, opts);
    if (before.optimum != after.optimum) ++violations;
  }
  report(8, checked == 25 && violations == 0,
         "orientation gadget: " + std::to_string(checked) +
             " undirected instances keep their optimum, " +
             std::to_string(violations) + " violations");
}

void criterion_hardness() {
  int checked = 0, violations = 0;
  std::vector<MaxRepInstance> cases;
  cases.push_back({1, 1, {{0, 0}}});
  cases.push_back({1, 2, {{0, 0}, {1, 1}}});
  cases.push_back({2, 1, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}});
  for (int i = 0; static_cast<int>(cases.size()) < 15; ++i) {
    int k = 1 + (i % 2);
    int ps = 1 + (i % 3);
    cases.push_back(
        gen_maxrep_random(k, ps, 0.3 + 0.2 * (i % 3), 9600 + i));
  }
  for (const MaxRepInstance& mr : cases) {
    ++checked;
    auto [inst, layout] = generate_cspdp(mr);
    OracleResult oracle = brute_force_optimum(inst);
    MaxRepResult best = maxrep_brute_force(mr);
    if (oracle.optimum != static_cast<Weight>(best.covered)) ++violations;
    if (!check_path_structure(mr).holds) ++violations;
    CorrespondenceReport cr = verify_correspondence(mr, inst, oracle.solution);
    if (!cr.match || cr.covered != best.covered) ++violations;
  }
  report(9, checked == 15 && violations == 0,
         "coverage correspondence: 15 bipartite instances, " +
             std::to_string(violations) + " violations");
}

void criterion_lp_dominance() {
  int checked = 0, violations = 0;
  for (int i = 0; checked < 20 && i < 60; ++i) {
    Prepared p = prepare(thin_heavy_instance(i));
    std::vector<EdgeId> q = qualifying_edges(p.inst, p.dags, p.profile);
    double integral;
    try {
      integral = best_integral_restricted(p, q, 200'000);
    } catch (const PathExplosionError&) {
      continue;
    }
    ++checked;
    FractionalSolution lp = solve_restricted_lp(p.inst, p.dags, p.profile);
    if (lp.restricted_objective < integral - 1e-6) ++violations;
  }
  report(10, checked == 20 && violations == 0,
         "relaxation dominance: " + std::to_string(checked) +
             " instances, fractional optimum at least every integral "
             "selection, " +
             std::to_string(violations) + " violations");
}

void criterion_determinism(const std::string& bin,
                           const std::filesystem::path& dir) {
  if (bin.empty()) {
    report(11, false, "determinism: PRESERVER_BIN not set");
    return;
  }
  Instance inst = gen_random(true, 10, 20, 5, 6, 4242);
  std::filesystem::path instance_path = dir / "det.cspdp";
  write_instance(inst, instance_path.string());

  int violations = 0, runs = 0;
  for (const char* alg_name : {"oracle", "thick", "thin", "main"}) {
    std::string alg = alg_name;
    std::string reference;
    for (int repeat = 0; repeat < 10; ++repeat) {
      std::filesystem::path out = dir / ("det_" + alg + ".sol");
      int code = run_cli(bin, "solve --alg " + alg +
                                  " --epsilon 0.4 --trials 8 --seed 3 -o " +
                                  out.string() + " " + instance_path.string());
      ++runs;
      if (code != 0) {
        ++violations;
        continue;
      }
      std::string text = read_file(out);
      if (repeat == 0)
        reference = text;
      else if (text != reference)
        ++violations;
    }
  }
  report(11, violations == 0,
         "determinism: " + std::to_string(runs) +
             " repeated solves byte-identical per algorithm, " +
             std::to_string(violations) + " mismatches");
}

void criterion_scale(const std::string& bin,
                     const std::filesystem::path& dir) {
  if (bin.empty()) {
    report(12, false, "scale: PRESERVER_BIN not set");
    return;
  }
  Instance inst = gen_random(false, 200, 800, 40, 10, 777);
  std::filesystem::path instance_path = dir / "scale.cspdp";
  std::filesystem::path solution_path = dir / "scale.sol";
  write_instance(inst, instance_path.string());

  auto start = std::chrono::steady_clock::now();
  int code = run_cli(bin, "solve --alg main --epsilon 0.5 --trials 8 --seed 1 -o " +
                              solution_path.string() + " " +
                              instance_path.string());
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  bool feasible = false;
  if (code == 0) {
    SolutionFile file = parse_solution(solution_path.string(), inst);
    feasible = verify_feasible(inst, file.solution).feasible;
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << "scale: n=200 m=800 |P|=40 solve finished in " << seconds
       << "s (limit 60s), exit " << code
       << (feasible ? ", feasible" : ", infeasible");
  report(12, code == 0 && feasible && seconds < 60.0, line.str());
}

}  // namespace

int main() {
  const char* bin_env = std::getenv("PRESERVER_BIN");
  std::string bin = bin_env ? bin_env : "";
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "preserver_acceptance";
  std::filesystem::create_directories(dir);

  criterion_feasibility();
  criterion_oracle_dominance();
  criterion_thick_bound();
  criterion_mixing();
  criterion_decomposition();
  criterion_expectation();
  criterion_union_bound();
  criterion_reduction();
  criterion_hardness();
  criterion_lp_dominance();
  criterion_determinism(bin, dir);
  criterion_scale(bin, dir);

  std::filesystem::remove_all(dir);
  if (g_failures != 0)
    std::cout << g_failures << " criteria failed" << std::endl;
  return g_failures;
}
