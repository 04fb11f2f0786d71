#include "preserver/bench.hpp"

#include <chrono>
#include <cmath>

#include "json.hpp"
#include "preserver/errors.hpp"
#include "preserver/main_algo.hpp"
#include "preserver/lp_thin.hpp"
#include "preserver/oracle.hpp"
#include "preserver/thick_dp.hpp"

namespace preserver {

namespace {

PreserverSolution run_algorithm(const std::string& algorithm,
                                const Instance& instance, int trials,
                                std::uint64_t seed, std::uint64_t oracle_cap) {
  if (algorithm == "oracle") {
    OracleOptions opts;
    opts.combination_cap = oracle_cap;
    return brute_force_optimum(instance, opts).solution;
  }
  if (algorithm == "thick") return run_algorithm1(instance).solution;
  if (algorithm == "thin") return run_algorithm2(instance, trials, seed).solution;
  if (algorithm == "main") return run_main(instance, trials, seed).solution;
  throw ValidationError("unknown algorithm \"" + algorithm + "\"");
}

}  // namespace

BenchReport run_bench(
    const std::vector<std::pair<std::string, Instance>>& instances,
    const std::vector<std::string>& algorithms, int trials,
    std::uint64_t seed, std::uint64_t oracle_cap) {
  BenchReport report;
  for (const auto& [name, instance] : instances) {
    // The oracle row feeds the ratio/target columns of its siblings, so it
    // runs up front regardless of its position in the list.
    bool oracle_available = false;
    Weight oracle_objective = 0;
    bool oracle_requested = false;
    for (const std::string& algorithm : algorithms)
      oracle_requested |= algorithm == "oracle";
    std::string oracle_error;
    double oracle_seconds = 0.0;
    PreserverSolution oracle_solution;
    if (oracle_requested) {
      auto start = std::chrono::steady_clock::now();
      try {
        OracleOptions opts;
        opts.combination_cap = oracle_cap;
        oracle_solution = brute_force_optimum(instance, opts).solution;
        oracle_objective = oracle_solution.objective;
        oracle_available = true;
      } catch (const Error& err) {
        oracle_error = err.what();
      }
      oracle_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }

    for (const std::string& algorithm : algorithms) {
      BenchRow row;
      row.instance = name;
      row.nodes = instance.graph.num_nodes();
      row.edges = instance.graph.num_edges();
      row.pairs = static_cast<int>(instance.pairs.size());
      row.epsilon = instance.epsilon;
      row.algorithm = algorithm;

      if (algorithm == "oracle") {
        row.wall_seconds = oracle_seconds;
        if (oracle_available) {
          row.ok = true;
          row.objective = oracle_objective;
          row.feasible = verify_feasible(instance, oracle_solution).feasible;
        } else {
          row.error = oracle_error;
          report.rows.push_back(std::move(row));
          continue;
        }
      } else {
        auto start = std::chrono::steady_clock::now();
        try {
          PreserverSolution solution =
              run_algorithm(algorithm, instance, trials, seed, oracle_cap);
          row.ok = true;
          row.objective = solution.objective;
          row.feasible = verify_feasible(instance, solution).feasible;
        } catch (const Error& err) {
          row.error = err.what();
        }
        row.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      }

      if (oracle_available && row.ok) {
        row.oracle_available = true;
        row.oracle_objective = oracle_objective;
        if (row.objective > 0)
          row.ratio = static_cast<double>(oracle_objective) /
                      static_cast<double>(row.objective);
        double m = static_cast<double>(instance.graph.num_edges());
        if (m > 0) {
          double dense_scale = std::pow(m, 0.5 + 2.0 * instance.epsilon);
          row.target_dense =
              static_cast<double>(oracle_objective) / dense_scale;
          int rounds =
              static_cast<int>(std::ceil(2.0 / instance.epsilon)) + 1;
          double keep =
              std::pow(1.0 - std::pow(m, -instance.epsilon), rounds);
          row.target_main = keep * static_cast<double>(oracle_objective) /
                            (4.0 * dense_scale);
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string bench_report_jsonl(const BenchReport& report) {
  std::string out;
  for (const BenchRow& row : report.rows) {
    nlohmann::ordered_json record{
        {"instance", row.instance},
        {"n", row.nodes},
        {"m", row.edges},
        {"pairs", row.pairs},
        {"epsilon", row.epsilon},
        {"algorithm", row.algorithm},
        {"ok", row.ok},
        {"error", row.error},
        {"feasible", row.feasible},
        {"objective", row.objective},
        {"oracle", row.oracle_available ? nlohmann::ordered_json(row.oracle_objective)
                                        : nlohmann::ordered_json(nullptr)},
        {"ratio", row.ratio},
        {"target_dense", row.target_dense},
        {"target_main", row.target_main},
        {"seconds", row.wall_seconds},
    };
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace preserver
