#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "preserver/graph.hpp"
#include "preserver/types.hpp"

namespace preserver {

// One (instance, algorithm) measurement. Errors are captured per row so a
// batch never aborts; `ok` false leaves the numeric fields at defaults.
struct BenchRow {
  std::string instance;
  NodeId nodes = 0;
  EdgeId edges = 0;
  int pairs = 0;
  double epsilon = 0.5;
  std::string algorithm;
  bool ok = false;
  std::string error;
  bool feasible = false;
  Weight objective = 0;
  bool oracle_available = false;
  Weight oracle_objective = 0;
  double ratio = 0.0;          // oracle / objective, when both are positive
  double target_dense = 0.0;   // oracle / m^(1/2 + 2 eps)
  double target_main = 0.0;    // shrunk further by the per-round loss factor
  double wall_seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // instances x algorithms, input order
};

// Runs every algorithm on every instance. `algorithms` entries are
// "oracle", "thick", "thin" or "main"; unknown names produce error rows.
// The oracle result (when requested and attainable) seeds the ratio and
// target columns of the other rows for the same instance.
BenchReport run_bench(const std::vector<std::pair<std::string, Instance>>& instances,
                      const std::vector<std::string>& algorithms,
                      int trials, std::uint64_t seed,
                      std::uint64_t oracle_cap);

// Line-delimited JSON, one row per line, stable field order.
std::string bench_report_jsonl(const BenchReport& report);

}  // namespace preserver
