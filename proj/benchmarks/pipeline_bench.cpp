#include <benchmark/benchmark.h>

#include "preserver/generate.hpp"
#include "preserver/local_graph.hpp"
#include "preserver/lp_thin.hpp"
#include "preserver/main_algo.hpp"
#include "preserver/oracle.hpp"
#include "preserver/thick_dp.hpp"

namespace {

preserver::Instance sized_instance(int scale) {
  // scale 1: 30/90, 2: 60/200, 3: 120/420, 4: 200/800
  static const int nodes[] = {30, 60, 120, 200};
  static const int edges[] = {90, 200, 420, 800};
  static const int pairs[] = {8, 12, 24, 40};
  return preserver::gen_random(true, nodes[scale - 1], edges[scale - 1],
                               pairs[scale - 1], 10, 1234 + scale);
}

void bm_local_graphs(benchmark::State& state) {
  preserver::Instance instance = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto dags =
        preserver::build_local_graphs(instance.graph, instance.pairs);
    benchmark::DoNotOptimize(dags);
  }
}
BENCHMARK(bm_local_graphs)->DenseRange(1, 4);

void bm_dense_candidate(benchmark::State& state) {
  preserver::Instance instance = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = preserver::run_algorithm1(instance);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_dense_candidate)->DenseRange(1, 4);

void bm_rounded_candidate(benchmark::State& state) {
  preserver::Instance instance = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = preserver::run_algorithm2(instance, 8, 99);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_rounded_candidate)->DenseRange(1, 3);

void bm_full_pipeline(benchmark::State& state) {
  preserver::Instance instance = sized_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = preserver::run_main(instance, 8, 99);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_full_pipeline)->DenseRange(1, 3);

void bm_oracle_small(benchmark::State& state) {
  preserver::Instance instance =
      preserver::gen_random(true, 12, 30, 4, 6, 7);
  for (auto _ : state) {
    auto result = preserver::brute_force_optimum(instance);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(bm_oracle_small);

}  // namespace

BENCHMARK_MAIN();
