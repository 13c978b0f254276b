#include <cstdint>

#include <benchmark/benchmark.h>

#include "gallmap/galls.hpp"
#include "gallmap/generator.hpp"
#include "gallmap/layout.hpp"
#include "gallmap/network.hpp"

namespace {

using namespace gallmap;

PhyloNetwork tree_input(std::int64_t n) {
  GenSpec spec;
  spec.node_budget = static_cast<std::uint32_t>(n);
  spec.gall_count = spec.node_budget / 50;
  spec.seed = 1;
  return generate(spec);
}

PhyloNetwork network_input(std::int64_t n) {
  GenSpec spec;
  spec.node_budget = static_cast<std::uint32_t>(n);
  spec.gall_count = spec.node_budget / 50;
  spec.share_probability = 0.9;
  spec.seed = 2;
  return generate(spec);
}

void bench_locate_galls(benchmark::State& state) {
  const PhyloNetwork net = network_input(state.range(0));
  for (auto _ : state) {
    LocateResult res = locate_galls(net);
    benchmark::DoNotOptimize(res);
  }
  state.SetComplexityN(state.range(0));
}

void bench_layout_galled_tree(benchmark::State& state) {
  const PhyloNetwork net = tree_input(state.range(0));
  const GallSet galls = *locate_galls(net).galls;
  for (auto _ : state) {
    DagMapLayout doc = layout_galled_tree(net, galls, {0, 0, 1000, 1000});
    benchmark::DoNotOptimize(doc);
  }
  state.SetComplexityN(state.range(0));
}

void bench_layout_galled_network(benchmark::State& state) {
  const PhyloNetwork net = network_input(state.range(0));
  const GallSet galls = *locate_galls(net).galls;
  for (auto _ : state) {
    DagMapLayout doc = layout_galled_network(net, galls, {0, 0, 1000, 1000});
    benchmark::DoNotOptimize(doc);
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(bench_locate_galls)
    ->RangeMultiplier(10)
    ->Range(1000, 100000)
    ->Complexity(benchmark::oN);
BENCHMARK(bench_layout_galled_tree)
    ->RangeMultiplier(10)
    ->Range(1000, 100000)
    ->Complexity(benchmark::oN);
BENCHMARK(bench_layout_galled_network)
    ->RangeMultiplier(10)
    ->Range(1000, 100000)
    ->Complexity(benchmark::oN);

BENCHMARK_MAIN();
