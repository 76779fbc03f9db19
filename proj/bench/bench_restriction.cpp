#include <benchmark/benchmark.h>

#include "divsub/cycles.hpp"
#include "divsub/generators.hpp"
#include "divsub/kernels.hpp"

using namespace divsub;

namespace {

MinorPtr instance(std::int64_t f) {
  GenSpec spec;
  spec.shape = Shape::BlownupClique;
  spec.f = static_cast<std::uint32_t>(f);
  spec.group = "Z_6";
  spec.weights = WeightMode::Random;
  spec.seed = 1;
  return reduce(gen_minor(spec)).first;
}

void BM_GeneratorsSerial(benchmark::State& state) {
  auto g = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(restriction_generators_serial(*g));
}

void BM_GeneratorsParallel(benchmark::State& state) {
  auto g = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(restriction_generators_parallel(*g));
}

// Full small-cycle enumeration, the slow reference the kernels replace.
void BM_Enumerative(benchmark::State& state) {
  auto g = instance(state.range(0));
  auto whole = Subgroup::whole(g->group_ptr());
  for (auto _ : state) benchmark::DoNotOptimize(verify_restricted_enumerative(*g, whole, 1u << 30));
}

}  // namespace

BENCHMARK(BM_GeneratorsSerial)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_GeneratorsParallel)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(BM_Enumerative)->DenseRange(8, 20, 4);

BENCHMARK_MAIN();
