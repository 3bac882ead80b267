#include <benchmark/benchmark.h>

#include "twocat/fuzz.hpp"
#include "twocat/shapes.hpp"

using namespace twocat;

namespace {

// Equalizing I against each finite J, with a twisted representable and a
// constant summand.
BiIndexedPseudoFunctor instance(int j) {
  auto eq = shapes::equalizing();
  auto right = shapes::finite_library()[static_cast<std::size_t>(j)];
  return make_biindexed(
      eq, right, sum_of_representables(eq, right, {{0, 0, shapes::walking_iso(), true}, {std::nullopt, 0, shapes::z2()}}));
}

void BM_build_2colim(benchmark::State& state) {
  const BiIndexedPseudoFunctor a = instance(static_cast<int>(state.range(0)));
  const PseudoFunctor col = slice_at_right(a, 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_2colim(col).num_objects());
}
BENCHMARK(BM_build_2colim)->DenseRange(0, 3);

void BM_build_2lim(benchmark::State& state) {
  const BiIndexedPseudoFunctor a = instance(static_cast<int>(state.range(0)));
  const PseudoFunctor row = slice_at_left(a, 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_2lim(row).num_objects());
}
BENCHMARK(BM_build_2lim)->DenseRange(0, 3);

void BM_check_equivalence(benchmark::State& state) {
  const BiIndexedPseudoFunctor a = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_equivalence(a).verdict);
}
BENCHMARK(BM_check_equivalence)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_fuzz(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fuzz(static_cast<int>(state.range(0)), 7).passed);
}
BENCHMARK(BM_fuzz)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
