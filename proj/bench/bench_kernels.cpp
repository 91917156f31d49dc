#include <benchmark/benchmark.h>
#include <omp.h>

#include "hm/lfunc.hpp"
#include "hm/moments.hpp"

using namespace hm;

namespace {

const SideWeights& side(double X) {
  static const SideWeights a = side_weights(2000, TestFunction::bump(1, 2));
  static const SideWeights b = side_weights(8000, TestFunction::bump(1, 2));
  return X < 5000 ? a : b;
}

void BM_CharSumSerial(benchmark::State& state) {
  const SideWeights& w = side(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(char_sum_kernel_serial(w, w));
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(w.elements.size() * w.elements.size()));
}

void BM_CharSumParallel(benchmark::State& state) {
  const SideWeights& w = side(static_cast<double>(state.range(0)));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(char_sum_kernel_parallel(w, w));
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(w.elements.size() * w.elements.size()));
}

std::vector<CharSpec> batch_specs() {
  std::vector<CharSpec> specs;
  for (const Primary& c : squarefree_primaries(400)) {
    const CharSpec s = induced_primitive(c, Psi::One);
    if (!s.is_trivial()) specs.push_back(s);
  }
  return specs;
}

void BM_LBatchSerial(benchmark::State& state) {
  const auto specs = batch_specs();
  for (auto _ : state)
    for (const CharSpec& s : specs) benchmark::DoNotOptimize(l_afe(s, 0.5));
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(specs.size()));
}

void BM_LBatchParallel(benchmark::State& state) {
  const auto specs = batch_specs();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(l_values(specs, 0.5, nullptr));
  state.SetItemsProcessed(state.iterations() * static_cast<i64>(specs.size()));
}

}  // namespace

BENCHMARK(BM_CharSumSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharSumParallel)->Args({2000, 1})->Args({2000, 4})->Args({8000, 1})->Args({8000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LBatchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LBatchParallel)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
