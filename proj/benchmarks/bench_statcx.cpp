#include <benchmark/benchmark.h>

#include <vector>

#include "statcx/complexity.hpp"
#include "statcx/optimizer.hpp"
#include "statcx/sigproc.hpp"

using namespace statcx;

namespace {

ComplexityKind kind_at(const benchmark::State& state) { return kAllKinds[state.range(0)]; }

void BM_FamilyEval(benchmark::State& state) {
  const auto kind = kind_at(state);
  double omega = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(family_eval(kind, FamilyPoint::continuous(1024, omega, 0.7)).c);
    omega = omega < 0.9 ? omega + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_FamilyEval)->DenseRange(0, 2);

void BM_DirectComplexity(benchmark::State& state) {
  const auto kind = kind_at(state);
  const auto p = spike_family(FamilyPoint::integer(2048, 200, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(complexity(kind, p));
}
BENCHMARK(BM_DirectComplexity)->DenseRange(0, 2);

void BM_MaximizeFamily(benchmark::State& state) {
  const auto kind = kind_at(state);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_family(kind, 2048).c_star);
}
BENCHMARK(BM_MaximizeFamily)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SpectrumDistribution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto samples = synthesize(reference_config(3, 1));
  samples.resize(n);
  SpectrumAnalyzer analyzer(n);
  for (auto _ : state) benchmark::DoNotOptimize(analyzer(samples));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SpectrumDistribution)->RangeMultiplier(4)->Range(256, 16384);

void BM_ComplexitySeries(benchmark::State& state) {
  const auto samples = synthesize(reference_config(30, 2));
  SeriesOptions opts;
  opts.kind = kind_at(state);
  opts.threshold = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complexity_series(samples, ReferenceSetup::kSampleRate, opts).windows.size());
  }
}
BENCHMARK(BM_ComplexitySeries)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
