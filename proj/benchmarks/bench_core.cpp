#include <benchmark/benchmark.h>

#include "gasket/bases.hpp"
#include "gasket/expansions.hpp"
#include "gasket/geometry.hpp"
#include "gasket/matching.hpp"
#include "gasket/spectrum.hpp"

namespace {

using namespace gasket;

void BM_Eps(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eps(n));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_Eps)->DenseRange(8, 20, 4);

void BM_BaseRoot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(base_root(n));
}
BENCHMARK(BM_BaseRoot)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

void BM_KlConstant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kl_constant(1e-12));
}
BENCHMARK(BM_KlConstant)->Unit(benchmark::kMillisecond);

void BM_UniquenessCheck(benchmark::State& state) {
  UniquenessOracle oracle(BaseValue::parse("2.6"));
  const TernarySeq s = eps_pair_tail(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle.check(s));
}
BENCHMARK(BM_UniquenessCheck)->DenseRange(1, 7, 2);

void BM_SelfShiftVerifier(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma_3_1(n));
}
BENCHMARK(BM_SelfShiftVerifier)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_BlockWitnessVerifier(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma_3_2(n, BlockVariant::kMinus));
}
BENCHMARK(BM_BlockWitnessVerifier)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_Intersection(benchmark::State& state) {
  const BaseValue q = BaseValue::parse("2.5");
  const PairSeq t = e_seq(1, 1, 2);
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_intersection(q, t, depth));
}
BENCHMARK(BM_Intersection)->DenseRange(4, 12, 4);

void BM_SpectrumOf(benchmark::State& state) {
  const std::array<const char*, 3> bases{"2.2", "2.45", "2.75"};
  const BaseValue q = BaseValue::parse(bases[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_of(q));
}
BENCHMARK(BM_SpectrumOf)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
