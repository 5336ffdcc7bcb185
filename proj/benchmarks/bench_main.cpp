// Microbenchmarks for the hot paths: local-factor expansion, multiplicative
// series assembly, Dirichlet convolution, sieve weights, and bilinear sums.
// Run manually: build/benchmarks/symsieve_bench [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include <cstdint>

#include "symsieve/dirichlet.hpp"
#include "symsieve/ingest.hpp"
#include "symsieve/primes.hpp"
#include "symsieve/satake.hpp"
#include "symsieve/sieve.hpp"
#include "symsieve/sympower.hpp"

namespace {

using namespace symsieve;

const SatakeData& fixture_form(uint64_t p_max) {
  static const SatakeData small =
      synthesize_form(3, 20000, SynthProfile::unitary);
  static const SatakeData large =
      synthesize_form(3, 200000, SynthProfile::unitary);
  return p_max <= 20000 ? small : large;
}

void BM_PrimeSieve(benchmark::State& state) {
  const uint64_t limit = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(limit));
  state.SetComplexityN(limit);
}
BENCHMARK(BM_PrimeSieve)->Arg(100000)->Arg(1000000)->Complexity();

void BM_RankinLocal(benchmark::State& state) {
  const SatakeData& d = fixture_form(20000);
  const int deg = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(rankin_local({2, d}, 2, deg));
}
BENCHMARK(BM_RankinLocal)->Arg(20)->Arg(40)->Arg(80);

void BM_SymSeries(benchmark::State& state) {
  const uint64_t n = state.range(0);
  const SatakeData& d = fixture_form(n);
  for (auto _ : state) benchmark::DoNotOptimize(sym_series({2, d}, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SymSeries)->Arg(10000)->Arg(100000)->Complexity();

void BM_RankinSeries(benchmark::State& state) {
  const uint64_t n = state.range(0);
  const SatakeData& d = fixture_form(n);
  for (auto _ : state) benchmark::DoNotOptimize(rankin_series({2, d}, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_RankinSeries)->Arg(10000)->Arg(100000)->Complexity();

void BM_Convolve(benchmark::State& state) {
  const uint64_t n = state.range(0);
  const CoeffSeries z = zeta_series(n);
  const CoeffSeries mu = mobius_series(n);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(z, mu));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Convolve)->Arg(10000)->Arg(100000)->Complexity();

void BM_SieveWeights(benchmark::State& state) {
  const SatakeData& d = fixture_form(20000);
  const double R = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_weights(d, R));
}
BENCHMARK(BM_SieveWeights)->Arg(30)->Arg(100)->Arg(300);

void BM_BilinearSum(benchmark::State& state) {
  const uint64_t N = state.range(0);
  const SatakeData& d = fixture_form(N);
  const CoeffSeries rk = rankin_series({2, d}, N);
  const SieveLocals locals(d, 10);
  for (auto _ : state)
    benchmark::DoNotOptimize(bilinear_sum(rk, locals, N, 2, 3));
  state.SetComplexityN(N);
}
BENCHMARK(BM_BilinearSum)->Arg(10000)->Arg(100000)->Complexity();

void BM_LocalSieveData(benchmark::State& state) {
  const SatakeData& d = fixture_form(20000);
  const uint64_t p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(local_sieve_data(d, p));
}
BENCHMARK(BM_LocalSieveData)->Arg(2)->Arg(97)->Arg(7919);

void BM_Mollifier(benchmark::State& state) {
  const double v = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_mollifier(v, 0.5, 2));
}
BENCHMARK(BM_Mollifier)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
