#include <benchmark/benchmark.h>

#include "prpairs/arith.hpp"
#include "prpairs/experiments.hpp"
#include "prpairs/forms.hpp"
#include "prpairs/multfunc.hpp"
#include "prpairs/parallel.hpp"

using namespace prp;

static void BM_FactorizeWord(benchmark::State& state) {
  u128 n = 1000003ull * 998244353ull;
  for (auto _ : state) benchmark::DoNotOptimize(factorize_word(n));
}
BENCHMARK(BM_FactorizeWord);

static void BM_FactorizeBig(benchmark::State& state) {
  BigInt n = BigInt(1000003) * 1000033 * BigInt(998244353) * 998244353;
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_FactorizeBig);

static void BM_OmegaComposite(benchmark::State& state) {
  BinaryQuadraticForm P(3, -7, 11);
  for (auto _ : state) benchmark::DoNotOptimize(omega(P, static_cast<u64>(state.range(0))));
}
BENCHMARK(BM_OmegaComposite)->Arg(9699690)->Arg(1000037ull * 1000033ull);

static void BM_LiouvilleTable(benchmark::State& state) {
  auto f = liouville();
  for (auto _ : state) {
    FunctionEvaluator ev(f, static_cast<u128>(state.range(0)));
    benchmark::DoNotOptimize(ev(state.range(0) - 1));
  }
}
BENCHMARK(BM_LiouvilleTable)->Arg(1'000'000)->Arg(8'000'000)->Unit(benchmark::kMillisecond);

static void BM_LDeltaGrid(benchmark::State& state) {
  set_thread_count(0);
  BinaryQuadraticForm P1(1, 0, 2), P2(0, 2, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(L_delta(liouville(), P1, P2, 0.3, 1, 1, 0, static_cast<u64>(state.range(0)), 1.0));
}
BENCHMARK(BM_LDeltaGrid)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
