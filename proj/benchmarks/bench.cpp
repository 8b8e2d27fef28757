#include <benchmark/benchmark.h>

#include "pspin/hset.hpp"
#include "pspin/kernels.hpp"
#include "pspin/oracle.hpp"
#include "pspin/solver.hpp"

namespace {

pspin::Mixture heavy() { return pspin::Mixture::make({4, 28, 84}, {0.88, 0.1118}, true); }

void BM_kernel_h(benchmark::State& state) {
  const pspin::Mixture m = heavy();
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pspin::h(m, 0.2, 0.8, z));
    z += 1e-9;  // defeat value caching across iterations
  }
}
BENCHMARK(BM_kernel_h);

void BM_kernel_h_near_one(benchmark::State& state) {
  const pspin::Mixture m = heavy();
  double z = 1.0 - 5e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pspin::h(m, 0.2, 0.8, z));
    z += 1e-12;
  }
}
BENCHMARK(BM_kernel_h_near_one);

void BM_chain_profile(benchmark::State& state) {
  const pspin::Mixture m = heavy();
  const pspin::Chain chain{0.0, 0.9345, 0.975, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(pspin::chain_profile(m, chain));
}
BENCHMARK(BM_chain_profile);

void BM_condition_kappa(benchmark::State& state) {
  const pspin::Mixture m = heavy();
  const pspin::Chain chain{0.0, 0.9345, 0.975, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(pspin::condition_kappa(m, chain));
}
BENCHMARK(BM_condition_kappa);

void BM_solve_rsb1_pure3(benchmark::State& state) {
  const pspin::Mixture m = pspin::Mixture::make({3}, {1.0});
  for (auto _ : state) benchmark::DoNotOptimize(pspin::solve_rsb(m, 1));
}
BENCHMARK(BM_solve_rsb1_pure3);

void BM_solve_rsb3(benchmark::State& state) {
  const pspin::Mixture m = heavy();
  for (auto _ : state) benchmark::DoNotOptimize(pspin::solve_rsb(m, 3));
}
BENCHMARK(BM_solve_rsb3)->Unit(benchmark::kMillisecond);

void BM_oracle_pure3(benchmark::State& state) {
  const pspin::Mixture m = pspin::Mixture::make({3}, {1.0});
  pspin::OracleOptions o;
  o.N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pspin::minimize_cs(m, o));
}
BENCHMARK(BM_oracle_pure3)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
