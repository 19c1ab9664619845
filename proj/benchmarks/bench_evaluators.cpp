// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "nlev/evaluator.hpp"
#include "nlev/factored.hpp"
#include "nlev/oracle.hpp"

using namespace nlev;
using C = std::complex<double>;

namespace {

const ExtendedPolynomial kQ(4, std::vector<C>{0.0, -1.0});

void BM_squared_wronskian(benchmark::State& state) {
  const auto f = squared_evaluator(kQ, 2.0);
  const C z(1.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(f(z));
}
BENCHMARK(BM_squared_wronskian);

void BM_factored_wronskian(benchmark::State& state) {
  const C z(1.6, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(wronskian_factored(kQ, z));
}
BENCHMARK(BM_factored_wronskian);

void BM_fd_indicator(benchmark::State& state) {
  const FDGrid grid = fd_grid_for(kQ, 2.0, static_cast<int>(state.range(0)));
  const C z(1.3, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(fd_indicator(kQ, z, grid));
}
BENCHMARK(BM_fd_indicator)->Arg(400)->Arg(1600);

}  // namespace

BENCHMARK_MAIN();
