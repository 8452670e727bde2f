// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "binrank/combinatorics.hpp"
#include "binrank/generators.hpp"
#include "binrank/solver.hpp"

namespace {

using namespace binrank;

void BM_DecideTightBlowup(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto s = static_cast<unsigned>(state.range(1));
  const auto base = tight_instance(d, std::min(s, d));
  const auto m = blowup(base, 4 * base.rows(), 4 * base.cols(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(decide_rank_le(m, d, s));
}
BENCHMARK(BM_DecideTightBlowup)->ArgsProduct({{1, 2, 3, 4}, {1, 2}});

void BM_ExactRankRandom(benchmark::State& state) {
  const auto k = static_cast<Index>(state.range(0));
  const auto m = random_matrix(k, k, 0.5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(exact_rank(m, 1));
}
BENCHMARK(BM_ExactRankRandom)->DenseRange(3, 6);

void BM_DecideRankLeGenerated(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto inst = gen_rank_le(64, 64, d, 1, 3, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(decide_rank_le(inst.matrix, d, 1));
}
BENCHMARK(BM_DecideRankLeGenerated)->DenseRange(1, 4);

}  // namespace
