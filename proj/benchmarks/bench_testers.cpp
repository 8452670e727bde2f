// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "binrank/generators.hpp"
#include "binrank/oracle.hpp"
#include "binrank/testers.hpp"

namespace {

using namespace binrank;

TesterConfig cfg_for(unsigned d, double eps, std::uint64_t seed, unsigned s = 1) {
  TesterConfig c;
  c.d = d;
  c.s = s;
  c.epsilon = eps;
  c.seed = seed;
  return c;
}

// Far lift instances: reports mean queries per run as a counter.
template <TesterReport (*Tester)(MatrixOracle&, const TesterConfig&)>
void BM_FarLift(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const Index rows = Index{1} << (d + 1);
  const Index cols = d + 2;
  const auto inst = gen_far(256 / rows * rows, 256 / cols * cols, d, 1, 0.08, 5, FarStrategy::Lift);
  std::uint64_t seed = 0;
  double queries = 0;
  for (auto _ : state) {
    MatrixOracle o(inst.matrix);
    queries += static_cast<double>(Tester(o, cfg_for(d, 0.08, seed++)).queries);
  }
  state.counters["queries"] = benchmark::Counter(queries, benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_FarLift<adaptive_test>)->DenseRange(1, 4);
BENCHMARK(BM_FarLift<baseline_parnas_test>)->DenseRange(1, 4);

void BM_AdaptiveAccept(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  // s = d so overlapping random rectangles never need a redraw.
  const auto inst = gen_rank_le(200, 200, d, d, 11, 0.2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MatrixOracle o(inst.matrix);
    benchmark::DoNotOptimize(adaptive_test(o, cfg_for(d, 0.1, seed++, d)));
  }
}
BENCHMARK(BM_AdaptiveAccept)->DenseRange(1, 3);

void BM_NonAdaptive(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto inst = gen_rank_le(200, 200, d, d, 12, 0.2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MatrixOracle o(inst.matrix);
    benchmark::DoNotOptimize(nonadaptive_test(o, cfg_for(d, 0.5, seed++, d)));
  }
}
BENCHMARK(BM_NonAdaptive)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
