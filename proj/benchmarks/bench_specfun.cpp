#include <benchmark/benchmark.h>

#include "rateless/analytics.hpp"
#include "rateless/specfun.hpp"

namespace {

void BM_Hyp2f1Neg(benchmark::State& state) {
  const rateless::Delta delta(2.0 / 3.0);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rateless::hyp2f1_neg_delta(delta, x));
}
BENCHMARK(BM_Hyp2f1Neg)->Arg(1)->Arg(1000)->Arg(1'000'000'000);

void BM_Hyp2f1Pos(benchmark::State& state) {
  const rateless::Delta delta(2.0 / 3.0);
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rateless::hyp2f1_pos_delta(delta, x));
}
BENCHMARK(BM_Hyp2f1Pos)->Arg(1)->Arg(1000)->Arg(1'000'000'000);

void BM_Mu(benchmark::State& state) {
  const rateless::CodingParams params{75.0, 60, 3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(rateless::mean_interferer_time_mu(params));
}
BENCHMARK(BM_Mu)->Unit(benchmark::kMillisecond);

void BM_GainsReport(benchmark::State& state) {
  const rateless::CodingParams params{75.0, 60, 3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(rateless::gains_report(params));
}
BENCHMARK(BM_GainsReport)->Unit(benchmark::kMillisecond);

}  // namespace
