#include <benchmark/benchmark.h>

#include "rateless/geometry.hpp"
#include "rateless/netsim.hpp"
#include "rateless/random.hpp"

namespace {

using namespace rateless;

void BM_GenerateRealization(benchmark::State& state) {
  const Window window{static_cast<double>(state.range(0)), true};
  std::uint64_t r = 0;
  for (auto _ : state) {
    auto rng = make_rng(7, Stream::Geometry, {r++});
    benchmark::DoNotOptimize(NetworkRealization::generate(1.0, window, 3.0, rng));
  }
}
BENCHMARK(BM_GenerateRealization)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_RunTrial(benchmark::State& state) {
  const auto mode = static_cast<Mode>(state.range(0));
  auto rng = make_rng(7, Stream::Geometry, {0});
  const auto net = NetworkRealization::generate(1.0, Window{20.0, true}, 3.0, rng);
  auto fading_rng = make_rng(7, Stream::Fading, {0, 0});
  const auto fading = FadingDraw::sample(net.size(), fading_rng);
  const LinkBudget budget(net, fading);
  const CodingParams params{75.0, 200, 3.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(budget, params, mode));
  state.SetLabel(std::string(to_string(mode)));
}
BENCHMARK(BM_RunTrial)
    ->Arg(static_cast<int>(Mode::RatelessAck))
    ->Arg(static_cast<int>(Mode::FixedRate))
    ->Arg(static_cast<int>(Mode::Continuous))
    ->Unit(benchmark::kMicrosecond);

void BM_LinkBudget(benchmark::State& state) {
  auto rng = make_rng(7, Stream::Geometry, {0});
  const auto net = NetworkRealization::generate(1.0, Window{20.0, true}, 3.0, rng);
  auto fading_rng = make_rng(7, Stream::Fading, {0, 0});
  const auto fading = FadingDraw::sample(net.size(), fading_rng);
  for (auto _ : state) benchmark::DoNotOptimize(LinkBudget(net, fading));
}
BENCHMARK(BM_LinkBudget)->Unit(benchmark::kMicrosecond);

}  // namespace
