#include <vector>

#include <benchmark/benchmark.h>

#include "mtnav/mtnav.hpp"

namespace {

using namespace mtnav;

const Pose kDrone{0.0, 0.0, 1.0, 0.3};
const std::vector<Marker> kMarkers{{{0.2, -0.1}, 0.1, Color::Pink}, {{-0.3, 0.4}, 0.15, Color::Blue}};

void BM_Render(benchmark::State& state) {
  const FrameSpec frame;
  for (auto _ : state) benchmark::DoNotOptimize(render(kDrone, kMarkers, frame));
}
BENCHMARK(BM_Render);

void BM_Detect(benchmark::State& state) {
  const Frame f = render(kDrone, kMarkers, FrameSpec{});
  for (auto _ : state) benchmark::DoNotOptimize(detect(f, Color::Pink));
}
BENCHMARK(BM_Detect);

void BM_DetectEmpty(benchmark::State& state) {
  const Frame f(FrameSpec{});
  for (auto _ : state) benchmark::DoNotOptimize(detect(f, Color::Pink));
}
BENCHMARK(BM_DetectEmpty);

void BM_ComputeCommand(benchmark::State& state) {
  const ControllerGains g;
  PixelError e{80.0, 20.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(e);
    benchmark::DoNotOptimize(compute_command(e, g));
  }
}
BENCHMARK(BM_ComputeCommand);

void BM_MissionRun(benchmark::State& state) {
  const auto kind = static_cast<MissionKind>(state.range(0));
  const Campaign c = default_campaign(kind);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(c.spec, make_world(c.world, c.config, seed++), c.config));
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_MissionRun)
    ->Arg(static_cast<int>(MissionKind::ForwardSearchHover))
    ->Arg(static_cast<int>(MissionKind::SearchReturnLand))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
