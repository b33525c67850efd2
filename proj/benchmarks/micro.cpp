#include <benchmark/benchmark.h>

#include <thread>

#include "cspp/bench/mandelbrot.hpp"
#include "cspp/bench/montecarlo.hpp"
#include "cspp/bench/wire_types.hpp"
#include "cspp/cluster/wire.hpp"
#include "cspp/kernel/channel.hpp"
#include "cspp/verify/catalogue.hpp"
#include "cspp/verify/explorer.hpp"

namespace {

// Round trip cost of one unbuffered transfer between two threads.
void BM_Rendezvous(benchmark::State& state) {
  auto ch = cspp::channel_new<int>(cspp::ChannelKind::one2one);
  std::jthread reader([in = ch.in]() mutable {
    while (in.read() >= 0) {
    }
  });
  int i = 0;
  for (auto _ : state) ch.out.write(i++);
  ch.out.write(-1);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Rendezvous)->UseRealTime();

void BM_MonteCarloFarm(benchmark::State& state) {
  cspp::bench::MonteCarloConfig c;
  c.instances = 256;
  c.iterations = 1000;
  c.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cspp::bench::montecarlo_run(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.instances));
}
BENCHMARK(BM_MonteCarloFarm)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_MandelbrotFarm(benchmark::State& state) {
  cspp::bench::MandelbrotConfig c;
  c.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cspp::bench::mandelbrot_run(c));
}
BENCHMARK(BM_MandelbrotFarm)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ExploreFarm(benchmark::State& state) {
  const auto model = cspp::verify::farm_model(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cspp::verify::explore(model));
}
BENCHMARK(BM_ExploreFarm)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_GopPogEquivalence(benchmark::State& state) {
  const auto gop = cspp::verify::gop_model(2);
  const auto pog = cspp::verify::pog_model(3);
  const auto hide = cspp::verify::all_channels(gop);
  for (auto _ : state) benchmark::DoNotOptimize(cspp::verify::trace_equivalent(gop, pog, hide));
}
BENCHMARK(BM_GopPogEquivalence)->Unit(benchmark::kMillisecond);

void BM_FrameRoundTrip(benchmark::State& state) {
  const auto& types = cspp::bench::demo_types();
  cspp::bench::MandelbrotLine line;
  line.width = 350;
  line.height = 200;
  line.pixel_delta = 0.01;
  line.centre_x = -0.5;
  line.rgb.assign(350 * 3, 17);
  const cspp::Message m = cspp::Data{cspp::Payload(line), "line-1"};
  for (auto _ : state) {
    auto body = cspp::cluster::encode(m, types);
    benchmark::DoNotOptimize(cspp::cluster::decode(body, types));
  }
}
BENCHMARK(BM_FrameRoundTrip)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
