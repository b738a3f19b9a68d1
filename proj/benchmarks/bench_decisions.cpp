#include <benchmark/benchmark.h>

#include "d2d/downlink.hpp"
#include "d2d/simulator.hpp"
#include "d2d/uplink.hpp"

namespace {

using namespace d2d;

downlink::Config dl_config() {
  downlink::Config c;
  c.p_b_max = dbm_to_watts(46.0);
  c.target = OutageTarget{0.5, 0.1, 10.0};
  c.p_m = min_power_for_outage(c.target, 1e-6, c.noise_u);
  return c;
}

uplink::Config ul_config() {
  uplink::Config c;
  c.p_u_max = dbm_to_watts(24.0);
  c.target = OutageTarget{0.5, 0.1, 10.0};
  return c;
}

const downlink::FullCsi kDl{{pathloss_gain(250.0), 1.3}, {pathloss_gain(500.0), 0.7},
                            {1e-6, 0.9}, {pathloss_gain(750.0), 1.1}};
const uplink::FullCsi kUl{{pathloss_gain(500.0), 0.8}, {pathloss_gain(250.0), 1.2},
                          {1e-6, 0.9}, {pathloss_gain(5.0), 1.0}};

void BM_DownlinkFcsi(benchmark::State& state) {
  const auto cfg = dl_config();
  for (auto _ : state) benchmark::DoNotOptimize(downlink::decide_fcsi(kDl, cfg));
}
BENCHMARK(BM_DownlinkFcsi);

void BM_UplinkFcsi(benchmark::State& state) {
  const auto cfg = ul_config();
  for (auto _ : state) benchmark::DoNotOptimize(uplink::decide_fcsi(kUl, cfg));
}
BENCHMARK(BM_UplinkFcsi);

void BM_DownlinkPcsi(benchmark::State& state) {
  const auto cfg = dl_config();
  const auto samples = SortedExponentials::draw(static_cast<std::size_t>(state.range(0)), 1);
  const auto csi = downlink::partial_view(kDl);
  for (auto _ : state) benchmark::DoNotOptimize(downlink::decide_pcsi(csi, cfg, samples));
}
BENCHMARK(BM_DownlinkPcsi)->Arg(100'000)->Arg(1'000'000);

void BM_UplinkPowerSearch(benchmark::State& state) {
  const auto cfg = ul_config();
  const auto samples = FadingPairs::draw(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uplink::search_pcsi_power(MeanGain{1e-6}, MeanGain{pathloss_gain(5.0)}, cfg, samples));
  }
}
BENCHMARK(BM_UplinkPowerSearch)->Arg(100'000);

void BM_EstimatorU1Direct(benchmark::State& state) {
  const OutageTarget t{0.5, 0.1, 10.0};
  RandomStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_outage_u1(2.0, Snr(500.0), Snr(44.6), t, 100'000, rng));
  }
}
BENCHMARK(BM_EstimatorU1Direct);

void BM_EstimatorU1Sorted(benchmark::State& state) {
  const OutageTarget t{0.5, 0.1, 10.0};
  const auto samples = SortedExponentials::draw(100'000, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_outage_u1(2.0, Snr(500.0), Snr(44.6), t, samples));
  }
}
BENCHMARK(BM_EstimatorU1Sorted);

void BM_SimulateEpochs(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.scheme = static_cast<Scheme>(state.range(0));
  cfg.csi = CsiMode::Partial;
  cfg.pairs = 4;
  cfg.epochs = 1000;
  const Simulator sim(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(sim.run());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.epochs));
}
BENCHMARK(BM_SimulateEpochs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
