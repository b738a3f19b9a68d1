#include <cmath>

#include "d2d/downlink.hpp"
#include "doctest.h"
#include "instances.hpp"

using namespace d2d;
using namespace d2d::downlink;

TEST_SUITE("downlink") {

TEST_CASE("lemma 2 threshold") {
  const auto one = PowerLevel::from_watts(1.0);
  const auto half = NoiseVariance::from_watts(0.5);
  CHECK(lemma2_power_threshold(one, 1.0, 0.5, half, 1.0).watts() ==
        doctest::Approx(1.0 / 0.41421356 - 0.5).epsilon(1e-6));
  CHECK(lemma2_power_threshold(one, 1.0, 0.5, half, 1.0).watts() ==
        doctest::Approx(1.9142).epsilon(1e-4));
  CHECK(lemma2_power_threshold(one, 0.1, 0.5, half, 1.0).watts() == 0.0);
  CHECK(lemma2_power_threshold(one, 1.0, 0.5, half, 2.0).watts() ==
        doctest::Approx(0.5 * lemma2_power_threshold(one, 1.0, 0.5, half, 1.0).watts()));
}

TEST_CASE("strong machine link leaves only the Uj bound") {
  Config cfg = fixtures::downlink_config();
  cfg.target.rate = 1e-4;
  const FullCsi csi{{1e-11, 1.0}, {1e-12, 1.0}, {1e-3, 1.0}, {1e-14, 1.0}};
  const TxDecision d = decide_fcsi(csi, cfg);
  CHECK(d.power == cfg.p_b_max);
  CHECK(d.rate == doctest::Approx(uj_rate_bound(csi, cfg.p_b_max, cfg)).epsilon(1e-12));
  CHECK_FALSE(d.machine_outage);
}

TEST_CASE("deep machine fade falls back to full power") {
  const Config cfg = fixtures::downlink_config();
  const FullCsi csi{{1e-11, 1.0}, {1e-12, 1.0}, {1e-6, 1e-4}, {1e-14, 1.0}};
  const TxDecision d = decide_fcsi(csi, cfg);
  CHECK(d.machine_outage);
  CHECK(d.power == cfg.p_b_max);
  CHECK(d.rate == doctest::Approx(uj_rate_bound(csi, cfg.p_b_max, cfg)));
}

TEST_CASE("fcsi returns the better candidate") {
  RandomStream rng(derive_seed(101, StreamTag::Test));
  const Config cfg = fixtures::downlink_config();
  for (int k = 0; k < 2000; ++k) {
    const FullCsi csi = fixtures::random_downlink(rng);
    const TxDecision d = decide_fcsi(csi, cfg);
    CHECK(d.power <= cfg.p_b_max);
    CHECK(d.rate >= 0.0);
    if (d.machine_outage) continue;
    const FcsiCandidates c = fcsi_candidates(csi, cfg);
    CHECK(d.rate >= c.full_power_oic.rate);
    CHECK(d.rate >= c.reduced_power.rate);
    CHECK(d.rate == std::max(c.full_power_oic.rate, c.reduced_power.rate));
    // The chosen point keeps the machine decodable at Ui.
    const Snr m = snr(cfg.p_m, csi.mi_ui, cfg.noise_u);
    const Snr b = snr(d.power, csi.b_ui, cfg.noise_u);
    CHECK(classify_mi_at_ui({m, b, cfg.target.rate, d.rate}) != DecodePath::Undecodable);
  }
}

TEST_CASE("fcsi matches the grid oracle") {
  RandomStream rng(derive_seed(102, StreamTag::Test));
  for (RateModel model : {RateModel::Exact, RateModel::Approximate}) {
    int compared = 0;
    for (int k = 0; k < 300; ++k) {
      const Config cfg = fixtures::downlink_config(rng.uniform(20.0, 46.0), model);
      const FullCsi csi = fixtures::random_downlink(rng);
      const TxDecision d = decide_fcsi(csi, cfg);
      const oracle::DownlinkInstance x = fixtures::to_oracle(csi, cfg);
      const auto g = oracle::downlink_grid(x, 200, 200);
      const auto check = fixtures::compare(
          g, d.power.watts(), d.rate,
          [&](double p, double r) { return oracle::downlink_feasible(x, p, r); },
          [&](double p) { return oracle::log2p1(p * x.k_b_uj / (1.0 + x.m_uj)); });
      CHECK(check.skipped == d.machine_outage);
      if (check.skipped) continue;
      ++compared;
      CHECK(check.feasible);
      CHECK(check.not_beaten);
      CHECK(check.within_step);
    }
    CHECK(compared > 250);
  }
}

TEST_CASE("pcsi with a strong machine link reaches the Uj bound") {
  Config cfg = fixtures::downlink_config();
  cfg.p_m = PowerLevel::from_watts(cfg.p_m.watts() * 1e6);
  const SortedExponentials s = SortedExponentials::draw(100'000, 5);
  const FullCsi csi{{1e-11, 1.0}, {1e-12, 1.0}, {1e-6, 1.0}, {1e-16, 1.0}};
  const TxDecision d = decide_pcsi(partial_view(csi), cfg, s);
  CHECK(d.power == cfg.p_b_max);
  CHECK(d.rate == doctest::Approx(pcsi_rate_ceiling(partial_view(csi), cfg)));
  CHECK(d.estimator_calls == 1);
}

TEST_CASE("pcsi with no coupling at Ui returns the ceiling") {
  const Config cfg = fixtures::downlink_config();
  const SortedExponentials s = SortedExponentials::draw(100'000, 6);
  const FullCsi csi{{1e-11, 0.0}, {1e-12, 1.0}, {1e-6, 1.0}, {1e-14, 1.0}};
  const TxDecision d = decide_pcsi(partial_view(csi), cfg, s);
  CHECK(d.rate == doctest::Approx(pcsi_rate_ceiling(partial_view(csi), cfg)));
  Config approx = cfg;
  approx.rate_model = RateModel::Approximate;
  CHECK(pcsi_rate_ceiling(partial_view(csi), approx) ==
        doctest::Approx(capacity(snr(cfg.p_b_max, csi.b_uj, cfg.noise_u))));
}

TEST_CASE("pcsi search contract") {
  const Config cfg = fixtures::downlink_config();
  const SortedExponentials s = SortedExponentials::draw(100'000, 7);
  RandomStream rng(derive_seed(103, StreamTag::Test));
  for (int k = 0; k < 50; ++k) {
    const FullCsi csi = fixtures::random_downlink(rng);
    const PartialCsi p = partial_view(csi);
    const TxDecision d = decide_pcsi(p, cfg, s);
    const double range = pcsi_rate_ceiling(p, cfg);
    CHECK(d.estimator_calls <= max_bisection_calls(range, cfg.width_floor));
    CHECK(d.rate <= range);
    const Snr b = snr(cfg.p_b_max, csi.b_ui, cfg.noise_u);
    const Snr mu = snr(cfg.p_m, csi.mi_ui.mean_gain, cfg.noise_u);
    CHECK(mc_outage_u1(d.rate, b, mu, cfg.target, s).p_hat <= cfg.target.p_out);
  }
}

TEST_CASE("pcsi is infeasible when the machine link is too weak on average") {
  Config cfg = fixtures::downlink_config();
  cfg.p_m = PowerLevel::from_watts(cfg.p_m.watts() / 100.0);
  const SortedExponentials s = SortedExponentials::draw(100'000, 8);
  const FullCsi csi{{1e-11, 1.0}, {1e-12, 1.0}, {1e-6, 1.0}, {1e-14, 1.0}};
  const TxDecision d = decide_pcsi(partial_view(csi), cfg, s);
  CHECK(d.infeasible);
  CHECK(d.rate == 0.0);
}

TEST_CASE("pcsi rejects an imprecise estimator") {
  Config cfg = fixtures::downlink_config();
  cfg.epsilon = 0.001;
  const SortedExponentials s = SortedExponentials::draw(100'000, 9);
  const FullCsi csi{{1e-11, 1.0}, {1e-12, 1.0}, {1e-6, 1.0}, {1e-14, 1.0}};
  CHECK_THROWS_AS(decide_pcsi(partial_view(csi), cfg, s), EstimatorPrecisionError);
}

TEST_CASE("pcsi is no more aggressive than fcsi on average") {
  const Config cfg = fixtures::downlink_config();
  const SortedExponentials s = SortedExponentials::draw(100'000, 10);
  RandomStream rng(derive_seed(104, StreamTag::Test));
  // One geometry, many fades.
  const double g_ui = pathloss_gain(250.0), g_uj = pathloss_gain(500.0), g_mu = pathloss_gain(750.0);
  double f_sum = 0.0, p_sum = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const FullCsi csi{fixtures::faded(rng, g_ui), fixtures::faded(rng, g_uj),
                      fixtures::faded(rng, 1e-6), fixtures::faded(rng, g_mu)};
    f_sum += decide_fcsi(csi, cfg).rate;
    p_sum += decide_pcsi(partial_view(csi), cfg, s).rate;
  }
  CHECK(p_sum <= f_sum);
}

}
