#include "d2d/downlink.hpp"

#include <algorithm>
#include <cmath>

namespace d2d::downlink {

PartialCsi partial_view(const FullCsi& full) {
  return PartialCsi{full.b_ui, full.b_uj, full.mi_ui.mean(), full.mi_uj.mean()};
}

PowerLevel lemma2_power_threshold(PowerLevel p_m, double g_mi_ui, double r_m,
                                  NoiseVariance noise_u, double g_b_ui) {
  const double gm = min_snr_for_rate(r_m).value;
  const double excess = p_m.watts() * g_mi_ui / gm - noise_u.watts();
  return PowerLevel::from_watts(std::max(0.0, excess / g_b_ui));
}

double uj_rate_bound(const FullCsi& csi, PowerLevel p_b, const Config& cfg) {
  const Snr b = snr(p_b, csi.b_uj, cfg.noise_u);
  if (cfg.rate_model == RateModel::Approximate) return capacity(b);
  return capacity(sinr(b, snr(cfg.p_m, csi.mi_uj, cfg.noise_u)));
}

FcsiCandidates fcsi_candidates(const FullCsi& csi, const Config& cfg) {
  const Snr m = snr(cfg.p_m, csi.mi_ui, cfg.noise_u);

  FcsiCandidates c;
  c.full_power_oic.power = cfg.p_b_max;
  const Snr b_max = snr(cfg.p_b_max, csi.b_ui, cfg.noise_u);
  c.full_power_oic.rate =
      std::min(capacity(sinr(b_max, m)), uj_rate_bound(csi, cfg.p_b_max, cfg));
  c.full_power_oic.predicted_path = DecodePath::OicDecode;

  const PowerLevel threshold = lemma2_power_threshold(
      cfg.p_m, csi.mi_ui.instantaneous(), cfg.target.rate, cfg.noise_u, csi.b_ui.instantaneous());
  c.reduced_power.power = std::min(threshold, cfg.p_b_max);
  c.reduced_power.rate = uj_rate_bound(csi, c.reduced_power.power, cfg);
  c.reduced_power.predicted_path = DecodePath::DirectDecode;
  return c;
}

TxDecision decide_fcsi(const FullCsi& csi, const Config& cfg) {
  const Snr m = snr(cfg.p_m, csi.mi_ui, cfg.noise_u);
  if (!fits(cfg.target.rate, capacity(m))) {
    // The machine message is lost to the fade alone; serve Uj at full power.
    TxDecision d;
    d.power = cfg.p_b_max;
    d.rate = uj_rate_bound(csi, cfg.p_b_max, cfg);
    d.predicted_path = DecodePath::Undecodable;
    d.machine_outage = true;
    return d;
  }
  const FcsiCandidates c = fcsi_candidates(csi, cfg);
  return c.full_power_oic.rate >= c.reduced_power.rate ? c.full_power_oic : c.reduced_power;
}

double pcsi_rate_ceiling(const PartialCsi& csi, const Config& cfg) {
  const Snr b = snr(cfg.p_b_max, csi.b_uj, cfg.noise_u);
  if (cfg.rate_model == RateModel::Approximate) return capacity(b);
  const Snr mi_mean = snr(cfg.p_m, csi.mi_uj.value, cfg.noise_u);
  const Snr mi_quantile(mi_mean.value * -std::log(kUnknownInterferenceBudget));
  return capacity(sinr(b, mi_quantile));
}

TxDecision decide_pcsi(const PartialCsi& csi, const Config& cfg,
                       const SortedExponentials& samples) {
  require_estimator_precision(cfg.target.p_out, samples.size(), cfg.epsilon);

  TxDecision d;
  d.power = cfg.p_b_max;

  const Snr gm = min_snr_for_rate(cfg.target.rate);
  const Snr mi_mean = snr(cfg.p_m, csi.mi_ui.value, cfg.noise_u);
  if (rayleigh_outage(gm, mi_mean) > cfg.target.p_out) {
    d.infeasible = true;
    return d;
  }

  const Snr b_at_ui = snr(cfg.p_b_max, csi.b_ui, cfg.noise_u);
  const auto estimate = [&](double r_b) {
    return mc_outage_u1(r_b, b_at_ui, mi_mean, cfg.target, samples).p_hat;
  };
  const BisectionResult r =
      bisect_feasible(0.0, pcsi_rate_ceiling(csi, cfg), estimate,
                      BisectionSettings{cfg.target.p_out, cfg.epsilon, cfg.width_floor});
  d.rate = r.value;
  d.estimator_calls = r.calls;
  return d;
}

}  // namespace d2d::downlink
