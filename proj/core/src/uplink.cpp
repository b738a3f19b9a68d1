#include "d2d/uplink.hpp"

#include <algorithm>

namespace d2d::uplink {

namespace {

double cap_watts(PowerLevel p_ui, double g_sig, double r_m, double noise, double g_int) {
  const double gm = min_snr_for_rate(r_m).value;
  return std::max(0.0, (p_ui.watts() * g_sig / gm - noise) / g_int);
}

}  // namespace

PartialCsi partial_view(const FullCsi& full) {
  return PartialCsi{full.uj_b, full.ui_b, full.ui_mi.mean(), full.uj_mi.mean()};
}

PowerLevel lemma3_interference_cap(PowerLevel p_ui, double g_ui_mi, double r_m,
                                   NoiseVariance noise_m, double g_uj_mi) {
  return PowerLevel::from_watts(cap_watts(p_ui, g_ui_mi, r_m, noise_m.watts(), g_uj_mi));
}

PowerCap lemma4_clean_decode_cap(PowerLevel p_ui, double g_ui_b, double r_m,
                                 NoiseVariance noise_b, double g_uj_b) {
  if (r_m <= 0.0) return PowerCap::unbounded();
  return PowerCap{true,
                  PowerLevel::from_watts(cap_watts(p_ui, g_ui_b, r_m, noise_b.watts(), g_uj_b))};
}

double uj_rate_at_b(const LinkGain& uj_b, const LinkGain& ui_b, PowerLevel p_uj,
                    const Config& cfg) {
  return uj_rate_ceiling_at_b(snr(p_uj, uj_b, cfg.noise_b), snr(cfg.p_u_max, ui_b, cfg.noise_b),
                              cfg.target.rate);
}

FcsiCandidates fcsi_candidates(const FullCsi& csi, const Config& cfg) {
  const Snr ui_mi = snr(cfg.p_u_max, csi.ui_mi, cfg.noise_m);
  const bool machine_alive = fits(cfg.target.rate, capacity(ui_mi));

  // A machine link already lost to its own fade imposes no interference cap.
  PowerLevel machine_cap = cfg.p_u_max;
  if (machine_alive) {
    machine_cap = std::min(machine_cap,
                           lemma3_interference_cap(cfg.p_u_max, csi.ui_mi.instantaneous(),
                                                   cfg.target.rate, cfg.noise_m,
                                                   csi.uj_mi.instantaneous()));
  }
  const PowerCap clean = lemma4_clean_decode_cap(cfg.p_u_max, csi.ui_b.instantaneous(),
                                                 cfg.target.rate, cfg.noise_b,
                                                 csi.uj_b.instantaneous());

  FcsiCandidates c;
  c.cancel_relay.power = clean.clamp(machine_cap);
  c.cancel_relay.rate = capacity(snr(c.cancel_relay.power, csi.uj_b, cfg.noise_b));
  c.cancel_relay.predicted_path = DecodePath::OicDecode;

  c.relay_as_noise.power = machine_cap;
  c.relay_as_noise.rate = capacity(sinr(snr(machine_cap, csi.uj_b, cfg.noise_b),
                                        snr(cfg.p_u_max, csi.ui_b, cfg.noise_b)));
  c.relay_as_noise.predicted_path = DecodePath::DirectDecode;

  c.cancel_relay.machine_outage = c.relay_as_noise.machine_outage = !machine_alive;
  return c;
}

TxDecision decide_fcsi(const FullCsi& csi, const Config& cfg) {
  const FcsiCandidates c = fcsi_candidates(csi, cfg);
  return c.cancel_relay.rate >= c.relay_as_noise.rate ? c.cancel_relay : c.relay_as_noise;
}

PowerSearch search_pcsi_power(MeanGain ui_mi, MeanGain uj_mi, const Config& cfg,
                              const FadingPairs& samples) {
  require_estimator_precision(cfg.target.p_out, samples.size(), cfg.epsilon);

  PowerSearch s;
  const Snr gm = min_snr_for_rate(cfg.target.rate);
  if (rayleigh_outage(gm, snr(cfg.p_u_max, ui_mi.value, cfg.noise_m)) > cfg.target.p_out) {
    s.infeasible = true;
    return s;
  }

  const auto estimate = [&](double watts) {
    return mc_outage_u2(PowerLevel::from_watts(watts), cfg.p_u_max, ui_mi.value, uj_mi.value,
                        cfg.noise_m, cfg.target, samples)
        .p_hat;
  };
  // The search runs over power in units of P_U^Max so the width floor is
  // dimensionless, like the downlink rate search.
  const double scale = cfg.p_u_max.watts();
  const BisectionResult r = bisect_feasible(
      0.0, 1.0, [&](double x) { return estimate(x * scale); },
      BisectionSettings{cfg.target.p_out, cfg.epsilon, cfg.width_floor});
  s.power = r.value >= 1.0 ? cfg.p_u_max : PowerLevel::from_watts(r.value * scale);
  s.estimator_calls = r.calls;
  return s;
}

TxDecision pcsi_decision_at(const PartialCsi& csi, const PowerSearch& search, const Config& cfg) {
  TxDecision d;
  d.power = search.power;
  d.rate = uj_rate_at_b(csi.uj_b, csi.ui_b, search.power, cfg);
  d.infeasible = search.infeasible;
  d.estimator_calls = search.estimator_calls;
  return d;
}

TxDecision decide_pcsi(const PartialCsi& csi, const Config& cfg, const FadingPairs& samples) {
  return pcsi_decision_at(csi, search_pcsi_power(csi.ui_mi, csi.uj_mi, cfg, samples), cfg);
}

}  // namespace d2d::uplink
