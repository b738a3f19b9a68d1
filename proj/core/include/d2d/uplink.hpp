#pragma once

// Uplink underlay: Uj transmits to B while the relay Ui forwards to the
// machine Mi in the same slot at full power. B picks (P_Uj, R_Uj) so that Mi,
// which cannot cancel interference, still meets its outage target.

#include "d2d/decision.hpp"
#include "d2d/outage.hpp"

namespace d2d::uplink {

struct FullCsi {
  LinkGain uj_b;
  LinkGain ui_b;
  LinkGain ui_mi;
  LinkGain uj_mi;
};

struct PartialCsi {
  LinkGain uj_b;
  LinkGain ui_b;
  MeanGain ui_mi;
  MeanGain uj_mi;
};

PartialCsi partial_view(const FullCsi& full);

struct Config {
  PowerLevel p_u_max;  ///< also the relay's transmit power P_Ui
  OutageTarget target;
  NoiseVariance noise_m = NoiseVariance::from_dbm(-97.5);
  NoiseVariance noise_b = NoiseVariance::from_dbm(-116.5);
  double epsilon = 0.01;
  double width_floor = 1e-4;
};

/// A power ceiling that may be absent (a rate-0 signal tolerates any interference).
struct PowerCap {
  bool bounded = true;
  PowerLevel power;

  static PowerCap unbounded() { return PowerCap{false, PowerLevel{}}; }
  PowerLevel clamp(PowerLevel p) const { return bounded && power < p ? power : p; }
};

/// Largest P_Uj keeping the machine SINR at Mi >= 2^R_M - 1,
/// (p_ui g_ui_mi / (2^R_M - 1) - sigma_m^2) / g_uj_mi, clamped at zero.
PowerLevel lemma3_interference_cap(PowerLevel p_ui, double g_ui_mi, double r_m,
                                   NoiseVariance noise_m, double g_uj_mi);

/// Largest P_Uj with which B still decodes Ui's rate-R_M signal against Uj,
/// so that it can be cancelled. Unbounded when R_M = 0.
PowerCap lemma4_clean_decode_cap(PowerLevel p_ui, double g_ui_b, double r_m,
                                 NoiseVariance noise_b, double g_uj_b);

/// Rate B can decode from Uj at power p_uj while Ui sends at R_M with P_U^Max.
double uj_rate_at_b(const LinkGain& uj_b, const LinkGain& ui_b, PowerLevel p_uj,
                    const Config& cfg);

struct FcsiCandidates {
  TxDecision cancel_relay;  ///< P_Uj^(1): Ui decoded and cancelled at B
  TxDecision relay_as_noise;  ///< P_Uj^(2): Ui treated as noise at B
};

FcsiCandidates fcsi_candidates(const FullCsi& csi, const Config& cfg);

TxDecision decide_fcsi(const FullCsi& csi, const Config& cfg);

/// Bisection over P_Uj on the machine outage; depends on mean gains only.
struct PowerSearch {
  PowerLevel power;
  bool infeasible = false;
  int estimator_calls = 0;
};

PowerSearch search_pcsi_power(MeanGain ui_mi, MeanGain uj_mi, const Config& cfg,
                              const FadingPairs& samples);

/// Terminal rate rule of the partial-CSI search at a fixed P_Uj.
TxDecision pcsi_decision_at(const PartialCsi& csi, const PowerSearch& search, const Config& cfg);

TxDecision decide_pcsi(const PartialCsi& csi, const Config& cfg, const FadingPairs& samples);

}  // namespace d2d::uplink
