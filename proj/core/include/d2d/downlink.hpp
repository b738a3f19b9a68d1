#pragma once

// Downlink underlay: B serves Uj while the machine Mi transmits to its relay
// Ui in the same slot. B picks (P_B, R_B) so that Ui still recovers the
// machine message, either directly or after cancelling B's codeword.

#include <cstddef>

#include "d2d/decision.hpp"
#include "d2d/outage.hpp"

namespace d2d::downlink {

/// Instantaneous gains of every link involved.
struct FullCsi {
  LinkGain b_ui;
  LinkGain b_uj;
  LinkGain mi_ui;
  LinkGain mi_uj;
};

/// Cellular links instantaneous, machine links by mean only.
struct PartialCsi {
  LinkGain b_ui;
  LinkGain b_uj;
  MeanGain mi_ui;
  MeanGain mi_uj;
};

PartialCsi partial_view(const FullCsi& full);

struct Config {
  PowerLevel p_b_max;
  PowerLevel p_m;              ///< machine transmit power
  OutageTarget target;
  NoiseVariance noise_u = NoiseVariance::from_dbm(-97.5);
  double epsilon = 0.01;
  double width_floor = 1e-4;
  RateModel rate_model = RateModel::Exact;
};

/// Probability budget for the unknown machine interference at Uj under
/// partial CSI with the exact rate model: B sizes R_B against the
/// (1 - kUnknownInterferenceBudget) quantile of the Mi->Uj SNR.
inline constexpr double kUnknownInterferenceBudget = 1e-4;

/// Largest P_B that keeps the machine signal directly decodable at Ui,
/// (P_M g_mi_ui / (2^R_M - 1) - sigma_u^2) / g_b_ui, clamped at zero.
PowerLevel lemma2_power_threshold(PowerLevel p_m, double g_mi_ui, double r_m,
                                  NoiseVariance noise_u, double g_b_ui);

/// Rate B can deliver to Uj at power p_b under the configured rate model.
double uj_rate_bound(const FullCsi& csi, PowerLevel p_b, const Config& cfg);

struct FcsiCandidates {
  TxDecision full_power_oic;   ///< P_B^Max, R_B capped by cancellation at Ui
  TxDecision reduced_power;    ///< min(P_B*, P_B^Max), machine decoded directly
};

/// The two operating points compared by the full-CSI rule.
FcsiCandidates fcsi_candidates(const FullCsi& csi, const Config& cfg);

TxDecision decide_fcsi(const FullCsi& csi, const Config& cfg);

/// Upper end of the partial-CSI rate search at P_B^Max.
double pcsi_rate_ceiling(const PartialCsi& csi, const Config& cfg);

/// Partial-CSI rule: P_B = P_B^Max, R_B found by bisection on the estimated
/// machine outage. `samples` supplies common random numbers for the search.
TxDecision decide_pcsi(const PartialCsi& csi, const Config& cfg,
                       const SortedExponentials& samples);

}  // namespace d2d::downlink
