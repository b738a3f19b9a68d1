#pragma once

// Epoch loop for the underlay and reference schemes.
//
// Reference schemes use two slots per epoch (machine link alone, then the
// cellular link alone). Underlay schemes use one slot carrying both links with
// the decision module's (power, rate). Every epoch draws fresh block fading
// from its own substream, so results do not depend on the worker count.

#include <cstddef>
#include <span>
#include <vector>

#include "d2d/downlink.hpp"
#include "d2d/scenario.hpp"
#include "d2d/scheduler.hpp"
#include "d2d/uplink.hpp"

namespace d2d {

struct EpochMetrics {
  std::size_t epoch = 0;
  int i = 0;  ///< served machine pair
  int j = 0;  ///< served cellular user
  int slots = 1;
  double decided_rate = 0.0;
  double cellular_rate = 0.0;  ///< credited only when decodable
  bool cellular_decoded = false;
  bool machine_decoded = false;
  int machine_active_slots = 0;
  int cellular_active_slots = 0;
  bool machine_outage_flag = false;  ///< decision saw a lost machine link
  bool infeasible = false;
};

struct RunMetrics {
  std::size_t epochs = 0;
  std::size_t slots = 0;
  double mean_gamma_d = 0.0;
  double se_gamma_d = 0.0;
  double mean_gamma_u = 0.0;
  double se_gamma_u = 0.0;
  double machine_outage = 0.0;
  double se_machine_outage = 0.0;
  double active_time_machine = 0.0;
  double active_time_cellular = 0.0;
  std::size_t machine_outage_flags = 0;
  std::size_t infeasible_decisions = 0;
  std::size_t cellular_failures = 0;
  std::vector<std::size_t> service_count;  ///< epochs served per cellular user
};

/// Normalized rates divide each epoch's credited rate by its slot count.
/// The direction not exercised by the scheme reports zero.
RunMetrics accumulate(std::span<const EpochMetrics> epochs, Scheme scheme, std::size_t users);

class Simulator {
 public:
  Simulator(ScenarioConfig cfg, Topology topology, unsigned workers = 1);
  explicit Simulator(const ScenarioConfig& cfg, unsigned workers = 1);

  const ScenarioConfig& config() const noexcept { return cfg_; }
  const Topology& topology() const noexcept { return topo_; }
  PowerLevel machine_power() const noexcept { return downlink_.p_m; }
  const downlink::Config& downlink_config() const noexcept { return downlink_; }
  const uplink::Config& uplink_config() const noexcept { return uplink_; }

  FadingDraw draw_fading(std::size_t epoch) const;

  /// Decision for every candidate pair, in Topology::candidate_pairs() order.
  std::vector<TxDecision> decide_all(const FadingDraw& f) const;

  /// Applies a decision for pair (i, j) to the realized channel.
  EpochMetrics realize(std::size_t epoch, int i, int j, const TxDecision& d,
                       const FadingDraw& f) const;

  /// Decide, select, realize. Pairs flagged with a lost machine link are excluded
  /// from selection while any other pair remains. The fairness state is required
  /// for PF and updated in place.
  EpochMetrics run_epoch(std::size_t epoch, const FadingDraw& f, FairnessState* fairness) const;

  std::vector<EpochMetrics> run_epochs() const;
  RunMetrics run() const;

 private:
  downlink::FullCsi downlink_csi(int i, int j, const FadingDraw& f) const;
  uplink::FullCsi uplink_csi(int i, int j, const FadingDraw& f) const;
  TxDecision decide(int i, int j, std::size_t pair_index, const FadingDraw& f) const;

  ScenarioConfig cfg_;
  Topology topo_;
  unsigned workers_;
  std::vector<std::pair<int, int>> candidates_;
  downlink::Config downlink_;
  uplink::Config uplink_;
  std::vector<SortedExponentials> downlink_samples_;  ///< per machine pair
  std::vector<uplink::PowerSearch> uplink_search_;    ///< per candidate pair
};

}  // namespace d2d
