#include "d2d/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace d2d {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(std::span<const double> xs) {
  MeanSe r;
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / n;
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(ss / (n - 1.0) / n);
  return r;
}

void check_feasible(const ScenarioConfig& cfg, const Topology& topo, PowerLevel p_m) {
  const Snr gm = min_snr_for_rate(cfg.r_m);
  for (std::size_t i = 0; i < topo.pairs(); ++i) {
    const double g = topo.m_u[i][i];
    const Snr mean = is_downlink(cfg.scheme) ? snr(p_m, g, cfg.noise_u())
                                             : snr(cfg.p_u_max(), g, cfg.noise_m());
    const double p = rayleigh_outage(gm, mean);
    if (p > cfg.p_out) {
      throw InfeasibleScenario("machine link " + std::to_string(i) + " has outage " +
                               std::to_string(p) + " > p_out without interference");
    }
  }
}

}  // namespace

RunMetrics accumulate(std::span<const EpochMetrics> epochs, Scheme scheme, std::size_t users) {
  RunMetrics m;
  m.epochs = epochs.size();
  m.service_count.assign(users, 0);
  if (epochs.empty()) return m;

  std::vector<double> gamma;
  gamma.reserve(epochs.size());
  std::size_t outages = 0, machine_active = 0, cellular_active = 0;
  for (const EpochMetrics& e : epochs) {
    gamma.push_back(e.cellular_rate / e.slots);
    m.slots += static_cast<std::size_t>(e.slots);
    machine_active += static_cast<std::size_t>(e.machine_active_slots);
    cellular_active += static_cast<std::size_t>(e.cellular_active_slots);
    if (!e.machine_decoded) ++outages;
    if (e.machine_outage_flag) ++m.machine_outage_flags;
    if (e.infeasible) ++m.infeasible_decisions;
    if (!e.cellular_decoded) ++m.cellular_failures;
    if (e.j >= 0 && static_cast<std::size_t>(e.j) < users) ++m.service_count[e.j];
  }
  const MeanSe g = mean_and_se(gamma);
  if (is_downlink(scheme)) {
    m.mean_gamma_d = g.mean;
    m.se_gamma_d = g.se;
  } else {
    m.mean_gamma_u = g.mean;
    m.se_gamma_u = g.se;
  }
  const OutageEstimate o = make_estimate(outages, epochs.size());
  m.machine_outage = o.p_hat;
  m.se_machine_outage = o.std_err;
  m.active_time_machine = static_cast<double>(machine_active) / static_cast<double>(m.slots);
  m.active_time_cellular = static_cast<double>(cellular_active) / static_cast<double>(m.slots);
  return m;
}

Simulator::Simulator(ScenarioConfig cfg, Topology topology, unsigned workers)
    : cfg_(std::move(cfg)), topo_(std::move(topology)), workers_(std::max(1u, workers)) {
  cfg_.validate();
  candidates_ = topo_.candidate_pairs();

  downlink_.p_b_max = cfg_.p_b_max();
  downlink_.p_m = cfg_.machine_power();
  downlink_.target = cfg_.target();
  downlink_.noise_u = cfg_.noise_u();
  downlink_.epsilon = cfg_.epsilon;
  downlink_.width_floor = cfg_.width_floor;
  downlink_.rate_model = cfg_.rate_model;

  uplink_.p_u_max = cfg_.p_u_max();
  uplink_.target = cfg_.target();
  uplink_.noise_m = cfg_.noise_m();
  uplink_.noise_b = cfg_.noise_b();
  uplink_.epsilon = cfg_.epsilon;
  uplink_.width_floor = cfg_.width_floor;

  check_feasible(cfg_, topo_, downlink_.p_m);

  if (cfg_.csi != CsiMode::Partial || !is_underlay(cfg_.scheme)) return;
  require_estimator_precision(cfg_.p_out, cfg_.mc_samples, cfg_.epsilon);
  if (cfg_.scheme == Scheme::U1) {
    for (std::size_t i = 0; i < topo_.pairs(); ++i) {
      downlink_samples_.push_back(SortedExponentials::draw(
          cfg_.mc_samples, derive_seed(cfg_.seed, StreamTag::DownlinkEstimator, i), workers_));
    }
  } else {
    std::vector<FadingPairs> samples;
    for (std::size_t i = 0; i < topo_.pairs(); ++i) {
      samples.push_back(FadingPairs::draw(
          cfg_.mc_samples, derive_seed(cfg_.seed, StreamTag::UplinkEstimator, i), workers_));
    }
    for (const auto& [i, j] : candidates_) {
      uplink_search_.push_back(uplink::search_pcsi_power(
          MeanGain{topo_.m_u[i][i]}, MeanGain{topo_.m_u[i][j]}, uplink_, samples[i]));
    }
  }
}

Simulator::Simulator(const ScenarioConfig& cfg, unsigned workers)
    : Simulator(cfg, build_scenario(cfg), workers) {}

FadingDraw Simulator::draw_fading(std::size_t epoch) const {
  RandomStream rng(derive_seed(cfg_.seed, StreamTag::Fading, epoch));
  return FadingDraw::draw(topo_, rng);
}

downlink::FullCsi Simulator::downlink_csi(int i, int j, const FadingDraw& f) const {
  return downlink::FullCsi{
      LinkGain{topo_.b_u[i], f.b_u[i]},
      LinkGain{topo_.b_u[j], f.b_u[j]},
      LinkGain{topo_.m_u[i][i], f.m_u[i][i]},
      LinkGain{topo_.m_u[i][j], f.m_u[i][j]},
  };
}

uplink::FullCsi Simulator::uplink_csi(int i, int j, const FadingDraw& f) const {
  return uplink::FullCsi{
      LinkGain{topo_.b_u[j], f.b_u[j]},
      LinkGain{topo_.b_u[i], f.b_u[i]},
      LinkGain{topo_.m_u[i][i], f.m_u[i][i]},
      LinkGain{topo_.m_u[i][j], f.m_u[i][j]},
  };
}

TxDecision Simulator::decide(int i, int j, std::size_t pair_index, const FadingDraw& f) const {
  TxDecision d;
  switch (cfg_.scheme) {
    case Scheme::R1:
      d.power = downlink_.p_b_max;
      d.rate = capacity(snr(d.power, LinkGain{topo_.b_u[j], f.b_u[j]}, downlink_.noise_u));
      return d;
    case Scheme::R2:
      d.power = uplink_.p_u_max;
      d.rate = capacity(snr(d.power, LinkGain{topo_.b_u[j], f.b_u[j]}, uplink_.noise_b));
      return d;
    case Scheme::U1: {
      const downlink::FullCsi csi = downlink_csi(i, j, f);
      if (cfg_.csi == CsiMode::Full) return downlink::decide_fcsi(csi, downlink_);
      return downlink::decide_pcsi(downlink::partial_view(csi), downlink_, downlink_samples_[i]);
    }
    case Scheme::U2: {
      const uplink::FullCsi csi = uplink_csi(i, j, f);
      if (cfg_.csi == CsiMode::Full) return uplink::decide_fcsi(csi, uplink_);
      return uplink::pcsi_decision_at(uplink::partial_view(csi), uplink_search_[pair_index],
                                      uplink_);
    }
  }
  return d;
}

std::vector<TxDecision> Simulator::decide_all(const FadingDraw& f) const {
  std::vector<TxDecision> out;
  out.reserve(candidates_.size());
  for (std::size_t k = 0; k < candidates_.size(); ++k) {
    out.push_back(decide(candidates_[k].first, candidates_[k].second, k, f));
  }
  return out;
}

EpochMetrics Simulator::realize(std::size_t epoch, int i, int j, const TxDecision& d,
                                const FadingDraw& f) const {
  EpochMetrics e;
  e.epoch = epoch;
  e.i = i;
  e.j = j;
  e.decided_rate = d.rate;
  e.machine_outage_flag = d.machine_outage;
  e.infeasible = d.infeasible;
  const bool cellular_on = d.power.watts() > 0.0 && d.rate > 0.0;
  const double r_m = cfg_.r_m;

  switch (cfg_.scheme) {
    case Scheme::R1:
    case Scheme::R2: {
      e.slots = 2;
      const Snr machine = cfg_.scheme == Scheme::R1
                              ? snr(downlink_.p_m, LinkGain{topo_.m_u[i][i], f.m_u[i][i]},
                                    downlink_.noise_u)
                              : snr(uplink_.p_u_max, LinkGain{topo_.m_u[i][i], f.m_u[i][i]},
                                    uplink_.noise_m);
      e.machine_decoded = fits(r_m, capacity(machine));
      e.cellular_decoded = true;  // alone in its slot at the rate it adapted to
      break;
    }
    case Scheme::U1: {
      e.slots = 1;
      const downlink::FullCsi csi = downlink_csi(i, j, f);
      const Snr mi_ui = snr(downlink_.p_m, csi.mi_ui, downlink_.noise_u);
      const Snr b_ui = snr(d.power, csi.b_ui, downlink_.noise_u);
      e.machine_decoded =
          classify_mi_at_ui(MacState{mi_ui, b_ui, r_m, d.rate}) != DecodePath::Undecodable;
      e.cellular_decoded = fits(d.rate, downlink::uj_rate_bound(csi, d.power, downlink_));
      break;
    }
    case Scheme::U2: {
      e.slots = 1;
      const uplink::FullCsi csi = uplink_csi(i, j, f);
      const Snr ui_mi = snr(uplink_.p_u_max, csi.ui_mi, uplink_.noise_m);
      const Snr uj_mi = snr(d.power, csi.uj_mi, uplink_.noise_m);
      e.machine_decoded = fits(r_m, capacity(sinr(ui_mi, uj_mi)));
      const Snr uj_b = snr(d.power, csi.uj_b, uplink_.noise_b);
      const Snr ui_b = snr(uplink_.p_u_max, csi.ui_b, uplink_.noise_b);
      e.cellular_decoded =
          classify_uj_at_b(MacState{uj_b, ui_b, d.rate, r_m}) != DecodePath::Undecodable;
      break;
    }
  }
  e.cellular_rate = e.cellular_decoded ? d.rate : 0.0;
  e.machine_active_slots = 1;
  e.cellular_active_slots = cellular_on ? 1 : 0;
  return e;
}

EpochMetrics Simulator::run_epoch(std::size_t epoch, const FadingDraw& f,
                                  FairnessState* fairness) const {
  const std::vector<TxDecision> decisions = decide_all(f);
  // Pairs whose machine link is already lost are served only if no other pair is eligible.
  std::vector<std::size_t> eligible;
  for (std::size_t k = 0; k < decisions.size(); ++k) {
    if (!decisions[k].machine_outage) eligible.push_back(k);
  }
  if (eligible.empty()) {
    for (std::size_t k = 0; k < decisions.size(); ++k) eligible.push_back(k);
  }
  std::vector<PairCandidate> cands;
  cands.reserve(eligible.size());
  for (std::size_t k : eligible) {
    cands.push_back({candidates_[k].first, candidates_[k].second, decisions[k].rate});
  }
  std::size_t pick = 0;
  if (cfg_.scheduler == SchedulerKind::ProportionalFair) {
    if (fairness == nullptr) throw std::invalid_argument("PF scheduling needs a fairness state");
    pick = select_pf(cands, *fairness);
  } else {
    pick = select_maxr(cands);
  }
  EpochMetrics e = realize(epoch, cands[pick].i, cands[pick].j, decisions[eligible[pick]], f);
  if (fairness != nullptr) fairness->update(static_cast<std::size_t>(e.j), e.cellular_rate);
  return e;
}

std::vector<EpochMetrics> Simulator::run_epochs() const {
  std::vector<EpochMetrics> out(cfg_.epochs);
  if (cfg_.scheduler == SchedulerKind::ProportionalFair) {
    FairnessState fairness(topo_.user_count(), cfg_.pf_time_constant);
    for (std::size_t e = 0; e < cfg_.epochs; ++e) {
      out[e] = run_epoch(e, draw_fading(e), &fairness);
    }
    return out;
  }
  const unsigned workers =
      std::max(1u, std::min<unsigned>(workers_, static_cast<unsigned>(cfg_.epochs)));
  auto work = [&](unsigned w) {
    for (std::size_t e = w; e < cfg_.epochs; e += workers) {
      out[e] = run_epoch(e, draw_fading(e), nullptr);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

RunMetrics Simulator::run() const {
  const std::vector<EpochMetrics> epochs = run_epochs();
  return accumulate(epochs, cfg_.scheme, topo_.user_count());
}

}  // namespace d2d
