#include "d2d/scheduler.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace d2d {

namespace {

template <typename Metric>
std::size_t argmax(std::span<const PairCandidate> cands, Metric metric) {
  if (cands.empty()) throw std::invalid_argument("scheduler: empty candidate list");
  std::size_t best = 0;
  double best_metric = metric(cands[0]);
  for (std::size_t k = 1; k < cands.size(); ++k) {
    const double m = metric(cands[k]);
    const bool earlier = std::tie(cands[k].i, cands[k].j) < std::tie(cands[best].i, cands[best].j);
    if (m > best_metric || (m == best_metric && earlier)) {
      best = k;
      best_metric = m;
    }
  }
  return best;
}

}  // namespace

FairnessState::FairnessState(std::size_t users, double time_constant, double floor)
    : r_star_(users, floor), t_c_(time_constant), floor_(floor) {
  if (!(time_constant >= 1.0)) throw std::invalid_argument("PF time constant must be >= 1");
  if (!(floor > 0.0)) throw std::invalid_argument("PF floor must be positive");
}

void FairnessState::update(std::size_t served_j, double realized_rate) {
  if (served_j >= r_star_.size()) throw std::out_of_range("PF update: unknown user");
  const double w = 1.0 / t_c_;
  for (std::size_t j = 0; j < r_star_.size(); ++j) {
    const double sample = j == served_j ? realized_rate : 0.0;
    r_star_[j] = std::max(floor_, (1.0 - w) * r_star_[j] + w * sample);
  }
}

void FairnessState::scale(double factor) {
  for (double& r : r_star_) r *= factor;
  floor_ *= factor;
}

std::size_t select_maxr(std::span<const PairCandidate> cands) {
  return argmax(cands, [](const PairCandidate& c) { return c.metric_rate; });
}

std::size_t select_pf(std::span<const PairCandidate> cands, const FairnessState& fairness) {
  return argmax(cands, [&](const PairCandidate& c) {
    return c.metric_rate / fairness.r_star(static_cast<std::size_t>(c.j));
  });
}

FairnessState update_fairness(FairnessState fairness, std::size_t served_j, double realized_rate) {
  fairness.update(served_j, realized_rate);
  return fairness;
}

}  // namespace d2d
