#pragma once

// Pair selection for multi-pair scenarios: MaxR and proportional fair over
// (machine pair i, cellular user j) candidates.

#include <cstddef>
#include <span>
#include <vector>

namespace d2d {

enum class SchedulerKind { MaxR, ProportionalFair };

struct PairCandidate {
  int i = 0;  ///< machine pair index
  int j = 0;  ///< cellular user index
  double metric_rate = 0.0;
};

/// Exponentially averaged served rate per cellular user.
class FairnessState {
 public:
  static constexpr double kDefaultTimeConstant = 100.0;
  static constexpr double kDefaultFloor = 1e-3;

  explicit FairnessState(std::size_t users, double time_constant = kDefaultTimeConstant,
                         double floor = kDefaultFloor);

  double r_star(std::size_t j) const { return r_star_.at(j); }
  std::size_t users() const noexcept { return r_star_.size(); }
  double time_constant() const noexcept { return t_c_; }
  double floor() const noexcept { return floor_; }

  /// r*[j] <- (1 - 1/t_c) r*[j] + (1/t_c) (rate if j == served else 0), floored.
  void update(std::size_t served_j, double realized_rate);

  /// Multiplies every r* by a positive constant.
  void scale(double factor);

 private:
  std::vector<double> r_star_;
  double t_c_;
  double floor_;
};

/// Index of the largest metric_rate; ties go to the lexicographically smallest (i, j).
std::size_t select_maxr(std::span<const PairCandidate> cands);

/// Index of the largest metric_rate / r*[j]; same tie rule.
std::size_t select_pf(std::span<const PairCandidate> cands, const FairnessState& fairness);

FairnessState update_fairness(FairnessState fairness, std::size_t served_j, double realized_rate);

}  // namespace d2d
