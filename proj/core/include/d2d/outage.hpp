#pragma once

// Outage thresholds, the closed-form Rayleigh outage, the outage-margin power
// rule and the Monte Carlo outage estimators used by the partial-CSI searches.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "d2d/channel.hpp"

namespace d2d {

/// Fixed-rate machine link requirement.
struct OutageTarget {
  double rate = 0.5;    ///< R_M, bits/s/Hz
  double p_out = 0.1;   ///< tolerated outage probability
  double margin = 1.0;  ///< S_M >= 1

  void validate() const;
};

struct OutageEstimate {
  double p_hat = 0.0;
  std::size_t n_samples = 0;
  double std_err = 0.0;
};

/// Thrown when the estimator cannot resolve the search tolerance.
class EstimatorPrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OutageEstimate make_estimate(std::size_t failures, std::size_t n);

/// P[gamma < threshold] for exponentially distributed gamma with the given mean.
double rayleigh_outage(Snr threshold, Snr mean);

/// (1 - p_out) * log2(1 + threshold).
double outage_rate(Snr threshold, double p_out);

/// Smallest transmit power meeting the outage rate and probability with the
/// target's margin. The rate field of the target is read as the outage rate.
PowerLevel min_power_for_outage(const OutageTarget& target, double mean_gain,
                                NoiseVariance noise);

/// Throws EstimatorPrecisionError if the binomial standard error at p_out with
/// n samples exceeds epsilon / 3.
void require_estimator_precision(double p_out, std::size_t n, double epsilon);

inline constexpr std::size_t kMinEstimatorSamples = 10'000;

/// n unit-mean exponential variates drawn in fixed-size blocks, block b from
/// derive_seed(seed, EstimatorBlock, b). The result does not depend on workers.
std::vector<double> draw_unit_exponentials(std::size_t n, std::uint64_t seed,
                                           unsigned workers = 1);

/// Sorted unit exponentials. Scaling by a mean SNR gives common random numbers
/// for every estimator call that shares the set.
class SortedExponentials {
 public:
  SortedExponentials() = default;
  explicit SortedExponentials(std::vector<double> draws);
  static SortedExponentials draw(std::size_t n, std::uint64_t seed, unsigned workers = 1);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> values() const noexcept { return sorted_; }

  std::size_t count_below(double x) const;     ///< #{v < x}
  std::size_t count_at_most(double x) const;   ///< #{v <= x}

 private:
  std::vector<double> sorted_;
};

/// Paired draws (signal fading, interferer fading) for the uplink estimator.
struct FadingPairs {
  std::vector<double> signal;
  std::vector<double> interference;

  static FadingPairs draw(std::size_t n, std::uint64_t seed, unsigned workers = 1);
  std::size_t size() const noexcept { return signal.size(); }
};

/// Downlink underlay outage at Ui: the machine signal (mean SNR mi_mean) is lost
/// unless decodable directly against B (instantaneous SNR b_at_ui) or after B's
/// rate-r_b codeword is decoded and cancelled.
OutageEstimate mc_outage_u1(double r_b, Snr b_at_ui, Snr mi_mean, const OutageTarget& target,
                            std::size_t n, RandomStream& rng);

/// Same estimator evaluated on a shared sorted sample set.
OutageEstimate mc_outage_u1(double r_b, Snr b_at_ui, Snr mi_mean, const OutageTarget& target,
                            const SortedExponentials& samples);

/// Uplink underlay outage at Mi: Ui at p_ui against interferer Uj at p_uj, no
/// cancellation at the machine.
OutageEstimate mc_outage_u2(PowerLevel p_uj, PowerLevel p_ui, double ui_mi_mean,
                            double uj_mi_mean, NoiseVariance noise_m,
                            const OutageTarget& target, std::size_t n, RandomStream& rng);

OutageEstimate mc_outage_u2(PowerLevel p_uj, PowerLevel p_ui, double ui_mi_mean,
                            double uj_mi_mean, NoiseVariance noise_m,
                            const OutageTarget& target, const FadingPairs& samples);

}  // namespace d2d
