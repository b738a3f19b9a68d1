#include "d2d/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "d2d/mac_region.hpp"

namespace d2d {

namespace {

constexpr std::size_t kBlockSize = 8192;

void fill_blocks(std::vector<double>& out, std::uint64_t seed, std::size_t first_block,
                 std::size_t stride) {
  const std::size_t blocks = (out.size() + kBlockSize - 1) / kBlockSize;
  for (std::size_t b = first_block; b < blocks; b += stride) {
    RandomStream rng(derive_seed(seed, StreamTag::EstimatorBlock, b));
    const std::size_t end = std::min(out.size(), (b + 1) * kBlockSize);
    for (std::size_t k = b * kBlockSize; k < end; ++k) out[k] = rng.unit_exponential();
  }
}

}  // namespace

void OutageTarget::validate() const {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("outage target rate must be positive");
  }
  if (!(p_out > 0.0 && p_out < 1.0)) {
    throw std::invalid_argument("outage probability must lie in (0, 1)");
  }
  if (!(margin >= 1.0) || !std::isfinite(margin)) {
    throw std::invalid_argument("outage margin must be >= 1");
  }
}

OutageEstimate make_estimate(std::size_t failures, std::size_t n) {
  OutageEstimate e;
  e.n_samples = n;
  if (n == 0) return e;
  e.p_hat = static_cast<double>(failures) / static_cast<double>(n);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

double rayleigh_outage(Snr threshold, Snr mean) {
  return -std::expm1(-threshold.value / mean.value);
}

double outage_rate(Snr threshold, double p_out) {
  return (1.0 - p_out) * capacity(threshold);
}

PowerLevel min_power_for_outage(const OutageTarget& target, double mean_gain,
                                NoiseVariance noise) {
  target.validate();
  if (!(mean_gain > 0.0)) throw std::invalid_argument("mean gain must be positive");
  // The outage-probability factor is divided by -ln(1 - p_out) > 0.
  const double snr_factor = std::exp2(target.rate / (1.0 - target.p_out)) - 1.0;
  const double watts = target.margin * (noise.watts() / mean_gain) * snr_factor /
                       (-std::log1p(-target.p_out));
  return PowerLevel::from_watts(watts);
}

void require_estimator_precision(double p_out, std::size_t n, double epsilon) {
  const double se = std::sqrt(p_out * (1.0 - p_out) / static_cast<double>(n));
  if (n < kMinEstimatorSamples || se > epsilon / 3.0) {
    throw EstimatorPrecisionError(
        "outage estimator with " + std::to_string(n) + " samples has standard error " +
        std::to_string(se) + " at p_out; need <= epsilon/3 = " + std::to_string(epsilon / 3.0) +
        " (increase mc_samples)");
  }
}

std::vector<double> draw_unit_exponentials(std::size_t n, std::uint64_t seed, unsigned workers) {
  std::vector<double> out(n);
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers <= 1) {
    fill_blocks(out, seed, 0, 1);
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&out, seed, w, workers] { fill_blocks(out, seed, w, workers); });
  }
  return out;
}

SortedExponentials::SortedExponentials(std::vector<double> draws) : sorted_(std::move(draws)) {
  std::sort(sorted_.begin(), sorted_.end());
}

SortedExponentials SortedExponentials::draw(std::size_t n, std::uint64_t seed, unsigned workers) {
  return SortedExponentials(draw_unit_exponentials(n, seed, workers));
}

std::size_t SortedExponentials::count_below(double x) const {
  return static_cast<std::size_t>(std::lower_bound(sorted_.begin(), sorted_.end(), x) -
                                  sorted_.begin());
}

std::size_t SortedExponentials::count_at_most(double x) const {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), x) -
                                  sorted_.begin());
}

FadingPairs FadingPairs::draw(std::size_t n, std::uint64_t seed, unsigned workers) {
  FadingPairs p;
  p.signal = draw_unit_exponentials(n, derive_seed(seed, 0), workers);
  p.interference = draw_unit_exponentials(n, derive_seed(seed, 1), workers);
  return p;
}

OutageEstimate mc_outage_u1(double r_b, Snr b_at_ui, Snr mi_mean, const OutageTarget& target,
                            std::size_t n, RandomStream& rng) {
  if (n < kMinEstimatorSamples) {
    throw std::invalid_argument("mc_outage_u1 needs at least 1e4 samples");
  }
  std::size_t failures = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Snr mi(mi_mean.value * rng.unit_exponential());
    const MacState s{mi, b_at_ui, target.rate, r_b};
    if (classify_mi_at_ui(s) == DecodePath::Undecodable) ++failures;
  }
  return make_estimate(failures, n);
}

OutageEstimate mc_outage_u1(double r_b, Snr b_at_ui, Snr mi_mean, const OutageTarget& target,
                            const SortedExponentials& samples) {
  // Success region in the machine SNR is [direct, inf) united with [clean, oic_top]:
  //   direct:  gm >= gM (1 + gb)              (B treated as noise)
  //   clean:   gm >= gM                       (after cancelling B)
  //   oic_top: gm <= gb / (2^r_b - 1) - 1     (B decodable with Mi as noise)
  const double mean = mi_mean.value;
  const double gm_min = min_snr_for_rate(target.rate).value;
  const double direct = gm_min * (1.0 + b_at_ui.value) / mean;
  const double clean = gm_min / mean;
  const double gr = min_snr_for_rate(r_b).value;
  const double oic_top = gr > 0.0 ? (b_at_ui.value / gr - 1.0) / mean
                                  : std::numeric_limits<double>::infinity();

  const std::size_t n = samples.size();
  std::size_t success = n - samples.count_below(direct);
  if (oic_top >= clean) {
    const std::size_t hi = oic_top < direct ? samples.count_at_most(oic_top)
                                            : samples.count_below(direct);
    const std::size_t lo = samples.count_below(clean);
    if (hi > lo) success += hi - lo;
  }
  return make_estimate(n - success, n);
}

OutageEstimate mc_outage_u2(PowerLevel p_uj, PowerLevel p_ui, double ui_mi_mean,
                            double uj_mi_mean, NoiseVariance noise_m,
                            const OutageTarget& target, std::size_t n, RandomStream& rng) {
  if (n < kMinEstimatorSamples) {
    throw std::invalid_argument("mc_outage_u2 needs at least 1e4 samples");
  }
  FadingPairs pairs;
  pairs.signal.resize(n);
  pairs.interference.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    pairs.signal[k] = rng.unit_exponential();
    pairs.interference[k] = rng.unit_exponential();
  }
  return mc_outage_u2(p_uj, p_ui, ui_mi_mean, uj_mi_mean, noise_m, target, pairs);
}

OutageEstimate mc_outage_u2(PowerLevel p_uj, PowerLevel p_ui, double ui_mi_mean,
                            double uj_mi_mean, NoiseVariance noise_m,
                            const OutageTarget& target, const FadingPairs& samples) {
  const double signal_mean = snr(p_ui, ui_mi_mean, noise_m).value;
  const double interference_mean = snr(p_uj, uj_mi_mean, noise_m).value;
  std::size_t failures = 0;
  const std::size_t n = samples.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Snr s(signal_mean * samples.signal[k]);
    const Snr i(interference_mean * samples.interference[k]);
    if (!fits(target.rate, capacity(sinr(s, i)))) ++failures;
  }
  return make_estimate(failures, n);
}

}  // namespace d2d
