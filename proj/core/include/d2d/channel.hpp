#pragma once

// Link-level primitives: power units, path loss, block Rayleigh fading,
// SNR and Shannon capacity. Every rate in the library is in bits/s/Hz.

#include <cmath>

#include "d2d/random.hpp"

namespace d2d {

/// Transmit or received power in watts.
class PowerLevel {
 public:
  constexpr PowerLevel() = default;

  static PowerLevel from_watts(double watts);
  static PowerLevel from_dbm(double dbm);

  constexpr double watts() const noexcept { return watts_; }
  double dbm() const;

  friend constexpr bool operator==(PowerLevel, PowerLevel) = default;
  friend constexpr auto operator<=>(PowerLevel a, PowerLevel b) { return a.watts_ <=> b.watts_; }

 private:
  constexpr explicit PowerLevel(double watts) : watts_(watts) {}
  double watts_ = 0.0;
};

/// Receiver noise power in watts; strictly positive.
class NoiseVariance {
 public:
  static NoiseVariance from_watts(double watts);
  static NoiseVariance from_dbm(double dbm);

  constexpr double watts() const noexcept { return watts_; }

 private:
  constexpr explicit NoiseVariance(double watts) : watts_(watts) {}
  double watts_;
};

/// Linear SNR or SINR, dimensionless and non-negative.
struct Snr {
  constexpr explicit Snr(double v = 0.0) : value(v) {}
  double value;

  friend constexpr bool operator==(Snr, Snr) = default;
  friend constexpr auto operator<=>(Snr, Snr) = default;
};

/// Mean power gain of a link, E[|h|^2]. Partial CSI exposes only this.
struct MeanGain {
  double value;
};

/// Power gain of one directed link in one epoch: mean gain times a unit-mean
/// exponential fading multiplier.
struct LinkGain {
  double mean_gain = 1.0;
  double fading = 1.0;

  constexpr double instantaneous() const noexcept { return mean_gain * fading; }
  constexpr MeanGain mean() const noexcept { return MeanGain{mean_gain}; }
};

PowerLevel dbm_to_watts(double dbm);
double watts_to_dbm(PowerLevel p);

/// Urban-macro NLOS path gain, -(35.74 log10(d) + 30.94) dB, for d >= 1 m.
double pathloss_db(double distance_m);
double pathloss_gain(double distance_m);

double db_to_linear(double db);

/// One block-fading power multiplier, Exp(1).
inline double sample_fading(RandomStream& rng) { return rng.unit_exponential(); }

/// p * g / n for an instantaneous power gain g.
Snr snr(PowerLevel p, double gain, NoiseVariance n);
inline Snr snr(PowerLevel p, const LinkGain& g, NoiseVariance n) {
  return snr(p, g.instantaneous(), n);
}

/// SINR of a desired signal against one interferer, both relative to the same noise.
constexpr Snr sinr(Snr signal, Snr interference) {
  return Snr(signal.value / (1.0 + interference.value));
}

/// log2(1 + snr).
inline double capacity(Snr s) { return std::log2(1.0 + s.value); }

/// 2^rate - 1; the inverse of capacity.
inline Snr min_snr_for_rate(double rate) { return Snr(std::exp2(rate) - 1.0); }

}  // namespace d2d
