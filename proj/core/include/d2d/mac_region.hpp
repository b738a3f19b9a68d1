#pragma once

// Decodability on the two-user Gaussian multiple-access channel when the
// receiver can only decode or cancel single-user codebooks (no joint decoding,
// no time sharing).

#include <string_view>

#include "d2d/channel.hpp"

namespace d2d {

enum class DecodePath { DirectDecode, OicDecode, Undecodable };

std::string_view to_string(DecodePath p);

/// Desired and interfering transmitter as seen by one receiver.
struct MacState {
  Snr sig;
  Snr intf;
  double r_sig = 0.0;
  double r_int = 0.0;
};

/// Absolute slack, in bits/s/Hz, applied when comparing a rate to a capacity.
/// Operating points computed exactly on a region boundary stay decodable.
inline constexpr double kRateTolerance = 1e-12;

/// rate <= capacity, inclusive, with kRateTolerance slack.
constexpr bool fits(double rate, double cap) { return rate <= cap + kRateTolerance; }

/// Machine signal at the relay Ui with the downlink from B as interferer:
/// direct decode against B, else decode B, cancel and decode the machine signal
/// on a clean channel, else undecodable.
DecodePath classify_mi_at_ui(const MacState& s);

/// Cellular uplink Uj at B with the machine relay Ui (fixed rate R_M) as
/// interferer. Same predicate with the roles of the uplink.
DecodePath classify_uj_at_b(const MacState& s);

/// A rate ceiling that may be absent. min() against a finite bound is exact.
class RateCeiling {
 public:
  static constexpr RateCeiling unbounded() { return RateCeiling(false, 0.0); }
  static constexpr RateCeiling at_most(double r) { return RateCeiling(true, r); }

  constexpr bool bounded() const noexcept { return bounded_; }
  constexpr double value() const noexcept { return value_; }
  constexpr double clamp(double other) const noexcept {
    return bounded_ && value_ < other ? value_ : other;
  }

  friend constexpr bool operator==(RateCeiling, RateCeiling) = default;

 private:
  constexpr RateCeiling(bool b, double v) : bounded_(b), value_(v) {}
  bool bounded_;
  double value_;
};

/// Ui-side ceiling on the downlink rate R_B given the machine rate R_M:
/// zero if the machine signal cannot be decoded even alone, C(gb/(1+gm)) while
/// the machine signal needs B cancelled first, unbounded otherwise.
RateCeiling max_rate_b_at_ui(Snr b, Snr m, double r_m);

/// Largest uplink rate B can decode from Uj while Ui transmits at r_m:
/// C(g_uj) if Ui is decodable against Uj (and then cancelled), else C(g_uj/(1+g_ui)).
double uj_rate_ceiling_at_b(Snr uj, Snr ui, double r_m);

}  // namespace d2d
