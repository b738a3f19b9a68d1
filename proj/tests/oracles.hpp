#pragma once

// Reference computations used by the tests. Written from the model equations
// on plain doubles; nothing here calls into the library.

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

inline double log2p1(double x) { return std::log2(1.0 + x); }
inline double dbm_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double pl_gain(double d) { return std::pow(10.0, -(35.74 * std::log10(d) + 30.94) / 10.0); }

/// P[X in [a, b]] for X exponential with the given mean; b may be +inf.
inline double exp_interval(double a, double b, double mean) {
  if (!(b > a)) return 0.0;
  const double lo = std::exp(-std::max(a, 0.0) / mean);
  const double hi = std::isinf(b) ? 0.0 : std::exp(-b / mean);
  return lo - hi;
}

/// Machine outage at the relay when B sends rate r_b with SNR b at the relay
/// and the machine SNR is exponential with mean mu.
/// Success: m >= gm (1 + b), or [b/(1+m) >= 2^r_b - 1 and m >= gm].
inline double u1_outage(double r_b, double b, double mu, double r_m) {
  const double gm = std::exp2(r_m) - 1.0;
  const double direct_lo = gm * (1.0 + b);
  const double need = std::exp2(r_b) - 1.0;
  double oic_hi = need <= 0.0 ? std::numeric_limits<double>::infinity() : b / need - 1.0;
  double success = exp_interval(direct_lo, std::numeric_limits<double>::infinity(), mu);
  // OIC interval [gm, oic_hi] minus the part already counted in the direct interval.
  oic_hi = std::min(oic_hi, direct_lo);
  success += exp_interval(gm, oic_hi, mu);
  return 1.0 - success;
}

/// P[s < gm (1 + i)] for independent exponentials with means s_mean, i_mean.
inline double u2_outage(double s_mean, double i_mean, double r_m) {
  const double gm = std::exp2(r_m) - 1.0;
  if (i_mean <= 0.0) return 1.0 - std::exp(-gm / s_mean);
  return 1.0 - std::exp(-gm / s_mean) / (1.0 + gm * i_mean / s_mean);
}

/// Two-user MAC with single-user decoding: can the receiver recover the
/// desired rate r_sig with the interferer at rate r_int?
inline bool mac_decodable(double sig, double intf, double r_sig, double r_int, double tol = 1e-12) {
  if (r_sig <= log2p1(sig / (1.0 + intf)) + tol) return true;
  return r_int <= log2p1(intf / (1.0 + sig)) + tol && r_sig <= log2p1(sig) + tol;
}

}  // namespace oracle
