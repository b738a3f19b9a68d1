#pragma once

#include <functional>
#include <optional>

#include "d2d/channel.hpp"
#include "d2d/mac_region.hpp"

namespace d2d {

/// How the downlink rate at the cellular receiver Uj accounts for the machine
/// transmitter's interference.
enum class RateModel {
  Exact,        ///< C(g_b_uj / (1 + g_mi_uj))
  Approximate,  ///< C(g_b_uj), machine interference neglected
};

/// (power, rate) chosen for the adapted cellular transmitter in one epoch.
struct TxDecision {
  PowerLevel power;
  double rate = 0.0;
  std::optional<DecodePath> predicted_path;  ///< unknown under partial CSI
  bool machine_outage = false;  ///< machine link lost regardless of the decision
  bool infeasible = false;      ///< outage target unreachable even unhindered
  int estimator_calls = 0;
};

/// Result of a monotone feasibility search over [lo, hi].
struct BisectionResult {
  double value = 0.0;
  double outage = 0.0;  ///< estimate at value (NaN if value was never evaluated)
  int calls = 0;
  bool converged_on_tolerance = false;
};

struct BisectionSettings {
  double p_out = 0.1;
  double epsilon = 0.01;
  double width_floor = 1e-4;
};

/// Largest x in [lo, hi] with outage(x) <= p_out, for outage non-decreasing in x
/// and outage(lo) <= p_out (checked by the caller). Evaluates hi first and
/// returns it if feasible; otherwise halves the bracket, stopping early when a
/// feasible midpoint lies within epsilon of p_out or when the bracket is no
/// wider than width_floor. Always returns the feasible bracket end.
BisectionResult bisect_feasible(double lo, double hi, const std::function<double(double)>& outage,
                                const BisectionSettings& s);

/// Upper bound on outage() calls made by bisect_feasible for a bracket of this width.
int max_bisection_calls(double range, double width_floor);

}  // namespace d2d
