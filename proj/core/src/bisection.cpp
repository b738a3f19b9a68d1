#include "d2d/decision.hpp"

#include <cmath>
#include <limits>

namespace d2d {

BisectionResult bisect_feasible(double lo, double hi, const std::function<double(double)>& outage,
                                const BisectionSettings& s) {
  BisectionResult r;
  r.value = lo;
  r.outage = std::numeric_limits<double>::quiet_NaN();
  if (!(hi > lo)) return r;

  const double top = outage(hi);
  ++r.calls;
  if (top <= s.p_out) {
    r.value = hi;
    r.outage = top;
    return r;
  }

  while (hi - lo > s.width_floor) {
    const double mid = 0.5 * (lo + hi);
    const double p = outage(mid);
    ++r.calls;
    if (p <= s.p_out) {
      lo = mid;
      r.value = lo;
      r.outage = p;
      if (s.p_out - p <= s.epsilon) {
        r.converged_on_tolerance = true;
        break;
      }
    } else {
      hi = mid;
    }
  }
  return r;
}

int max_bisection_calls(double range, double width_floor) {
  if (!(range > width_floor)) return 1;
  return static_cast<int>(std::ceil(std::log2(range / width_floor))) + 1;
}

}  // namespace d2d
