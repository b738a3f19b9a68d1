#pragma once

// Brute-force search over (power, rate) grids for the full-CSI decisions.
// Feasibility is re-derived from the decoding inequalities in oracles.hpp.

#include <algorithm>
#include <cmath>

#include "oracles.hpp"

namespace oracle {

/// Downlink instance in linear SNR units per watt of B power, so b(P) = P * k.
struct DownlinkInstance {
  double p_max;    // W
  double k_b_ui;   // SNR at Ui per watt of B power
  double k_b_uj;   // SNR at Uj per watt of B power
  double m_ui;     // machine SNR at Ui
  double m_uj;     // machine SNR at Uj (0 for the approximate rate model)
  double r_m;
};

inline bool downlink_feasible(const DownlinkInstance& x, double p, double r) {
  const double tol = 1e-9;
  const bool machine_ok = mac_decodable(x.m_ui, p * x.k_b_ui, x.r_m, r, tol);
  const bool uj_ok = r <= log2p1(p * x.k_b_uj / (1.0 + x.m_uj)) + tol;
  return machine_ok && uj_ok;
}

struct GridResult {
  double best_rate = -1.0;  // -1: nothing feasible
  double rate_step = 0.0;
  double power_step = 0.0;
};

inline GridResult downlink_grid(const DownlinkInstance& x, int np, int nr) {
  GridResult g;
  const double r_top = log2p1(x.p_max * x.k_b_uj);
  g.rate_step = r_top / (nr - 1);
  g.power_step = x.p_max / (np - 1);
  for (int a = 0; a < np; ++a) {
    const double p = a * g.power_step;
    for (int b = nr - 1; b >= 0; --b) {
      const double r = b * g.rate_step;
      if (r <= g.best_rate) break;
      if (downlink_feasible(x, p, r)) {
        g.best_rate = r;
        break;
      }
    }
  }
  return g;
}

/// Uplink instance. SNRs per watt of Uj power; relay Ui fixed at p_max.
struct UplinkInstance {
  double p_max;
  double k_uj_b;   // Uj SNR at B per watt
  double ui_b;     // relay SNR at B (at p_max)
  double ui_mi;    // relay SNR at Mi (at p_max)
  double k_uj_mi;  // Uj SNR at Mi per watt
  double r_m;
};

inline bool uplink_feasible(const UplinkInstance& x, double p, double r) {
  const double tol = 1e-9;
  const double gm = std::exp2(x.r_m) - 1.0;
  const bool machine_alive = x.ui_mi >= gm;
  const bool machine_ok = !machine_alive || x.ui_mi / (1.0 + p * x.k_uj_mi) >= gm * (1.0 - 1e-12);
  return machine_ok && mac_decodable(p * x.k_uj_b, x.ui_b, r, x.r_m, tol);
}

inline GridResult uplink_grid(const UplinkInstance& x, int np, int nr) {
  GridResult g;
  const double r_top = log2p1(x.p_max * x.k_uj_b);
  g.rate_step = r_top / (nr - 1);
  g.power_step = x.p_max / (np - 1);
  for (int a = 0; a < np; ++a) {
    const double p = a * g.power_step;
    for (int b = nr - 1; b >= 0; --b) {
      const double r = b * g.rate_step;
      if (r <= g.best_rate) break;
      if (uplink_feasible(x, p, r)) {
        g.best_rate = r;
        break;
      }
    }
  }
  return g;
}

}  // namespace oracle
