#include "d2d/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace d2d {

namespace {

void require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string(key) + ": " + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::U1: return "U1";
    case Scheme::U2: return "U2";
    case Scheme::R1: return "R1";
    case Scheme::R2: return "R2";
  }
  return "?";
}

std::string_view to_string(CsiMode c) { return c == CsiMode::Full ? "full" : "partial"; }

std::string_view to_string(SchedulerKind k) {
  return k == SchedulerKind::MaxR ? "maxr" : "pf";
}

std::string_view to_string(Placement p) { return p == Placement::Fixed ? "fixed" : "uniform"; }

std::string_view to_string(RateModel m) {
  return m == RateModel::Exact ? "exact" : "approximate";
}

void ScenarioConfig::validate() const {
  require(finite(r_m) && r_m > 0.0 && r_m <= 20.0, "r_m", "must lie in (0, 20]");
  require(finite(s_m) && s_m >= 1.0, "s_m", "must be >= 1");
  require(p_out > 0.0 && p_out < 1.0, "p_out", "must lie in (0, 1)");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon", "must lie in (0, 1)");
  require(width_floor > 0.0 && width_floor < 1.0, "width_floor", "must lie in (0, 1)");
  require(finite(p_b_max_dbm) && p_b_max_dbm >= -30.0 && p_b_max_dbm <= 80.0, "p_b_max_dbm",
          "must lie in [-30, 80]");
  require(finite(p_u_max_dbm) && p_u_max_dbm >= -30.0 && p_u_max_dbm <= 60.0, "p_u_max_dbm",
          "must lie in [-30, 60]");
  require(finite(d_max) && d_max >= 20.0, "d_max", "must be >= 20 m");
  require(finite(machine_gain_db) && machine_gain_db < 0.0, "machine_gain_db",
          "must be negative");
  require(finite(noise_m_dbm), "noise_m_dbm", "must be finite");
  require(finite(noise_u_dbm), "noise_u_dbm", "must be finite");
  require(finite(noise_b_dbm), "noise_b_dbm", "must be finite");
  require(pf_time_constant >= 1.0, "pf_time_constant", "must be >= 1");
  require(pairs >= 1 && pairs <= 64, "pairs", "must lie in [1, 64]");
  require(epochs >= 1, "epochs", "must be >= 1");
  require(mc_samples >= kMinEstimatorSamples, "mc_samples", "must be >= 10000");
}

PowerLevel ScenarioConfig::machine_power() const {
  return min_power_for_outage(target(), machine_gain(), noise_u());
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<std::pair<int, int>> Topology::candidate_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(pairs()); ++i) {
    for (int j = 0; j < static_cast<int>(user_count()); ++j) {
      if (j != i) out.emplace_back(i, j);
    }
  }
  return out;
}

Topology build_scenario(const ScenarioConfig& cfg, RandomStream& rng) {
  cfg.validate();
  const double half = cfg.d_max / 2.0;
  const auto pairs = static_cast<std::size_t>(cfg.pairs);

  Topology t;
  for (std::size_t k = 0; k < pairs; ++k) {
    double r = half;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(pairs);
    if (cfg.placement == Placement::Uniform) {
      r = rng.uniform(10.0, half);
      angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    t.users.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  // Machines sit at their relay's position; the D2D gain is fixed, not geometric.
  t.machines = t.users;
  if (pairs == 1) {
    // The single pair is served alongside one cellular user at the cell edge.
    t.users.push_back({-cfg.d_max, 0.0});
  }

  const Point bs{0.0, 0.0};
  for (const Point& u : t.users) t.b_u.push_back(pathloss_gain(std::max(1.0, distance(bs, u))));
  t.m_u.assign(pairs, std::vector<double>(t.users.size()));
  for (std::size_t i = 0; i < pairs; ++i) {
    for (std::size_t k = 0; k < t.users.size(); ++k) {
      t.m_u[i][k] = k == i ? cfg.machine_gain()
                           : pathloss_gain(std::max(1.0, distance(t.machines[i], t.users[k])));
    }
  }
  return t;
}

Topology build_scenario(const ScenarioConfig& cfg) {
  RandomStream rng(derive_seed(cfg.seed, StreamTag::Topology));
  return build_scenario(cfg, rng);
}

FadingDraw FadingDraw::draw(const Topology& topo, RandomStream& rng) {
  FadingDraw f;
  f.b_u.resize(topo.user_count());
  for (double& x : f.b_u) x = sample_fading(rng);
  f.m_u.assign(topo.pairs(), std::vector<double>(topo.user_count()));
  for (auto& row : f.m_u) {
    for (double& x : row) x = sample_fading(rng);
  }
  return f;
}

}  // namespace d2d
