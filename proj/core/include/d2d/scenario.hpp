#pragma once

// Scenario description and geometry. Defaults reproduce the single-pair
// reference setting; see README for the parameter table.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "d2d/channel.hpp"
#include "d2d/decision.hpp"
#include "d2d/outage.hpp"
#include "d2d/random.hpp"
#include "d2d/scheduler.hpp"

namespace d2d {

enum class Scheme { U1, U2, R1, R2 };
enum class CsiMode { Full, Partial };
enum class Placement {
  Fixed,    ///< relays at d_max/2 (one pair: plus a cell-edge cellular user)
  Uniform,  ///< relay distances uniform in [10, d_max/2], uniform angle
};

std::string_view to_string(Scheme s);
std::string_view to_string(CsiMode c);
std::string_view to_string(SchedulerKind k);
std::string_view to_string(Placement p);
std::string_view to_string(RateModel m);

constexpr bool is_downlink(Scheme s) { return s == Scheme::U1 || s == Scheme::R1; }
constexpr bool is_underlay(Scheme s) { return s == Scheme::U1 || s == Scheme::U2; }

/// Raised when a machine link cannot meet its outage target even without interference.
class InfeasibleScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  Scheme scheme = Scheme::U1;
  CsiMode csi = CsiMode::Full;
  SchedulerKind scheduler = SchedulerKind::MaxR;
  RateModel rate_model = RateModel::Exact;
  Placement placement = Placement::Fixed;
  int pairs = 1;

  double r_m = 0.5;
  double s_m = 10.0;
  double p_out = 0.1;
  double epsilon = 0.01;
  double width_floor = 1e-4;
  double p_b_max_dbm = 46.0;
  double p_u_max_dbm = 24.0;
  double d_max = 500.0;
  double machine_gain_db = -60.0;
  double noise_m_dbm = -97.5;
  double noise_u_dbm = -97.5;
  double noise_b_dbm = -116.5;
  double pf_time_constant = FairnessState::kDefaultTimeConstant;

  std::size_t epochs = 100'000;
  std::size_t mc_samples = 100'000;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;

  OutageTarget target() const { return OutageTarget{r_m, p_out, s_m}; }
  PowerLevel p_b_max() const { return dbm_to_watts(p_b_max_dbm); }
  PowerLevel p_u_max() const { return dbm_to_watts(p_u_max_dbm); }
  NoiseVariance noise_m() const { return NoiseVariance::from_dbm(noise_m_dbm); }
  NoiseVariance noise_u() const { return NoiseVariance::from_dbm(noise_u_dbm); }
  NoiseVariance noise_b() const { return NoiseVariance::from_dbm(noise_b_dbm); }
  double machine_gain() const { return db_to_linear(machine_gain_db); }

  /// Machine transmit power dimensioned with the outage-margin rule.
  PowerLevel machine_power() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

/// Node positions and mean gains. User k = 0..pairs-1 is the relay of machine
/// k; further users are cellular-only. Gains are reciprocal, so one entry per
/// node pair serves both directions.
struct Topology {
  std::vector<Point> users;
  std::vector<Point> machines;
  std::vector<double> b_u;               ///< B <-> U_k
  std::vector<std::vector<double>> m_u;  ///< M_i <-> U_k; k == i is the D2D link

  std::size_t pairs() const noexcept { return machines.size(); }
  std::size_t user_count() const noexcept { return users.size(); }

  /// (i, j) with i a machine pair and j != i a cellular user, in lexicographic order.
  std::vector<std::pair<int, int>> candidate_pairs() const;
};

/// Cross links use the path-loss model at max(1 m, planar distance).
Topology build_scenario(const ScenarioConfig& cfg, RandomStream& rng);
Topology build_scenario(const ScenarioConfig& cfg);

/// One block-fading realization with the same layout as the topology gains.
struct FadingDraw {
  std::vector<double> b_u;
  std::vector<std::vector<double>> m_u;

  /// Draw order: b_u[0..K), then m_u row by row.
  static FadingDraw draw(const Topology& topo, RandomStream& rng);
};

}  // namespace d2d
