#include "d2d/channel.hpp"

#include <stdexcept>
#include <string>

namespace d2d {

PowerLevel PowerLevel::from_watts(double watts) {
  if (!std::isfinite(watts) || watts < 0.0) {
    throw std::invalid_argument("power must be finite and non-negative, got " +
                                std::to_string(watts));
  }
  return PowerLevel(watts);
}

PowerLevel PowerLevel::from_dbm(double dbm) { return dbm_to_watts(dbm); }

double PowerLevel::dbm() const { return watts_to_dbm(*this); }

NoiseVariance NoiseVariance::from_watts(double watts) {
  if (!std::isfinite(watts) || watts <= 0.0) {
    throw std::invalid_argument("noise variance must be finite and positive");
  }
  return NoiseVariance(watts);
}

NoiseVariance NoiseVariance::from_dbm(double dbm) {
  return from_watts(dbm_to_watts(dbm).watts());
}

PowerLevel dbm_to_watts(double dbm) {
  if (!std::isfinite(dbm)) throw std::invalid_argument("dBm value must be finite");
  return PowerLevel::from_watts(std::pow(10.0, (dbm - 30.0) / 10.0));
}

double watts_to_dbm(PowerLevel p) { return 10.0 * std::log10(p.watts()) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double pathloss_db(double distance_m) {
  if (!(distance_m >= 1.0)) {
    throw std::domain_error("path-loss model requires distance >= 1 m");
  }
  return -(35.74 * std::log10(distance_m) + 30.94);
}

double pathloss_gain(double distance_m) { return db_to_linear(pathloss_db(distance_m)); }

Snr snr(PowerLevel p, double gain, NoiseVariance n) {
  return Snr(p.watts() * gain / n.watts());
}

}  // namespace d2d
