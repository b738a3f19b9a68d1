#pragma once

// Plain-text run configuration.
//
// One "key = value" per line; '#' starts a comment. Keys absent from the file
// keep their defaults. scheme and csi accept comma lists; a run covers every
// listed scheme, crossed with every csi mode for the underlay schemes.
// "sweep = key=v1,v2,..." varies one numeric key.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/scenario.hpp"

namespace d2d {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Sweep {
  std::string key;
  std::vector<double> values;
};

struct RunSpec {
  ScenarioConfig base;
  std::vector<Scheme> schemes{Scheme::U1};
  std::vector<CsiMode> csi_modes{CsiMode::Full};
  std::optional<Sweep> sweep;
};

/// Keys accepted by the config file, in canonical output order.
const std::vector<std::string_view>& config_keys();

/// Numeric keys a sweep may vary.
bool is_sweepable(std::string_view key);

/// Sets one numeric key on cfg. Throws ConfigError for unknown keys.
void set_numeric(ScenarioConfig& cfg, std::string_view key, double value);

/// "key=v1,v2,...". Throws ConfigError on malformed text or a non-sweepable key.
Sweep parse_sweep(std::string_view text);

RunSpec parse_config_text(std::string_view text);
RunSpec parse_config(const std::filesystem::path& path);

/// Canonical config text; parse_config_text(format_config(s)) reproduces s exactly.
std::string format_config(const RunSpec& spec);

/// Shortest round-trip decimal form of x (17 significant digits).
std::string format_double(double x);

}  // namespace d2d
