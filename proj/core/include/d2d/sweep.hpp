#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "d2d/config.hpp"
#include "d2d/simulator.hpp"

namespace d2d {

inline constexpr std::string_view kCsvSchema = "d2dsim-csv v1";

/// One configuration of a run: the scheme, its csi mode (none for reference
/// schemes) and the sweep value, if any.
struct RunPoint {
  std::optional<double> sweep_value;
  Scheme scheme = Scheme::U1;
  std::optional<CsiMode> csi;
  ScenarioConfig config;
};

struct SweepRow {
  std::optional<double> sweep_value;
  Scheme scheme = Scheme::U1;
  std::optional<CsiMode> csi;
  RunMetrics metrics;
};

/// Expands a RunSpec into run points in output order: sweep value ascending,
/// then scheme, then csi mode. Reference schemes appear once per sweep value.
std::vector<RunPoint> expand(const RunSpec& spec);

/// Runs every point, up to `workers` at a time. Row order is fixed by expand().
std::vector<SweepRow> run_sweep(const RunSpec& spec, unsigned workers = 1);

const std::vector<std::string_view>& csv_columns();

std::string format_csv(const RunSpec& spec, const std::vector<SweepRow>& rows);

/// Parsed CSV: data rows as strings, in file order. Comment lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

struct ManifestInfo {
  std::string version;
  double wall_clock_s = 0.0;
  PowerLevel machine_power;
};

/// Re-parsable config text followed by comment lines with run metadata.
std::string format_manifest(const RunSpec& spec, const std::vector<SweepRow>& rows,
                            const ManifestInfo& info);

std::string_view version();

}  // namespace d2d
