#include "d2d/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace d2d {

#ifndef D2D_VERSION
#define D2D_VERSION "unknown"
#endif

std::string_view version() { return D2D_VERSION; }

std::vector<RunPoint> expand(const RunSpec& spec) {
  std::vector<std::optional<double>> values;
  if (spec.sweep) {
    std::vector<double> v = spec.sweep->values;
    std::stable_sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    values.assign(v.begin(), v.end());
  } else {
    values.push_back(std::nullopt);
  }

  std::vector<Scheme> schemes = spec.schemes;
  std::sort(schemes.begin(), schemes.end());
  std::vector<CsiMode> modes = spec.csi_modes;
  std::sort(modes.begin(), modes.end());

  std::vector<RunPoint> out;
  for (const auto& value : values) {
    ScenarioConfig cfg = spec.base;
    if (value) set_numeric(cfg, spec.sweep->key, *value);
    for (Scheme s : schemes) {
      if (!is_underlay(s)) {
        RunPoint p{value, s, std::nullopt, cfg};
        p.config.scheme = s;
        out.push_back(p);
        continue;
      }
      for (CsiMode m : modes) {
        RunPoint p{value, s, m, cfg};
        p.config.scheme = s;
        p.config.csi = m;
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<SweepRow> run_sweep(const RunSpec& spec, unsigned workers) {
  const std::vector<RunPoint> points = expand(spec);
  std::vector<SweepRow> rows(points.size());
  workers = std::max(1u, workers);

  auto run_point = [&](std::size_t k, unsigned inner_workers) {
    const RunPoint& p = points[k];
    rows[k] = SweepRow{p.sweep_value, p.scheme, p.csi, Simulator(p.config, inner_workers).run()};
  };

  if (workers == 1 || points.size() == 1) {
    for (std::size_t k = 0; k < points.size(); ++k) run_point(k, workers);
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        run_point(k, 1);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = points.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(points.size()));
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

const std::vector<std::string_view>& csv_columns() {
  static const std::vector<std::string_view> cols{
      "sweep_value",         "scheme",     "csi",        "mean_gamma_d",
      "mean_gamma_u",        "machine_outage",           "active_time_machine",
      "active_time_cellular", "se_gamma_d", "se_gamma_u", "se_machine_outage"};
  return cols;
}

std::string format_csv(const RunSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out = "# ";
  out += kCsvSchema;
  out += " sweep=";
  out += spec.sweep ? spec.sweep->key : "none";
  out += '\n';
  const auto& cols = csv_columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k > 0) out += ',';
    out += cols[k];
  }
  out += '\n';
  for (const SweepRow& r : rows) {
    const RunMetrics& m = r.metrics;
    out += r.sweep_value ? format_double(*r.sweep_value) : std::string();
    out += ',';
    out += to_string(r.scheme);
    out += ',';
    out += r.csi ? to_string(*r.csi) : "none";
    for (double v : {m.mean_gamma_d, m.mean_gamma_u, m.machine_outage, m.active_time_machine,
                     m.active_time_cellular, m.se_gamma_d, m.se_gamma_u, m.se_machine_outage}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column " + std::string(name));
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const std::string& cell = rows.at(row).at(column(name));
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("bad CSV number " + cell);
  return v;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::size_t s = 0;
    while (true) {
      const std::size_t pos = line.find(',', s);
      cells.emplace_back(line.substr(s, pos - s));
      if (pos == std::string_view::npos) break;
      s = pos + 1;
    }
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size()) throw std::invalid_argument("ragged CSV row");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

std::string format_manifest(const RunSpec& spec, const std::vector<SweepRow>& rows,
                            const ManifestInfo& info) {
  std::string out = format_config(spec);
  out += "# version: ";
  out += info.version;
  out += "\n# machine_power_w: ";
  out += format_double(info.machine_power.watts());
  out += "\n# machine_power_dbm: ";
  out += format_double(info.machine_power.dbm());
  out += "\n# wall_clock_s: ";
  out += format_double(info.wall_clock_s);
  out += '\n';
  for (const SweepRow& r : rows) {
    const RunMetrics& m = r.metrics;
    out += "# summary";
    if (r.sweep_value) out += " " + spec.sweep->key + "=" + format_double(*r.sweep_value);
    out += " scheme=";
    out += to_string(r.scheme);
    out += " csi=";
    out += r.csi ? to_string(*r.csi) : "none";
    out += " gamma_d=" + format_double(m.mean_gamma_d) + "+-" + format_double(m.se_gamma_d);
    out += " gamma_u=" + format_double(m.mean_gamma_u) + "+-" + format_double(m.se_gamma_u);
    out += " machine_outage=" + format_double(m.machine_outage) + "+-" +
           format_double(m.se_machine_outage);
    out += " infeasible=" + std::to_string(m.infeasible_decisions);
    out += '\n';
  }
  return out;
}

}  // namespace d2d
