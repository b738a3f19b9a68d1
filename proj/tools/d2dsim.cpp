// d2dsim: batch runner for the underlay and reference schemes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "d2d/config.hpp"
#include "d2d/outage.hpp"
#include "d2d/sweep.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kInfeasible = 2, kPrecision = 3 };

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate D2D underlay of machine-type links on a cellular cell"};
  std::string config_path;
  std::string out_path;
  std::string manifest_path;
  std::string sweep_text;
  std::optional<std::uint64_t> seed;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("-c,--config", config_path, "Config file (key = value lines); defaults if omitted")
      ->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_path, "CSV output path (stdout if omitted)");
  app.add_option("-m,--manifest", manifest_path,
                 "Manifest output path (default: <out>.manifest when --out is set)");
  app.add_option("-s,--seed", seed, "Override the config seed");
  app.add_option("-w,--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--sweep", sweep_text, "Sweep spec key=v1,v2,...");
  app.add_flag_function("--version", [](std::int64_t) {
    std::cout << "d2dsim " << d2d::version() << '\n';
    std::exit(kOk);
  }, "Print version and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  d2d::RunSpec spec;
  try {
    if (!config_path.empty()) spec = d2d::parse_config(config_path);
    if (seed) spec.base.seed = *seed;
    if (!sweep_text.empty()) spec.sweep = d2d::parse_sweep(sweep_text);
    // Re-validate after overrides.
    spec = d2d::parse_config_text(d2d::format_config(spec));
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<d2d::SweepRow> rows;
  try {
    rows = d2d::run_sweep(spec, workers);
  } catch (const d2d::InfeasibleScenario& e) {
    std::cerr << "infeasible scenario: " << e.what() << '\n';
    return kInfeasible;
  } catch (const d2d::EstimatorPrecisionError& e) {
    std::cerr << "estimator precision: " << e.what() << '\n';
    return kPrecision;
  } catch (const d2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string csv = d2d::format_csv(spec, rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else if (!write_file(out_path, csv)) {
    std::cerr << "cannot write " << out_path << '\n';
    return kConfigError;
  }

  if (manifest_path.empty() && !out_path.empty()) manifest_path = out_path + ".manifest";
  if (!manifest_path.empty()) {
    const d2d::ManifestInfo info{std::string(d2d::version()), elapsed,
                                 spec.base.machine_power()};
    if (!write_file(manifest_path, d2d::format_manifest(spec, rows, info))) {
      std::cerr << "cannot write " << manifest_path << '\n';
      return kConfigError;
    }
  }
  return kOk;
}
