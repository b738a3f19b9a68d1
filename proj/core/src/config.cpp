#include "d2d/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace d2d {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string s(trim(text));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError("invalid number '" + s + "' for " + std::string(key));
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view key) {
  const std::string_view s = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("invalid integer '" + std::string(s) + "' for " + std::string(key));
  }
  return v;
}

Scheme parse_scheme(std::string_view s) {
  const std::string v = lower(s);
  if (v == "u1") return Scheme::U1;
  if (v == "u2") return Scheme::U2;
  if (v == "r1") return Scheme::R1;
  if (v == "r2") return Scheme::R2;
  throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

CsiMode parse_csi(std::string_view s) {
  const std::string v = lower(s);
  if (v == "full" || v == "f-csi" || v == "fcsi") return CsiMode::Full;
  if (v == "partial" || v == "p-csi" || v == "pcsi") return CsiMode::Partial;
  throw ConfigError("unknown csi mode '" + std::string(s) + "'");
}

SchedulerKind parse_scheduler(std::string_view s) {
  const std::string v = lower(s);
  if (v == "maxr") return SchedulerKind::MaxR;
  if (v == "pf") return SchedulerKind::ProportionalFair;
  throw ConfigError("unknown scheduler '" + std::string(s) + "'");
}

RateModel parse_rate_model(std::string_view s) {
  const std::string v = lower(s);
  if (v == "exact") return RateModel::Exact;
  if (v == "approximate") return RateModel::Approximate;
  throw ConfigError("unknown rate_model '" + std::string(s) + "'");
}

Placement parse_placement(std::string_view s) {
  const std::string v = lower(s);
  if (v == "fixed") return Placement::Fixed;
  if (v == "uniform") return Placement::Uniform;
  throw ConfigError("unknown placement '" + std::string(s) + "'");
}

template <class T, class F>
std::vector<T> parse_list(std::string_view value, F parse_one) {
  std::vector<T> out;
  for (std::string_view item : split(value, ',')) {
    const T v = parse_one(item);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

struct NumericKey {
  std::string_view name;
  double ScenarioConfig::*field;
};

constexpr NumericKey kDoubleKeys[] = {
    {"r_m", &ScenarioConfig::r_m},
    {"s_m", &ScenarioConfig::s_m},
    {"p_out", &ScenarioConfig::p_out},
    {"epsilon", &ScenarioConfig::epsilon},
    {"width_floor", &ScenarioConfig::width_floor},
    {"p_b_max_dbm", &ScenarioConfig::p_b_max_dbm},
    {"p_u_max_dbm", &ScenarioConfig::p_u_max_dbm},
    {"d_max", &ScenarioConfig::d_max},
    {"machine_gain_db", &ScenarioConfig::machine_gain_db},
    {"noise_m_dbm", &ScenarioConfig::noise_m_dbm},
    {"noise_u_dbm", &ScenarioConfig::noise_u_dbm},
    {"noise_b_dbm", &ScenarioConfig::noise_b_dbm},
    {"pf_time_constant", &ScenarioConfig::pf_time_constant},
};

const NumericKey* find_double_key(std::string_view key) {
  for (const NumericKey& k : kDoubleKeys) {
    if (k.name == key) return &k;
  }
  return nullptr;
}

std::size_t to_count(double value, std::string_view key) {
  if (!(value >= 0.0) || value != std::floor(value) || value > 9.0e15) {
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

void apply(RunSpec& spec, std::string_view key, std::string_view value) {
  ScenarioConfig& cfg = spec.base;
  if (key == "scheme") {
    spec.schemes = parse_list<Scheme>(value, parse_scheme);
  } else if (key == "csi") {
    spec.csi_modes = parse_list<CsiMode>(value, parse_csi);
  } else if (key == "scheduler") {
    cfg.scheduler = parse_scheduler(value);
  } else if (key == "rate_model") {
    cfg.rate_model = parse_rate_model(value);
  } else if (key == "placement") {
    cfg.placement = parse_placement(value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(value, key);
  } else if (key == "epochs" || key == "mc_samples" || key == "pairs") {
    set_numeric(cfg, key, static_cast<double>(parse_u64(value, key)));
  } else if (key == "sweep") {
    spec.sweep = parse_sweep(value);
  } else if (find_double_key(key) != nullptr) {
    set_numeric(cfg, key, parse_double(value, key));
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'");
  }
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k > 0) out += ',';
    out += to_string(xs[k]);
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k{"scheme", "csi", "scheduler", "rate_model", "placement",
                                    "pairs"};
    for (const NumericKey& d : kDoubleKeys) k.push_back(d.name);
    k.insert(k.end(), {"epochs", "mc_samples", "seed", "sweep"});
    return k;
  }();
  return keys;
}

bool is_sweepable(std::string_view key) {
  return find_double_key(key) != nullptr || key == "pairs" || key == "epochs" ||
         key == "mc_samples";
}

void set_numeric(ScenarioConfig& cfg, std::string_view key, double value) {
  if (const NumericKey* k = find_double_key(key)) {
    cfg.*(k->field) = value;
  } else if (key == "pairs") {
    cfg.pairs = static_cast<int>(std::min<std::size_t>(to_count(value, key), 1'000'000));
  } else if (key == "epochs") {
    cfg.epochs = to_count(value, key);
  } else if (key == "mc_samples") {
    cfg.mc_samples = to_count(value, key);
  } else {
    throw ConfigError("unknown numeric key '" + std::string(key) + "'");
  }
}

Sweep parse_sweep(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("sweep must be key=v1,v2,...");
  Sweep s;
  s.key = std::string(trim(text.substr(0, eq)));
  if (!is_sweepable(s.key)) throw ConfigError("unknown sweep key '" + s.key + "'");
  for (std::string_view v : split(text.substr(eq + 1), ',')) {
    s.values.push_back(parse_double(v, s.key));
  }
  return s;
}

RunSpec parse_config_text(std::string_view text) {
  RunSpec spec;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply(spec, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  try {
    spec.base.validate();
    if (spec.sweep) {
      for (double v : spec.sweep->values) {
        ScenarioConfig c = spec.base;
        set_numeric(c, spec.sweep->key, v);
        c.validate();
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

RunSpec parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_config(const RunSpec& spec) {
  const ScenarioConfig& c = spec.base;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  line("scheme", join(spec.schemes));
  line("csi", join(spec.csi_modes));
  line("scheduler", std::string(to_string(c.scheduler)));
  line("rate_model", std::string(to_string(c.rate_model)));
  line("placement", std::string(to_string(c.placement)));
  line("pairs", std::to_string(c.pairs));
  for (const NumericKey& k : kDoubleKeys) line(k.name, format_double(c.*(k.field)));
  line("epochs", std::to_string(c.epochs));
  line("mc_samples", std::to_string(c.mc_samples));
  line("seed", std::to_string(c.seed));
  if (spec.sweep) {
    std::string v = spec.sweep->key + "=";
    for (std::size_t k = 0; k < spec.sweep->values.size(); ++k) {
      if (k > 0) v += ',';
      v += format_double(spec.sweep->values[k]);
    }
    line("sweep", v);
  }
  return out;
}

}  // namespace d2d
