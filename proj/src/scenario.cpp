#include "setsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace setsim {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw ParseError("");
    if (!std::isfinite(d)) throw ParseError("");
    return d;
  } catch (const std::exception&) {
    throw ParseError("invalid numeric value for '" + key + "': " + v);
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return i;
  } catch (const std::exception&) {
    throw ParseError("invalid integer value for '" + key + "': " + v);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const unsigned long long i = std::stoull(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return i;
  } catch (const std::exception&) {
    throw ParseError("invalid seed value for '" + key + "': " + v);
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError("empty element in list for '" + key + "'");
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ParseError("empty list for '" + key + "'");
  return out;
}

std::string fmt(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

// One table drives parsing, overrides and serialization so the three stay
// in sync by construction.
struct FieldIo {
  std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

const std::vector<std::pair<std::string, FieldIo>>& field_table() {
  static const std::vector<std::pair<std::string, FieldIo>> table = {
      {"bandwidth_hz",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.bandwidth_hz = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.bandwidth_hz); }}},
      {"num_rbs",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.num_rbs = static_cast<int>(parse_int(k, v)); },
        [](const ScenarioConfig& c) { return std::to_string(c.num_rbs); }}},
      {"tti_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.tti_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.tti_ms); }}},
      {"sim_duration_s",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.sim_duration_s = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.sim_duration_s); }}},
      {"num_ues",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.num_ues = static_cast<int>(parse_int(k, v)); },
        [](const ScenarioConfig& c) { return std::to_string(c.num_ues); }}},
      {"inter_enodeb_distance_m",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.inter_enodeb_distance_m = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.inter_enodeb_distance_m); }}},
      {"ue_speed_mps",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.ue_speed_mps = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.ue_speed_mps); }}},
      {"tx_antenna_gain_dbi",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.tx_antenna_gain_dbi = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.tx_antenna_gain_dbi); }}},
      {"rx_antenna_gain_dbi",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.rx_antenna_gain_dbi = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.rx_antenna_gain_dbi); }}},
      {"max_tx_power_w",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.max_tx_power_w = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.max_tx_power_w); }}},
      {"max_delay_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.max_delay_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.max_delay_ms); }}},
      {"noise_density_dbm_hz",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.noise_density_dbm_hz = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.noise_density_dbm_hz); }}},
      {"antenna_mode",
       {[](ScenarioConfig& c, const std::string&, const std::string& v) { c.antenna_mode = antenna_mode_from_string(v); },
        [](const ScenarioConfig& c) { return to_string(c.antenna_mode); }}},
      {"algorithm",
       {[](ScenarioConfig& c, const std::string&, const std::string& v) { c.algorithm = algorithm_from_string(v); },
        [](const ScenarioConfig& c) { return to_string(c.algorithm); }}},
      {"arrival_rate_pkts_per_s",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.arrival_rate_pkts_per_s = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.arrival_rate_pkts_per_s); }}},
      {"packet_size_bits",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.packet_size_bits = static_cast<int>(parse_int(k, v)); },
        [](const ScenarioConfig& c) { return std::to_string(c.packet_size_bits); }}},
      {"theta_grid",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.theta_grid = parse_list(k, v); },
        [](const ScenarioConfig& c) {
          std::string s;
          for (size_t i = 0; i < c.theta_grid.size(); ++i) s += (i ? "," : "") + fmt(c.theta_grid[i]);
          return s;
        }}},
      {"rng_seed",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.rng_seed = parse_u64(k, v); },
        [](const ScenarioConfig& c) { return std::to_string(c.rng_seed); }}},
      {"battery_j",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.battery_j = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.battery_j); }}},
      {"e_min_j",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.e_min_j = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.e_min_j); }}},
      {"e_max_j",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.e_max_j = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.e_max_j); }}},
      {"iat_weight_a",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.iat_weight_a = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.iat_weight_a); }}},
      {"window_bounds_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) {
          const auto pair = parse_list(k, v);
          if (pair.size() != 2) throw ParseError("window_bounds_ms expects exactly two values");
          c.window_t_min_ms = pair[0];
          c.window_t_max_ms = pair[1];
        },
        [](const ScenarioConfig& c) { return fmt(c.window_t_min_ms) + "," + fmt(c.window_t_max_ms); }}},
      {"circuit_power_w",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.circuit_power_w = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.circuit_power_w); }}},
      {"power_listening_w",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.power_listening_w = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.power_listening_w); }}},
      {"power_sleep_w",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.power_sleep_w = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.power_sleep_w); }}},
      {"e_rtx_j_per_bit",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.e_rtx_j_per_bit = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.e_rtx_j_per_bit); }}},
      {"e_stx_j_per_bit",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.e_stx_j_per_bit = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.e_stx_j_per_bit); }}},
      {"drx_on_duration_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.drx_on_duration_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.drx_on_duration_ms); }}},
      {"drx_inactivity_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.drx_inactivity_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.drx_inactivity_ms); }}},
      {"drx_short_cycle_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.drx_short_cycle_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.drx_short_cycle_ms); }}},
      {"drx_short_cycle_count",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.drx_short_cycle_count = static_cast<int>(parse_int(k, v)); },
        [](const ScenarioConfig& c) { return std::to_string(c.drx_short_cycle_count); }}},
      {"drx_long_cycle_ms",
       {[](ScenarioConfig& c, const std::string& k, const std::string& v) { c.drx_long_cycle_ms = parse_double(k, v); },
        [](const ScenarioConfig& c) { return fmt(c.drx_long_cycle_ms); }}},
  };
  return table;
}

const FieldIo* find_field(const std::string& key) {
  for (const auto& [name, io] : field_table())
    if (name == key) return &io;
  return nullptr;
}

}  // namespace

ScenarioConfig default_scenario() {
  ScenarioConfig c;
  c.theta_grid.reserve(21);
  for (int i = 0; i <= 20; ++i) c.theta_grid.push_back(i * 0.05);
  return c;
}

void validate(const ScenarioConfig& c) {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError(field + ": " + why);
  };
  if (!(c.bandwidth_hz > 0)) fail("bandwidth_hz", "must be > 0");
  if (c.num_rbs <= 0) fail("num_rbs", "must be > 0");
  if (!(c.tti_ms > 0)) fail("tti_ms", "must be > 0");
  if (!(c.sim_duration_s > 0)) fail("sim_duration_s", "must be > 0");
  if (c.num_ues <= 0) fail("num_ues", "must be > 0");
  if (!(c.inter_enodeb_distance_m > 0)) fail("inter_enodeb_distance_m", "must be > 0");
  if (!(c.ue_speed_mps > 0)) fail("ue_speed_mps", "must be > 0");
  if (!(c.max_tx_power_w > 0)) fail("max_tx_power_w", "must be > 0");
  if (!(c.max_delay_ms > 0)) fail("max_delay_ms", "must be > 0");
  if (!(c.arrival_rate_pkts_per_s > 0)) fail("arrival_rate_pkts_per_s", "must be > 0");
  if (c.packet_size_bits <= 0) fail("packet_size_bits", "must be > 0");
  if (c.theta_grid.empty()) fail("theta_grid", "must contain at least one value");
  for (double t : c.theta_grid)
    if (!(t >= 0.0 && t <= 1.0)) fail("theta_grid", "every value must lie in [0,1]");
  if (!(c.battery_j > 0)) fail("battery_j", "must be > 0");
  if (!(c.e_min_j > 0)) fail("e_min_j", "must be > 0");
  if (!(c.e_min_j < c.e_max_j)) fail("e_max_j", "must satisfy e_min_j < e_max_j");
  if (!(c.e_max_j <= c.battery_j)) fail("e_max_j", "must be <= battery_j");
  if (!(c.iat_weight_a >= 0.0 && c.iat_weight_a <= 1.0)) fail("iat_weight_a", "must lie in [0,1]");
  if (!(c.window_t_min_ms > 0)) fail("window_bounds_ms", "t_min must be > 0");
  if (!(c.window_t_min_ms < c.window_t_max_ms)) fail("window_bounds_ms", "t_min must be < t_max");
  if (c.circuit_power_w < 0) fail("circuit_power_w", "must be >= 0");
  if (c.power_listening_w < 0) fail("power_listening_w", "must be >= 0");
  if (c.power_sleep_w < 0) fail("power_sleep_w", "must be >= 0");
  if (c.e_rtx_j_per_bit < 0) fail("e_rtx_j_per_bit", "must be >= 0");
  if (c.e_stx_j_per_bit < 0) fail("e_stx_j_per_bit", "must be >= 0");
  if (!(c.drx_on_duration_ms > 0)) fail("drx_on_duration_ms", "must be > 0");
  if (!(c.drx_inactivity_ms > 0)) fail("drx_inactivity_ms", "must be > 0");
  if (!(c.drx_short_cycle_ms > c.drx_on_duration_ms)) fail("drx_short_cycle_ms", "must exceed drx_on_duration_ms");
  if (c.drx_short_cycle_count < 0) fail("drx_short_cycle_count", "must be >= 0");
  if (!(c.drx_long_cycle_ms > c.drx_on_duration_ms)) fail("drx_long_cycle_ms", "must exceed drx_on_duration_ms");
}

ScenarioConfig load_scenario(const std::string& text) {
  ScenarioConfig cfg = default_scenario();
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const FieldIo* io = find_field(key);
    if (!io) throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (seen[key]) throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    seen[key] = true;
    io->set(cfg, key, value);
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open scenario file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_scenario(ss.str());
}

std::vector<std::pair<std::string, std::string>> scenario_items(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(field_table().size());
  for (const auto& [name, io] : field_table()) out.emplace_back(name, io.get(cfg));
  return out;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : scenario_items(cfg)) out += k + " = " + v + "\n";
  return out;
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const FieldIo* io = find_field(key);
  if (!io) throw ParseError("unknown key '" + key + "'");
  io->set(cfg, key, value);
}

ScenarioClass classify(const ScenarioConfig& cfg) {
  return cfg.num_ues <= 100 ? ScenarioClass::NonCongested : ScenarioClass::Congested;
}

std::string to_string(AntennaMode m) {
  switch (m) {
    case AntennaMode::Omni: return "omni";
    case AntennaMode::Sector120: return "sector120";
    case AntennaMode::Sector60: return "sector60";
  }
  throw InternalError("unhandled antenna mode");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Set: return "set";
    case Algorithm::Drx: return "drx";
  }
  throw InternalError("unhandled algorithm");
}

std::string to_string(ScenarioClass c) {
  return c == ScenarioClass::NonCongested ? "non_congested" : "congested";
}

AntennaMode antenna_mode_from_string(const std::string& s) {
  if (s == "omni") return AntennaMode::Omni;
  if (s == "sector120") return AntennaMode::Sector120;
  if (s == "sector60") return AntennaMode::Sector60;
  throw ParseError("antenna_mode must be one of omni|sector120|sector60, got '" + s + "'");
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "set") return Algorithm::Set;
  if (s == "drx") return Algorithm::Drx;
  throw ParseError("algorithm must be one of set|drx, got '" + s + "'");
}

}  // namespace setsim
