#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setsim/errors.hpp"

namespace setsim {

enum class AntennaMode { Omni, Sector120, Sector60 };
enum class Algorithm { Set, Drx };
enum class ScenarioClass { NonCongested, Congested };

// One downlink cell. Defaults describe a 5 MHz / 25 RB deployment with a
// 500 m site grid; the sleep, battery and DRX fields below parameterize the
// two sleep-mode policies the simulator compares.
struct ScenarioConfig {
  double bandwidth_hz = 5e6;
  int num_rbs = 25;
  double tti_ms = 1.0;
  double sim_duration_s = 100.0;
  int num_ues = 100;
  double inter_enodeb_distance_m = 500.0;
  double ue_speed_mps = 4.16;
  double tx_antenna_gain_dbi = 18.0;
  double rx_antenna_gain_dbi = 0.0;
  double max_tx_power_w = 20.0;
  double max_delay_ms = 20.0;
  double noise_density_dbm_hz = -174.0;
  AntennaMode antenna_mode = AntennaMode::Omni;
  Algorithm algorithm = Algorithm::Set;
  double arrival_rate_pkts_per_s = 50.0;
  int packet_size_bits = 8000;
  std::vector<double> theta_grid;  // filled with 21 points over [0,1] by default
  std::uint64_t rng_seed = 1;

  // battery and sleep-window model
  double battery_j = 1000.0;
  double e_min_j = 1.0;
  double e_max_j = 10.0;
  double iat_weight_a = 0.7;
  double window_t_min_ms = 2.0;
  double window_t_max_ms = 64.0;

  // power draw constants
  double circuit_power_w = 10.0;
  double power_listening_w = 5.0;
  double power_sleep_w = 0.5;
  double e_rtx_j_per_bit = 1e-7;
  double e_stx_j_per_bit = 1e-7;

  // DRX baseline cycle
  double drx_on_duration_ms = 4.0;
  double drx_inactivity_ms = 10.0;
  double drx_short_cycle_ms = 20.0;
  int drx_short_cycle_count = 4;
  double drx_long_cycle_ms = 80.0;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig default_scenario();

// Throws ValidationError naming the first offending field.
void validate(const ScenarioConfig& cfg);

// Flat "key = value" text, one key per line, '#' comments. Unknown or
// duplicate keys and malformed lines raise ParseError.
ScenarioConfig load_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::string& path);

// Canonical text form; load_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& cfg);

// Ordered (key, value) pairs of the canonical form.
std::vector<std::pair<std::string, std::string>> scenario_items(const ScenarioConfig& cfg);

// Applies one "key=value" override as the CLI --set flag does.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

ScenarioClass classify(const ScenarioConfig& cfg);

std::string to_string(AntennaMode m);
std::string to_string(Algorithm a);
std::string to_string(ScenarioClass c);
AntennaMode antenna_mode_from_string(const std::string& s);
Algorithm algorithm_from_string(const std::string& s);

}  // namespace setsim
