#include <doctest.h>

#include <string>

#include "setsim/errors.hpp"
#include "setsim/scenario.hpp"

using namespace setsim;

TEST_CASE("defaults describe the reference cell") {
  const ScenarioConfig c = default_scenario();
  CHECK(c.bandwidth_hz == 5e6);
  CHECK(c.num_rbs == 25);
  CHECK(c.tti_ms == 1.0);
  CHECK(c.sim_duration_s == 100.0);
  CHECK(c.num_ues == 100);
  CHECK(c.inter_enodeb_distance_m == 500.0);
  CHECK(c.ue_speed_mps == 4.16);
  CHECK(c.tx_antenna_gain_dbi == 18.0);
  CHECK(c.rx_antenna_gain_dbi == 0.0);
  CHECK(c.max_tx_power_w == 20.0);
  CHECK(c.max_delay_ms == 20.0);
  CHECK(c.noise_density_dbm_hz == -174.0);
  CHECK(c.antenna_mode == AntennaMode::Omni);
  CHECK(c.algorithm == Algorithm::Set);
  CHECK(c.theta_grid.size() == 21);
  CHECK(c.theta_grid.front() == 0.0);
  CHECK(c.theta_grid.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("empty document loads as the defaults") {
  CHECK(load_scenario("") == default_scenario());
  CHECK(load_scenario("# only a comment\n\n") == default_scenario());
}

TEST_CASE("overrides land on the named field") {
  const ScenarioConfig c = load_scenario("num_ues = 10\ntheta_grid = 1.0\n");
  CHECK(c.num_ues == 10);
  REQUIRE(c.theta_grid.size() == 1);
  CHECK(c.theta_grid[0] == 1.0);
}

TEST_CASE("window bounds come as one composite key") {
  ScenarioConfig c = default_scenario();
  apply_override(c, "window_bounds_ms", "2,8");
  CHECK(c.window_t_min_ms == 2.0);
  CHECK(c.window_t_max_ms == 8.0);
  CHECK_THROWS_AS(apply_override(c, "window_bounds_ms", "2"), ParseError);
}

TEST_CASE("enum keys parse and reject junk") {
  ScenarioConfig c = default_scenario();
  apply_override(c, "algorithm", "drx");
  CHECK(c.algorithm == Algorithm::Drx);
  apply_override(c, "antenna_mode", "sector120");
  CHECK(c.antenna_mode == AntennaMode::Sector120);
  CHECK_THROWS_AS(apply_override(c, "algorithm", "ets"), ParseError);
  CHECK_THROWS_AS(apply_override(c, "antenna_mode", "dish"), ParseError);
}

TEST_CASE("loader rejects malformed documents") {
  CHECK_THROWS_AS(load_scenario("no_such_key = 1\n"), ParseError);
  CHECK_THROWS_AS(load_scenario("num_ues = 1\nnum_ues = 2\n"), ParseError);
  CHECK_THROWS_AS(load_scenario("num_ues 10\n"), ParseError);
  CHECK_THROWS_AS(load_scenario("num_ues = ten\n"), ParseError);
}

TEST_CASE("parse errors carry the line number") {
  try {
    load_scenario("num_ues = 10\nbogus line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("validation names the offending field") {
  ScenarioConfig c = default_scenario();
  c.iat_weight_a = 1.3;
  try {
    validate(c);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("iat_weight_a") != std::string::npos);
  }
}

TEST_CASE("validation covers the numeric guard rails") {
  auto broken = [](auto mutate) {
    ScenarioConfig c = default_scenario();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.num_ues = 0; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.bandwidth_hz = -1; })),
                  ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.sim_duration_s = 0; })),
                  ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.theta_grid = {1.5}; })),
                  ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.theta_grid = {}; })), ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.e_min_j = c.e_max_j; })),
                  ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.e_max_j = c.battery_j * 2; })),
                  ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.window_t_min_ms = 64; })),
                  ValidationError);
  CHECK_THROWS_AS(
      validate(broken([](ScenarioConfig& c) { c.drx_short_cycle_ms = c.drx_on_duration_ms; })),
      ValidationError);
  CHECK_THROWS_AS(validate(broken([](ScenarioConfig& c) { c.drx_short_cycle_count = -1; })),
                  ValidationError);
}

TEST_CASE("serialize and load form an identity") {
  const ScenarioConfig base = default_scenario();
  CHECK(load_scenario(serialize_scenario(base)) == base);

  ScenarioConfig tweaked = base;
  tweaked.num_ues = 42;
  tweaked.algorithm = Algorithm::Drx;
  tweaked.antenna_mode = AntennaMode::Sector60;
  tweaked.theta_grid = {0.0, 0.25, 1.0};
  tweaked.window_t_min_ms = 3.0;
  tweaked.window_t_max_ms = 48.0;
  tweaked.rng_seed = 987654321;
  CHECK(load_scenario(serialize_scenario(tweaked)) == tweaked);
}

TEST_CASE("scenario_items covers every serialized key") {
  const ScenarioConfig c = default_scenario();
  const auto items = scenario_items(c);
  std::string rebuilt;
  for (const auto& [k, v] : items) rebuilt += k + " = " + v + "\n";
  CHECK(load_scenario(rebuilt) == c);
}

TEST_CASE("classification splits at one UE per RB times four") {
  ScenarioConfig c = default_scenario();
  c.num_ues = 10;
  CHECK(classify(c) == ScenarioClass::NonCongested);
  c.num_ues = 100;
  CHECK(classify(c) == ScenarioClass::NonCongested);
  c.num_ues = 101;
  CHECK(classify(c) == ScenarioClass::Congested);
}

TEST_CASE("enum names round trip") {
  CHECK(to_string(Algorithm::Set) == "set");
  CHECK(to_string(Algorithm::Drx) == "drx");
  CHECK(algorithm_from_string("set") == Algorithm::Set);
  CHECK(to_string(AntennaMode::Omni) == "omni");
  CHECK(antenna_mode_from_string("sector60") == AntennaMode::Sector60);
  CHECK(to_string(ScenarioClass::Congested) == "congested");
}
