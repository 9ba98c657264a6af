#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "setsim/energy.hpp"
#include "setsim/optimizer.hpp"
#include "setsim/radio.hpp"
#include "setsim/scenario.hpp"
#include "setsim/sleep.hpp"
#include "setsim/traffic.hpp"

namespace setsim {

// One TTI's resource grants. rb_to_ue[r] is the UE holding block r, or -1.
struct RbAllocation {
  std::vector<int> rb_to_ue;
  std::vector<int> rbs_by_ue;
  std::vector<double> se_by_ue;
};

// Grants blocks to backlogged UEs in descending per-UE rate, lowest ue_id on
// ties. With the starvation cap on, no UE takes more than its ceil-fair
// share of the blocks in a single TTI.
RbAllocation allocate_rbs(const std::vector<double>& backlog_bits,
                          const std::vector<ChannelSnapshot>& snapshots, int num_rbs,
                          double serving_power_mw, bool starvation_cap = true);

// Channel-blind one-block-at-a-time rotation over backlogged UEs; cursor
// carries the rotation point across TTIs.
RbAllocation round_robin_rbs(const std::vector<double>& backlog_bits,
                             const std::vector<ChannelSnapshot>& snapshots, int num_rbs,
                             double serving_power_mw, int& cursor);

struct TtiTrace {
  std::int64_t tti = 0;
  SleepMode mode = SleepMode::Awake;
  SleepAction action = SleepAction::Listen;
  std::uint64_t bits_tx = 0;
  double consumed_j = 0;
  double remaining_j = 0;
};

struct ModeOccupancy {
  std::int64_t awake = 0;
  std::int64_t listening = 0;
  std::int64_t initial_sleep = 0;
  std::int64_t final_sleep = 0;
};

struct RunMetrics {
  std::int64_t total_ttis = 0;
  std::int64_t generated_packets = 0;
  std::int64_t delivered_packets = 0;
  std::int64_t residual_packets = 0;
  double transmitted_bits = 0;
  // Delivered traffic over bandwidth and time spent with a nonempty backlog.
  double mean_cell_se_bits_hz = 0;
  double avg_response_delay_ms = 0;
  std::int64_t delay_violations = 0;
  double consumed_j = 0;
  double remaining_j = 0;
  bool depleted = false;
  double lifetime_s = 0;
  ModeOccupancy occupancy;
  double listening_fraction = 0;
  double final_iat_estimate_ms = 0;
  // Effective channel coefficient averaged over resource grants; the
  // single-link context the trade-off sweep below was run on.
  double mean_grant_coeff_per_w = 0;
  std::vector<TradeoffPoint> tradeoff;
  std::vector<TtiTrace> trace;
};

struct RunOptions {
  bool collect_trace = false;
  // Replaces generated traffic with a scripted schedule; entries may arrive
  // in any order and are served in (arrival, ue_id) order.
  std::optional<std::vector<Packet>> arrivals;
};

// Whole-cell simulation: one sleep controller, one battery, per-UE queues
// and channels, TTI by TTI. Deterministic for a given (config, seed).
RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts = {});

// Mode letters (A/L/I/F) of a trace, one char per TTI.
std::string trace_mode_string(const std::vector<TtiTrace>& trace);

// Columns: tti, mode, consumed_j_cumulative, remaining_j.
void export_energy_csv(const std::vector<TtiTrace>& trace, const std::string& path);

}  // namespace setsim
