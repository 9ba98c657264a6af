#include "setsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "setsim/csv.hpp"
#include "setsim/rng.hpp"

namespace setsim {

namespace {

std::vector<int> backlogged_ids(const std::vector<double>& backlog_bits) {
  std::vector<int> ids;
  for (std::size_t u = 0; u < backlog_bits.size(); ++u)
    if (backlog_bits[u] > 0) ids.push_back(static_cast<int>(u));
  return ids;
}

RbAllocation empty_allocation(std::size_t num_ues, int num_rbs) {
  RbAllocation alloc;
  alloc.rb_to_ue.assign(static_cast<std::size_t>(num_rbs), -1);
  alloc.rbs_by_ue.assign(num_ues, 0);
  alloc.se_by_ue.assign(num_ues, 0.0);
  return alloc;
}

void fill_se(RbAllocation& alloc, const std::vector<ChannelSnapshot>& snapshots,
             double serving_power_mw) {
  for (std::size_t u = 0; u < snapshots.size(); ++u)
    alloc.se_by_ue[u] = se_user(sinr(serving_power_mw, snapshots[u]));
}

}  // namespace

RbAllocation allocate_rbs(const std::vector<double>& backlog_bits,
                          const std::vector<ChannelSnapshot>& snapshots, int num_rbs,
                          double serving_power_mw, bool starvation_cap) {
  if (snapshots.size() < backlog_bits.size())
    throw DomainError("allocate_rbs: snapshots must cover every backlogged UE");
  if (num_rbs < 0) throw DomainError("allocate_rbs: block count must be >= 0");

  RbAllocation alloc = empty_allocation(backlog_bits.size(), num_rbs);
  fill_se(alloc, snapshots, serving_power_mw);

  std::vector<int> contenders = backlogged_ids(backlog_bits);
  if (contenders.empty() || num_rbs == 0) return alloc;

  std::stable_sort(contenders.begin(), contenders.end(), [&](int a, int b) {
    if (alloc.se_by_ue[a] != alloc.se_by_ue[b]) return alloc.se_by_ue[a] > alloc.se_by_ue[b];
    return a < b;
  });

  const int cap = starvation_cap
                      ? (num_rbs + static_cast<int>(contenders.size()) - 1) /
                            static_cast<int>(contenders.size())
                      : num_rbs;

  int rb = 0;
  for (std::size_t pass = 0; rb < num_rbs && pass < contenders.size(); ++pass) {
    const int ue = contenders[pass];
    while (rb < num_rbs && alloc.rbs_by_ue[ue] < cap) {
      alloc.rb_to_ue[rb++] = ue;
      ++alloc.rbs_by_ue[ue];
    }
  }
  return alloc;
}

RbAllocation round_robin_rbs(const std::vector<double>& backlog_bits,
                             const std::vector<ChannelSnapshot>& snapshots, int num_rbs,
                             double serving_power_mw, int& cursor) {
  if (snapshots.size() < backlog_bits.size())
    throw DomainError("round_robin_rbs: snapshots must cover every backlogged UE");
  if (num_rbs < 0) throw DomainError("round_robin_rbs: block count must be >= 0");

  RbAllocation alloc = empty_allocation(backlog_bits.size(), num_rbs);
  fill_se(alloc, snapshots, serving_power_mw);

  const std::vector<int> contenders = backlogged_ids(backlog_bits);
  if (contenders.empty() || num_rbs == 0) return alloc;

  // Rotation starts at the first backlogged UE at or past the cursor.
  std::size_t start = 0;
  while (start < contenders.size() && contenders[start] < cursor) ++start;
  if (start == contenders.size()) start = 0;

  for (int rb = 0; rb < num_rbs; ++rb) {
    const int ue = contenders[(start + static_cast<std::size_t>(rb)) % contenders.size()];
    alloc.rb_to_ue[static_cast<std::size_t>(rb)] = ue;
    ++alloc.rbs_by_ue[ue];
  }
  const int last =
      contenders[(start + static_cast<std::size_t>(num_rbs) - 1) % contenders.size()];
  cursor = last + 1;
  return alloc;
}

namespace {

struct QueuedPacket {
  double arrival_ms = 0;
  double remaining_bits = 0;
  bool started = false;
  double tx_start_ms = 0;
};

struct DelayStats {
  std::int64_t delivered = 0;
  double delay_sum_ms = 0;
  std::int64_t violations = 0;
};

// Drains up to capacity_bits from one UE's FIFO, stamping service starts and
// recording delays of packets that finish.
double drain_queue(std::deque<QueuedPacket>& q, double capacity_bits, double now_ms,
                   double max_delay_ms, DelayStats& stats) {
  double drained = 0;
  while (capacity_bits > 0 && !q.empty()) {
    QueuedPacket& head = q.front();
    if (!head.started) {
      head.started = true;
      head.tx_start_ms = now_ms;
    }
    const double take = std::min(capacity_bits, head.remaining_bits);
    head.remaining_bits -= take;
    capacity_bits -= take;
    drained += take;
    if (head.remaining_bits <= 0) {
      const double delay = head.tx_start_ms - head.arrival_ms;
      stats.delay_sum_ms += delay;
      if (delay > max_delay_ms) ++stats.violations;
      ++stats.delivered;
      q.pop_front();
    }
  }
  return drained;
}

RunMetrics zero_duration_report(const ScenarioConfig& cfg) {
  RunMetrics m;
  m.remaining_j = cfg.battery_j;
  return m;
}

}  // namespace

RunMetrics run(const ScenarioConfig& cfg, const RunOptions& opts) {
  {
    ScenarioConfig checked = cfg;
    if (checked.sim_duration_s == 0) checked.sim_duration_s = 1;
    validate(checked);
  }
  const auto total_ttis =
      static_cast<std::int64_t>(std::llround(cfg.sim_duration_s * 1000.0 / cfg.tti_ms));
  if (total_ttis == 0) return zero_duration_report(cfg);

  const auto num_ues = static_cast<std::size_t>(cfg.num_ues);
  const double horizon_ms = static_cast<double>(total_ttis) * cfg.tti_ms;
  const double tti_s = cfg.tti_ms / 1000.0;
  const double rb_bandwidth_hz = cfg.bandwidth_hz / cfg.num_rbs;
  const double serving_power_mw = cfg.max_tx_power_w * 1000.0;

  // Traffic, merged across UEs into service order.
  std::vector<Packet> arrivals;
  if (opts.arrivals) {
    arrivals = *opts.arrivals;
    for (const Packet& p : arrivals) {
      if (p.ue_id < 0 || static_cast<std::size_t>(p.ue_id) >= num_ues)
        throw DomainError("run: scripted arrival names an unknown UE");
      if (p.arrival_ms < 0) throw DomainError("run: scripted arrival before time zero");
      if (p.size_bits <= 0) throw DomainError("run: scripted arrival with empty payload");
    }
  } else {
    for (std::size_t u = 0; u < num_ues; ++u) {
      auto per_ue = generate_arrivals(cfg.arrival_rate_pkts_per_s, horizon_ms, cfg.rng_seed,
                                      static_cast<int>(u), cfg.packet_size_bits);
      arrivals.insert(arrivals.end(), per_ue.begin(), per_ue.end());
    }
  }
  std::stable_sort(arrivals.begin(), arrivals.end(), [](const Packet& a, const Packet& b) {
    if (a.arrival_ms != b.arrival_ms) return a.arrival_ms < b.arrival_ms;
    return a.ue_id < b.ue_id;
  });

  // Channel state and its refresh cadence (one redraw per 4.16 m traveled).
  const auto placements = place_ues(cfg);
  std::vector<SplitRng> shadow_rng;
  shadow_rng.reserve(num_ues);
  for (std::size_t u = 0; u < num_ues; ++u)
    shadow_rng.emplace_back(derive_seed(cfg.rng_seed, u, RngStream::Shadowing));
  std::vector<ChannelSnapshot> snapshots(num_ues);
  auto redraw_snapshots = [&] {
    for (std::size_t u = 0; u < num_ues; ++u)
      snapshots[u] =
          build_snapshot(cfg, placements[u], shadow_rng[u].normal(0.0, kShadowSigmaDb));
  };
  redraw_snapshots();
  const auto redraw_ttis = std::max<std::int64_t>(
      1, std::llround(kShadowRedrawDistanceM / cfg.ue_speed_mps * 1000.0 / cfg.tti_ms));

  // Controllers, battery, bookkeeping.
  const SetParams set_params{cfg.iat_weight_a, cfg.e_min_j,        cfg.e_max_j, cfg.window_t_min_ms,
                             cfg.window_t_max_ms, cfg.tti_ms, 1.0};
  SetControllerState set_state;
  set_state.e_total_j = cfg.battery_j;
  set_state.e_remained_j = cfg.battery_j;
  const DrxParams drx_params{cfg.drx_on_duration_ms, cfg.drx_inactivity_ms, cfg.drx_short_cycle_ms,
                             cfg.drx_short_cycle_count, cfg.drx_long_cycle_ms, cfg.tti_ms};
  DrxControllerState drx_state;
  drx_state.inactivity_remaining_ms = cfg.drx_inactivity_ms;
  const bool use_set = cfg.algorithm == Algorithm::Set;

  EnergyLedger ledger;
  ledger.initial_j = cfg.battery_j;
  ledger.e_rtx_j_per_bit = cfg.e_rtx_j_per_bit;
  ledger.e_stx_j_per_bit = cfg.e_stx_j_per_bit;
  ledger.mode_powers =
      ModePowers{cfg.max_tx_power_w + cfg.circuit_power_w, cfg.power_listening_w, cfg.power_sleep_w};
  ledger.num_users = static_cast<std::uint64_t>(cfg.num_ues);

  std::vector<std::deque<QueuedPacket>> queues(num_ues);
  std::vector<double> backlog_bits(num_ues, 0.0);
  IatEstimator iat;
  iat.weight_a = cfg.iat_weight_a;
  DelayStats stats;
  std::size_t next_arrival = 0;
  std::int64_t busy_ttis = 0;
  double transmitted_bits = 0;
  double grant_coeff_sum = 0;
  std::int64_t grant_count = 0;
  int rr_cursor = 0;
  RunMetrics metrics;
  metrics.total_ttis = total_ttis;
  metrics.generated_packets = static_cast<std::int64_t>(arrivals.size());
  if (opts.collect_trace) metrics.trace.reserve(static_cast<std::size_t>(total_ttis));

  for (std::int64_t tti = 0; tti < total_ttis; ++tti) {
    const double now_ms = static_cast<double>(tti) * cfg.tti_ms;

    while (next_arrival < arrivals.size() && arrivals[next_arrival].arrival_ms <= now_ms) {
      const Packet& p = arrivals[next_arrival];
      queues[static_cast<std::size_t>(p.ue_id)].push_back(
          QueuedPacket{p.arrival_ms, static_cast<double>(p.size_bits), false, 0.0});
      backlog_bits[static_cast<std::size_t>(p.ue_id)] += p.size_bits;
      iat = update_iat(iat, p.arrival_ms);
      ++next_arrival;
    }

    if (tti > 0 && tti % redraw_ttis == 0) redraw_snapshots();

    const bool backlog = std::any_of(backlog_bits.begin(), backlog_bits.end(),
                                     [](double b) { return b > 0; });
    if (backlog) ++busy_ttis;

    SleepMode mode_before = use_set ? set_state.mode : drx_state.mode;
    double remaining_window =
        use_set ? set_state.remaining_window_ms : drx_state.remaining_window_ms;
    SleepEvent event;
    if (is_sleeping(mode_before)) {
      event = remaining_window <= cfg.tti_ms ? SleepEvent::WindowExpired : SleepEvent::NoPacket;
    } else {
      event = backlog ? SleepEvent::PacketAvailable : SleepEvent::NoPacket;
    }

    SleepAction action;
    SleepMode mode_after;
    if (use_set) {
      set_state.e_total_j = cfg.battery_j;
      set_state.e_remained_j = ledger.remaining_j();
      auto step = set_step(set_state, event, set_params);
      set_state = step.state;
      action = step.action;
      mode_after = set_state.mode;
    } else {
      auto step = drx_step(drx_state, event, drx_params);
      drx_state = step.state;
      action = step.action;
      mode_after = drx_state.mode;
    }

    std::uint64_t bits_this_tti = 0;
    if (action == SleepAction::Transmit) {
      if (mode_after != SleepMode::Awake)
        throw InternalError("run: transmission outside the awake mode");
      const RbAllocation alloc =
          use_set ? allocate_rbs(backlog_bits, snapshots, cfg.num_rbs, serving_power_mw)
                  : round_robin_rbs(backlog_bits, snapshots, cfg.num_rbs, serving_power_mw,
                                    rr_cursor);
      const int granted_total =
          std::accumulate(alloc.rbs_by_ue.begin(), alloc.rbs_by_ue.end(), 0);
      if (backlog && granted_total == 0)
        throw InternalError("run: backlog present but no blocks granted");
      double drained_total = 0;
      for (std::size_t u = 0; u < num_ues; ++u) {
        const int granted = alloc.rbs_by_ue[u];
        if (granted == 0) continue;
        const double capacity =
            static_cast<double>(granted) * alloc.se_by_ue[u] * rb_bandwidth_hz * tti_s;
        const double drained =
            drain_queue(queues[u], capacity, now_ms, cfg.max_delay_ms, stats);
        backlog_bits[u] = std::max(backlog_bits[u] - drained, 0.0);
        drained_total += drained;
        grant_coeff_sum += static_cast<double>(granted) * effective_coeff_per_w(snapshots[u]);
        grant_count += granted;
      }
      transmitted_bits += drained_total;
      bits_this_tti = static_cast<std::uint64_t>(std::llround(drained_total));
    }

    accrue_tti(ledger, mode_after, bits_this_tti, bits_this_tti, cfg.tti_ms);

    switch (mode_after) {
      case SleepMode::Awake: ++metrics.occupancy.awake; break;
      case SleepMode::Listening: ++metrics.occupancy.listening; break;
      case SleepMode::InitialSleep: ++metrics.occupancy.initial_sleep; break;
      case SleepMode::FinalSleep: ++metrics.occupancy.final_sleep; break;
      case SleepMode::Terminated: break;
    }
    if (opts.collect_trace)
      metrics.trace.push_back(TtiTrace{tti, mode_after, action, bits_this_tti, ledger.consumed_j,
                                       ledger.remaining_j()});
  }

  if (use_set) {
    set_state = set_step(set_state, SleepEvent::TerminationRequest, set_params).state;
  } else {
    drx_state = drx_step(drx_state, SleepEvent::TerminationRequest, drx_params).state;
  }

  metrics.delivered_packets = stats.delivered;
  metrics.residual_packets = metrics.generated_packets - stats.delivered;
  metrics.transmitted_bits = transmitted_bits;
  metrics.mean_cell_se_bits_hz =
      busy_ttis > 0 ? transmitted_bits /
                          (cfg.bandwidth_hz * static_cast<double>(busy_ttis) * tti_s)
                    : 0.0;
  metrics.avg_response_delay_ms =
      stats.delivered > 0 ? stats.delay_sum_ms / static_cast<double>(stats.delivered) : 0.0;
  metrics.delay_violations = stats.violations;
  metrics.consumed_j = ledger.consumed_j;
  metrics.remaining_j = ledger.remaining_j();
  metrics.depleted = ledger.depleted();
  metrics.lifetime_s = ledger.consumed_j > 0 ? battery_lifetime_s(ledger) : 0.0;
  metrics.listening_fraction =
      static_cast<double>(metrics.occupancy.listening) / static_cast<double>(total_ttis);
  metrics.final_iat_estimate_ms = iat.estimate_ms;

  double coeff;
  if (grant_count > 0) {
    coeff = grant_coeff_sum / static_cast<double>(grant_count);
  } else {
    coeff = 0;
    for (const auto& s : snapshots) coeff += effective_coeff_per_w(s);
    coeff /= static_cast<double>(num_ues);
  }
  metrics.mean_grant_coeff_per_w = coeff;

  std::vector<double> grid = cfg.theta_grid;
  std::sort(grid.begin(), grid.end());
  metrics.tradeoff = pareto_sweep(grid, ChannelContext{{coeff}}, cfg.max_tx_power_w,
                                  {cfg.circuit_power_w});
  return metrics;
}

std::string trace_mode_string(const std::vector<TtiTrace>& trace) {
  std::string s;
  s.reserve(trace.size());
  for (const auto& t : trace) s.push_back(mode_letter(t.mode));
  return s;
}

void export_energy_csv(const std::vector<TtiTrace>& trace, const std::string& path) {
  CsvWriter writer(path);
  writer.row({"tti", "mode", "consumed_j_cumulative", "remaining_j"});
  for (const auto& t : trace)
    writer.row({std::to_string(t.tti), to_string(t.mode), format_sig9(t.consumed_j),
                format_sig9(t.remaining_j)});
}

}  // namespace setsim
