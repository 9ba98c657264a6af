#include "setsim/sleep.hpp"

#include <algorithm>
#include <cmath>

namespace setsim {

std::string to_string(SleepMode m) {
  switch (m) {
    case SleepMode::Awake: return "awake";
    case SleepMode::Listening: return "listening";
    case SleepMode::InitialSleep: return "initial_sleep";
    case SleepMode::FinalSleep: return "final_sleep";
    case SleepMode::Terminated: return "terminated";
  }
  throw InternalError("unhandled sleep mode");
}

std::string to_string(SleepAction a) {
  switch (a) {
    case SleepAction::Sleep: return "sleep";
    case SleepAction::Listen: return "listen";
    case SleepAction::Transmit: return "transmit";
    case SleepAction::Terminate: return "terminate";
  }
  throw InternalError("unhandled sleep action");
}

char mode_letter(SleepMode m) {
  switch (m) {
    case SleepMode::Awake: return 'A';
    case SleepMode::Listening: return 'L';
    case SleepMode::InitialSleep: return 'I';
    case SleepMode::FinalSleep: return 'F';
    case SleepMode::Terminated: return 'T';
  }
  throw InternalError("unhandled sleep mode");
}

double iec(double e_total_j, double e_remained_j, double e_max_j) {
  if (!(e_total_j > 0)) throw DomainError("iec: total energy must be > 0");
  if (e_max_j < 0) throw DomainError("iec: e_max must be >= 0");
  const double depleted_fraction = (e_total_j - e_remained_j) / e_total_j;
  return std::max(depleted_fraction, 0.0) * e_max_j;
}

double fec(double a, double e_max_j, double e_min_j) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("fec: weight must lie in [0,1]");
  return a * e_max_j + (1.0 - a) * e_min_j;
}

double window_from_energy(double e_j, double e_min_j, double e_max_j, double t_min_ms,
                          double t_max_ms, double tti_ms) {
  if (!(e_max_j > e_min_j)) throw DomainError("window_from_energy: e_max must exceed e_min");
  if (!(t_max_ms > t_min_ms)) throw DomainError("window_from_energy: t_max must exceed t_min");
  if (!(tti_ms > 0)) throw DomainError("window_from_energy: tti must be > 0");
  const double f = std::clamp((e_j - e_min_j) / (e_max_j - e_min_j), 0.0, 1.0);
  const double w = t_min_ms + f * (t_max_ms - t_min_ms);
  return std::ceil(w / tti_ms) * tti_ms;
}

namespace {

// Energy targets and both window sizes follow the battery level captured in
// the state; refreshed on every transmission and on every entry into sleep.
void refresh_targets(SetControllerState& s, const SetParams& p) {
  s.iec_j = iec(s.e_total_j, s.e_remained_j, p.e_max_j);
  s.fec_j = fec(p.a, p.e_max_j, p.e_min_j);
  s.window_initial_ms =
      window_from_energy(s.iec_j, p.e_min_j, p.e_max_j, p.t_min_ms, p.t_max_ms, p.tti_ms);
  s.window_final_ms =
      window_from_energy(s.fec_j, p.e_min_j, p.e_max_j, p.t_min_ms, p.t_max_ms, p.tti_ms);
}

[[noreturn]] void illegal(SleepMode m, SleepEvent ev) {
  const char* name = ev == SleepEvent::PacketAvailable  ? "PacketAvailable"
                     : ev == SleepEvent::NoPacket       ? "NoPacket"
                     : ev == SleepEvent::WindowExpired  ? "WindowExpired"
                                                        : "TerminationRequest";
  throw IllegalTransition(std::string(name) + " is impossible in mode " + to_string(m));
}

}  // namespace

Step<SetControllerState> set_step(SetControllerState s, SleepEvent ev, const SetParams& p) {
  if (s.mode == SleepMode::Terminated) return {s, SleepAction::Terminate};
  if (ev == SleepEvent::TerminationRequest) {
    s.mode = SleepMode::Terminated;
    s.remaining_window_ms = 0;
    return {s, SleepAction::Terminate};
  }

  switch (ev) {
    case SleepEvent::PacketAvailable:
      if (is_sleeping(s.mode)) illegal(s.mode, ev);
      if (s.ppt_ms >= p.ppt_threshold_ms) {
        s.mode = SleepMode::Awake;
        refresh_targets(s, p);
        return {s, SleepAction::Transmit};
      }
      s.ppt_ms += p.tti_ms;
      s.mode = SleepMode::Awake;
      return {s, SleepAction::Listen};

    case SleepEvent::NoPacket:
      if (s.mode == SleepMode::Awake) {
        refresh_targets(s, p);
        s.mode = SleepMode::InitialSleep;
        s.remaining_window_ms = s.window_initial_ms;
        s.ppt_ms = 0;
        return {s, SleepAction::Sleep};
      }
      if (s.mode == SleepMode::Listening) {
        refresh_targets(s, p);
        s.mode = SleepMode::FinalSleep;
        s.remaining_window_ms = s.window_final_ms;
        s.ppt_ms = 0;
        return {s, SleepAction::Sleep};
      }
      s.remaining_window_ms = std::max(s.remaining_window_ms - p.tti_ms, 0.0);
      return {s, SleepAction::Sleep};

    case SleepEvent::WindowExpired:
      if (!is_sleeping(s.mode)) illegal(s.mode, ev);
      s.mode = SleepMode::Listening;
      s.remaining_window_ms = 0;
      return {s, SleepAction::Listen};

    default:
      illegal(s.mode, ev);
  }
}

Step<DrxControllerState> drx_step(DrxControllerState s, SleepEvent ev, const DrxParams& p) {
  if (s.mode == SleepMode::Terminated) return {s, SleepAction::Terminate};
  if (ev == SleepEvent::TerminationRequest) {
    s.mode = SleepMode::Terminated;
    s.remaining_window_ms = 0;
    return {s, SleepAction::Terminate};
  }

  const double short_sleep = p.short_cycle_ms - p.on_duration_ms;
  const double long_sleep = p.long_cycle_ms - p.on_duration_ms;

  switch (ev) {
    case SleepEvent::PacketAvailable:
      if (is_sleeping(s.mode)) illegal(s.mode, ev);
      s.mode = SleepMode::Awake;
      s.inactivity_remaining_ms = p.inactivity_ms;
      s.on_remaining_ms = 0;
      return {s, SleepAction::Transmit};

    case SleepEvent::NoPacket:
      if (s.mode == SleepMode::Awake) {
        s.inactivity_remaining_ms -= p.tti_ms;
        if (s.inactivity_remaining_ms > 0) return {s, SleepAction::Listen};
        s.inactivity_remaining_ms = 0;
        s.short_cycles_used = 0;
        if (p.short_cycle_count > 0) {
          s.mode = SleepMode::InitialSleep;
          s.remaining_window_ms = short_sleep;
        } else {
          s.mode = SleepMode::FinalSleep;
          s.remaining_window_ms = long_sleep;
        }
        return {s, SleepAction::Sleep};
      }
      if (s.mode == SleepMode::Listening) {
        s.on_remaining_ms -= p.tti_ms;
        if (s.on_remaining_ms > 0) return {s, SleepAction::Listen};
        s.on_remaining_ms = 0;
        if (s.short_cycles_used < p.short_cycle_count) {
          ++s.short_cycles_used;
          s.mode = SleepMode::InitialSleep;
          s.remaining_window_ms = short_sleep;
        } else {
          s.mode = SleepMode::FinalSleep;
          s.remaining_window_ms = long_sleep;
        }
        return {s, SleepAction::Sleep};
      }
      s.remaining_window_ms = std::max(s.remaining_window_ms - p.tti_ms, 0.0);
      return {s, SleepAction::Sleep};

    case SleepEvent::WindowExpired:
      if (!is_sleeping(s.mode)) illegal(s.mode, ev);
      s.mode = SleepMode::Listening;
      s.on_remaining_ms = p.on_duration_ms;
      s.remaining_window_ms = 0;
      return {s, SleepAction::Listen};

    default:
      illegal(s.mode, ev);
  }
}

}  // namespace setsim
