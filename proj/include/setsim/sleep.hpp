#pragma once

#include <string>

#include "setsim/errors.hpp"

namespace setsim {

enum class SleepMode { Awake, Listening, InitialSleep, FinalSleep, Terminated };
enum class SleepEvent { TerminationRequest, PacketAvailable, NoPacket, WindowExpired };
enum class SleepAction { Sleep, Listen, Transmit, Terminate };

std::string to_string(SleepMode m);
std::string to_string(SleepAction a);
// Single-letter form (A/L/I/F/T) used by trace files and conformance checks.
char mode_letter(SleepMode m);

// Energy target for the first sleep after activity: the battery's depletion
// fraction scaled onto [0, e_max].
double iec(double e_total_j, double e_remained_j, double e_max_j);

// Energy target for steady-state sleep: a fixed blend of the extremes,
// weights (a, 1-a).
double fec(double a, double e_max_j, double e_min_j);

// Maps an energy target on [e_min, e_max] to a sleep window on
// [t_min, t_max], clamped, then rounded up to whole TTIs.
double window_from_energy(double e_j, double e_min_j, double e_max_j, double t_min_ms,
                          double t_max_ms, double tti_ms);

struct SetParams {
  double a = 0.7;
  double e_min_j = 1.0;
  double e_max_j = 10.0;
  double t_min_ms = 2.0;
  double t_max_ms = 64.0;
  double tti_ms = 1.0;
  double ppt_threshold_ms = 1.0;  // minimum processing time before transmission
};

struct SetControllerState {
  SleepMode mode = SleepMode::Awake;
  double ppt_ms = 0;
  double e_total_j = 0;
  double e_remained_j = 0;
  double iec_j = 0;
  double fec_j = 0;
  double window_initial_ms = 0;
  double window_final_ms = 0;
  double remaining_window_ms = 0;
};

struct DrxParams {
  double on_duration_ms = 4.0;
  double inactivity_ms = 10.0;
  double short_cycle_ms = 20.0;
  int short_cycle_count = 4;
  double long_cycle_ms = 80.0;
  double tti_ms = 1.0;
};

struct DrxControllerState {
  SleepMode mode = SleepMode::Awake;
  double inactivity_remaining_ms = 0;
  double on_remaining_ms = 0;
  int short_cycles_used = 0;
  double remaining_window_ms = 0;
};

template <typename State>
struct Step {
  State state;
  SleepAction action;
};

// Advances the energy-driven controller by one TTI-aligned event.
//
// Transmission is gated on the head packet having waited at least
// ppt_threshold_ms; each sub-threshold PacketAvailable tick adds one TTI.
// Transitions into either sleep state recompute the energy targets from the
// battery captured in the state and draw the window for that sleep type.
// Sleeping states only ever see NoPacket / WindowExpired / TerminationRequest;
// anything else is an IllegalTransition. Terminated absorbs every event.
Step<SetControllerState> set_step(SetControllerState s, SleepEvent ev, const SetParams& p);

// Advances the cycle-driven baseline: Awake runs an inactivity timer, whose
// expiry starts short_cycle_count short cycles and then long cycles forever;
// Listening models the on-duration. A packet seen while Awake or Listening
// transmits immediately and re-arms the inactivity timer. Sleep segments are
// opaque to packets, as in set_step.
Step<DrxControllerState> drx_step(DrxControllerState s, SleepEvent ev, const DrxParams& p);

inline bool is_sleeping(SleepMode m) {
  return m == SleepMode::InitialSleep || m == SleepMode::FinalSleep;
}

}  // namespace setsim
