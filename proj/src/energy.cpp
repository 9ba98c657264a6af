#include "setsim/energy.hpp"

namespace setsim {

double ModePowers::power_w(SleepMode m) const {
  switch (m) {
    case SleepMode::Awake: return awake_w;
    case SleepMode::Listening: return listening_w;
    case SleepMode::InitialSleep:
    case SleepMode::FinalSleep: return sleep_w;
    case SleepMode::Terminated: return 0.0;
  }
  throw InternalError("unhandled sleep mode");
}

void charge(EnergyLedger& led, double energy_j, double duration_ms) {
  if (energy_j < 0) throw DomainError("charge: energy must be >= 0");
  if (led.depleted() || energy_j == 0) return;
  const double headroom_j = led.initial_j - led.consumed_j;
  if (energy_j < headroom_j) {
    led.consumed_j += energy_j;
    return;
  }
  const double fraction = headroom_j > 0 ? headroom_j / energy_j : 0.0;
  led.depletion_ms = led.elapsed_ms + fraction * duration_ms;
  led.consumed_j = led.initial_j;
}

void accrue_tti(EnergyLedger& led, SleepMode mode, std::uint64_t bits_tx, std::uint64_t bits_rx,
                double tti_ms) {
  if (!(tti_ms > 0)) throw DomainError("accrue_tti: tti must be > 0");
  const double idle_j = led.mode_powers.power_w(mode) * tti_ms / 1000.0;
  const double traffic_j = static_cast<double>(bits_tx) * led.e_rtx_j_per_bit +
                           static_cast<double>(bits_rx) * led.e_stx_j_per_bit;
  charge(led, idle_j + traffic_j, tti_ms);
  led.elapsed_ms += tti_ms;
}

double total_traffic_energy_j(std::uint64_t num_users, double e_rtx_j, double e_stx_j) {
  return static_cast<double>(num_users) * (e_rtx_j + e_stx_j);
}

double battery_lifetime_s(const EnergyLedger& led) {
  if (led.depleted()) return led.depletion_ms / 1000.0;
  if (!(led.consumed_j > 0))
    throw InsufficientData("battery_lifetime_s: no energy consumed yet");
  return led.initial_j * (led.elapsed_ms / 1000.0) / led.consumed_j;
}

}  // namespace setsim
