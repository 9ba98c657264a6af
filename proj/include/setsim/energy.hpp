#pragma once

#include <cstdint>

#include "setsim/errors.hpp"
#include "setsim/sleep.hpp"

namespace setsim {

struct ModePowers {
  double awake_w = 30.0;
  double listening_w = 5.0;
  double sleep_w = 0.5;

  // Terminated draws nothing; both sleep depths share one figure.
  double power_w(SleepMode m) const;
};

// Battery meter. Charges are truncated at the instant the battery empties so
// that consumed_j + remaining_j() == initial_j holds exactly afterwards;
// later charges are ignored.
struct EnergyLedger {
  double initial_j = 0;
  double e_rtx_j_per_bit = 0;
  double e_stx_j_per_bit = 0;
  ModePowers mode_powers;
  std::uint64_t num_users = 0;
  double consumed_j = 0;
  double elapsed_ms = 0;
  double depletion_ms = -1;  // < 0 means never depleted

  bool depleted() const { return depletion_ms >= 0; }
  double remaining_j() const { return initial_j - consumed_j; }
};

// Draws energy_j spread uniformly over duration_ms starting at the ledger's
// current elapsed time. On depletion the timestamp is interpolated within
// that window.
void charge(EnergyLedger& led, double energy_j, double duration_ms = 0);

// One TTI: the mode's idle draw plus the per-bit cost of the traffic moved,
// then the clock advances.
void accrue_tti(EnergyLedger& led, SleepMode mode, std::uint64_t bits_tx, std::uint64_t bits_rx,
                double tti_ms);

// Aggregate transceiver energy across a population of num_users nodes.
double total_traffic_energy_j(std::uint64_t num_users, double e_rtx_j, double e_stx_j);

// Measured time to empty when depletion happened, otherwise a linear
// extrapolation of the observed average draw. Throws InsufficientData when
// nothing has been consumed yet.
double battery_lifetime_s(const EnergyLedger& led);

}  // namespace setsim
