#pragma once

#include <cstdint>
#include <vector>

#include "setsim/scenario.hpp"

namespace setsim {

double db_to_linear(double db);
double linear_to_db(double lin);

// Thermal noise over a band, in mW, from a dBm/Hz density.
double noise_power_mw(double density_dbm_hz, double bandwidth_hz);

// Macro-cell distance loss in dB; distance in metres.
double path_loss_db(double distance_m);

// Parabolic sector pattern with a 20 dB floor relative to boresight;
// Omni returns the boresight gain for every azimuth.
double antenna_gain_dbi(double azimuth_offset_deg, AntennaMode mode, double boresight_gain_dbi);

// Link gain as a linear power ratio from endpoint gains and total loss in dB.
double channel_gain_linear(double tx_gain_dbi, double rx_gain_dbi, double loss_db);

struct UePlacement {
  int ue_id = 0;
  double distance_m = 0;   // from the serving site
  double azimuth_deg = 0;  // bearing from the serving site, 0 = boresight
};

// Per-UE link state at one refresh instant. Interference is pre-summed in mW
// at the reference transmit power; the six first-tier sites mirror the
// serving cell's power, so sinr() needs only the serving power.
struct ChannelSnapshot {
  int ue_id = 0;
  double gain_linear = 0;      // serving link: antennas, path loss, shadowing
  double interference_mw = 0;  // sum over first-tier sites at reference power
  double noise_mw = 0;
};

// beta = p * g / (I + N), all linear mW.
double sinr(double serving_power_mw, const ChannelSnapshot& s);

// SINR per transmit watt; multiplying by a power in W yields beta.
double effective_coeff_per_w(const ChannelSnapshot& s);

// Uniform-area drop on an annulus between 35 m and half the site distance.
std::vector<UePlacement> place_ues(const ScenarioConfig& cfg);

// Builds the snapshot for one UE given its current shadowing draw (dB).
// Reference power for both serving and interfering sites is max_tx_power_w.
ChannelSnapshot build_snapshot(const ScenarioConfig& cfg, const UePlacement& ue, double shadow_db);

inline constexpr double kShadowSigmaDb = 8.0;
inline constexpr double kMinDropDistanceM = 35.0;
// Distance a UE travels between shadowing redraws; one second at 4.16 m/s.
inline constexpr double kShadowRedrawDistanceM = 4.16;

}  // namespace setsim
