#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setsim/errors.hpp"

namespace setsim {

struct Packet {
  int ue_id = 0;
  double arrival_ms = 0;
  int size_bits = 0;

  bool operator==(const Packet&) const = default;
};

// Poisson arrivals for one UE over [0, horizon_ms): i.i.d. exponential gaps
// with mean 1000/rate ms. Rate zero yields no packets. The stream is keyed by
// (seed, ue_id) so every UE draws from its own deterministic sequence.
std::vector<Packet> generate_arrivals(double rate_pkts_per_s, double horizon_ms,
                                      std::uint64_t seed, int ue_id, int packet_size_bits);

// Evenly spaced arrivals, for scripted controller schedules.
std::vector<Packet> fixed_arrivals(const std::vector<double>& arrival_ms, int ue_id,
                                   int packet_size_bits);

// One-pole estimate of the packet inter-arrival time:
// estimate' = a * observed_gap + (1 - a) * estimate.
struct IatEstimator {
  double weight_a = 0.7;
  double estimate_ms = 0;
  double last_arrival_ms = 0;
  bool has_prior = false;
};

// Feeds one arrival timestamp; throws OrderingError if time regresses.
IatEstimator update_iat(IatEstimator est, double arrival_ms);

// Arrival-trace CSV: header ue_id,arrival_ms,size_bits.
void export_trace_csv(const std::string& path, const std::vector<Packet>& packets);
std::vector<Packet> import_trace_csv(const std::string& path);

}  // namespace setsim
