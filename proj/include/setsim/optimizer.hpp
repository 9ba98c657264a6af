#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "setsim/errors.hpp"

namespace setsim {

// Frozen link qualities for a power search: beta_k = coeff_per_w[k] * p_k,
// with interference and noise already folded into the coefficient.
struct ChannelContext {
  std::vector<double> coeff_per_w;
};

struct PowerAllocation {
  std::vector<double> powers_w;
  std::vector<double> circuit_powers_w;
  double p_max_w = 0;
};

struct TradeoffPoint {
  double theta = 0;
  double se_bits_hz = 0;
  double ee_bits_hz_w = 0;
  double sop_value = 0;
  PowerAllocation allocation;
  bool converged = true;
};

// Shannon rate for one user at the given SINR.
double se_user(double beta);

// Cell sum rate.
double se_total(const std::vector<double>& betas);

// Rate per watt of radiated plus circuit power. Zero total power is refused.
double ee(double se_total_bits_hz, const PowerAllocation& alloc);

// Weighted blend of the two objectives; theta = 1 is pure rate.
double sop(double se, double ee, double theta);

// Pareto dominance: at least as good on both axes, better on one.
bool mop_dominates(double a_se, double a_ee, double b_se, double b_ee);

struct OptimizeOptions {
  double coordinate_tol_w = 1e-6;
  int max_sweeps = 100;
  // Extra starting allocations tried alongside the built-in ones
  // (all-zero, half cap, full cap). Entries are clamped into the box.
  std::vector<std::vector<double>> extra_starts;
};

// Maximizes the blended objective over [0, p_max]^K by cyclic per-coordinate
// golden-section ascent from several starts. A run that exhausts max_sweeps
// before a full sweep moves every coordinate by less than the tolerance is
// returned with converged = false.
TradeoffPoint optimize_power(double theta, const ChannelContext& ctx, double p_max_w,
                             const std::vector<double>& circuit_powers_w,
                             const OptimizeOptions& options = {});

// One optimized point per weight, warm-starting each search from its
// predecessor. The grid must be ascending and inside [0,1]. The tighter
// default tolerance keeps the rate/efficiency ordering of neighboring
// points clean enough to assert on.
std::vector<TradeoffPoint> pareto_sweep(const std::vector<double>& theta_grid,
                                        const ChannelContext& ctx, double p_max_w,
                                        const std::vector<double>& circuit_powers_w,
                                        const OptimizeOptions& options = {1e-11, 100, {}});

struct UnimodalityReport {
  bool unimodal = false;
  std::size_t argmax_index = 0;
  double argmax_power_w = 0;
  double max_objective = 0;
};

// Scans the single-user objective on a uniform power grid and reports
// whether it rises then falls (plateaus up to 1e-9 allowed).
UnimodalityReport unimodality_check(double theta, const ChannelContext& ctx, double p_max_w,
                                    double circuit_power_w, std::size_t samples);

// Columns: theta, se, ee, sop, p_1..p_K.
void export_tradeoff_csv(const std::vector<TradeoffPoint>& points, const std::string& path);

}  // namespace setsim
