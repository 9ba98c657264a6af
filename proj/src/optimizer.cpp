#include "setsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "setsim/csv.hpp"

namespace setsim {

double se_user(double beta) {
  if (beta < 0) throw DomainError("se_user: beta must be >= 0");
  return std::log2(1.0 + beta);
}

double se_total(const std::vector<double>& betas) {
  double sum = 0;
  for (double b : betas) sum += se_user(b);
  return sum;
}

double ee(double se_total_bits_hz, const PowerAllocation& alloc) {
  if (alloc.powers_w.size() != alloc.circuit_powers_w.size())
    throw DomainError("ee: power vector lengths differ");
  double total_w = 0;
  for (std::size_t k = 0; k < alloc.powers_w.size(); ++k)
    total_w += alloc.powers_w[k] + alloc.circuit_powers_w[k];
  if (!(total_w > 0)) throw DomainError("ee: total power must be > 0");
  return se_total_bits_hz / total_w;
}

double sop(double se, double ee, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("sop: theta must lie in [0,1]");
  return theta * se + (1.0 - theta) * ee;
}

bool mop_dominates(double a_se, double a_ee, double b_se, double b_ee) {
  return a_se >= b_se && a_ee >= b_ee && (a_se > b_se || a_ee > b_ee);
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

double blended(double theta, const std::vector<double>& coeff, const std::vector<double>& powers,
               const std::vector<double>& circuits) {
  double se = 0;
  double total_w = 0;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    se += std::log2(1.0 + coeff[k] * powers[k]);
    total_w += powers[k] + circuits[k];
  }
  const double eff = total_w > 0 ? se / total_w : 0.0;
  return theta * se + (1.0 - theta) * eff;
}

// Interval shrink below tol, then the better of {interior, both ends}, so a
// slice that is monotone across the whole box lands exactly on the edge.
double golden_argmax(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  double fx = f(x);
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo > fx) {
    x = lo;
    fx = flo;
  }
  if (fhi > fx) x = hi;
  return x;
}

}  // namespace

TradeoffPoint optimize_power(double theta, const ChannelContext& ctx, double p_max_w,
                             const std::vector<double>& circuit_powers_w,
                             const OptimizeOptions& options) {
  const auto& coeff = ctx.coeff_per_w;
  const std::size_t num_users = coeff.size();
  if (num_users == 0) throw DomainError("optimize_power: empty channel context");
  if (circuit_powers_w.size() != num_users)
    throw DomainError("optimize_power: circuit power count mismatch");
  if (!(p_max_w > 0)) throw DomainError("optimize_power: p_max must be > 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("optimize_power: theta must lie in [0,1]");
  for (double c : coeff)
    if (!(c >= 0)) throw DomainError("optimize_power: coefficients must be >= 0");
  for (double c : circuit_powers_w)
    if (!(c >= 0)) throw DomainError("optimize_power: circuit powers must be >= 0");
  if (!(options.coordinate_tol_w > 0) || options.max_sweeps < 1)
    throw DomainError("optimize_power: bad search options");

  std::vector<std::vector<double>> starts;
  starts.emplace_back(num_users, 0.0);
  starts.emplace_back(num_users, p_max_w / 2.0);
  starts.emplace_back(num_users, p_max_w);
  for (const auto& s : options.extra_starts) {
    if (s.size() != num_users) continue;
    auto clamped = s;
    for (double& x : clamped) x = std::clamp(x, 0.0, p_max_w);
    starts.push_back(std::move(clamped));
  }

  std::vector<double> best_powers;
  double best_value = -std::numeric_limits<double>::infinity();
  bool best_converged = false;

  for (auto powers : starts) {
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
      double max_step = 0;
      for (std::size_t k = 0; k < num_users; ++k) {
        const double before = powers[k];
        auto slice = [&](double x) {
          powers[k] = x;
          return blended(theta, coeff, powers, circuit_powers_w);
        };
        const double after = golden_argmax(slice, 0.0, p_max_w, options.coordinate_tol_w);
        powers[k] = after;
        max_step = std::max(max_step, std::abs(after - before));
      }
      converged = max_step < options.coordinate_tol_w;
    }
    const double value = blended(theta, coeff, powers, circuit_powers_w);
    if (value > best_value) {
      best_value = value;
      best_powers = std::move(powers);
      best_converged = converged;
    }
  }

  TradeoffPoint point;
  point.theta = theta;
  std::vector<double> betas(num_users);
  double total_w = 0;
  for (std::size_t k = 0; k < num_users; ++k) {
    betas[k] = coeff[k] * best_powers[k];
    total_w += best_powers[k] + circuit_powers_w[k];
  }
  point.se_bits_hz = se_total(betas);
  point.ee_bits_hz_w = total_w > 0 ? point.se_bits_hz / total_w : 0.0;
  point.sop_value = sop(point.se_bits_hz, point.ee_bits_hz_w, theta);
  point.allocation = PowerAllocation{std::move(best_powers), circuit_powers_w, p_max_w};
  point.converged = best_converged;
  return point;
}

std::vector<TradeoffPoint> pareto_sweep(const std::vector<double>& theta_grid,
                                        const ChannelContext& ctx, double p_max_w,
                                        const std::vector<double>& circuit_powers_w,
                                        const OptimizeOptions& options) {
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    if (!(theta_grid[i] >= 0.0 && theta_grid[i] <= 1.0))
      throw DomainError("pareto_sweep: theta grid must lie in [0,1]");
    if (i > 0 && theta_grid[i] < theta_grid[i - 1])
      throw OrderingError("pareto_sweep: theta grid must ascend");
  }
  std::vector<TradeoffPoint> points;
  points.reserve(theta_grid.size());
  OptimizeOptions opts = options;
  for (double theta : theta_grid) {
    auto point = optimize_power(theta, ctx, p_max_w, circuit_powers_w, opts);
    opts.extra_starts = {point.allocation.powers_w};
    points.push_back(std::move(point));
  }
  return points;
}

UnimodalityReport unimodality_check(double theta, const ChannelContext& ctx, double p_max_w,
                                    double circuit_power_w, std::size_t samples) {
  if (ctx.coeff_per_w.size() != 1) throw DomainError("unimodality_check: needs exactly one user");
  if (!(theta >= 0.0 && theta <= 1.0))
    throw DomainError("unimodality_check: theta must lie in [0,1]");
  if (!(p_max_w > 0)) throw DomainError("unimodality_check: p_max must be > 0");
  if (circuit_power_w < 0) throw DomainError("unimodality_check: circuit power must be >= 0");
  if (samples < 2) throw DomainError("unimodality_check: need at least two samples");

  const std::vector<double> circuits = {circuit_power_w};
  std::vector<double> values(samples);
  std::vector<double> powers(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    powers[i] = p_max_w * static_cast<double>(i) / static_cast<double>(samples - 1);
    values[i] = blended(theta, ctx.coeff_per_w, {powers[i]}, circuits);
  }

  UnimodalityReport report;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < samples; ++i)
    if (values[i] > values[peak]) peak = i;
  report.argmax_index = peak;
  report.argmax_power_w = powers[peak];
  report.max_objective = values[peak];

  constexpr double kPlateauTol = 1e-9;
  bool unimodal = true;
  for (std::size_t i = 0; i < peak; ++i)
    if (values[i + 1] < values[i] - kPlateauTol) unimodal = false;
  for (std::size_t i = peak; i + 1 < samples; ++i)
    if (values[i + 1] > values[i] + kPlateauTol) unimodal = false;
  report.unimodal = unimodal;
  return report;
}

void export_tradeoff_csv(const std::vector<TradeoffPoint>& points, const std::string& path) {
  std::size_t num_users = points.empty() ? 0 : points.front().allocation.powers_w.size();
  for (const auto& p : points)
    if (p.allocation.powers_w.size() != num_users)
      throw DomainError("export_tradeoff_csv: inconsistent user counts");
  std::vector<std::string> header = {"theta", "se", "ee", "sop"};
  for (std::size_t k = 1; k <= num_users; ++k) header.push_back("p_" + std::to_string(k));
  CsvWriter writer(path);
  writer.row(header);
  for (const auto& p : points) {
    std::vector<std::string> row = {format_sig9(p.theta), format_sig9(p.se_bits_hz),
                                    format_sig9(p.ee_bits_hz_w), format_sig9(p.sop_value)};
    for (double w : p.allocation.powers_w) row.push_back(format_sig9(w));
    writer.row(row);
  }
}

}  // namespace setsim
