#include "setsim/radio.hpp"

#include <cmath>

#include "setsim/rng.hpp"

namespace setsim {

namespace {
constexpr double kPi = 3.14159265358979323846;

double normalize_deg(double a) {
  a = std::fmod(a, 360.0);
  if (a > 180.0) a -= 360.0;
  if (a < -180.0) a += 360.0;
  return a;
}
}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) {
  if (!(lin > 0)) throw DomainError("linear_to_db: value must be > 0");
  return 10.0 * std::log10(lin);
}

double noise_power_mw(double density_dbm_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0)) throw DomainError("noise_power_mw: bandwidth must be > 0");
  return db_to_linear(density_dbm_hz + 10.0 * std::log10(bandwidth_hz));
}

double path_loss_db(double distance_m) {
  if (!(distance_m > 0)) throw DomainError("path_loss_db: distance must be > 0");
  return 128.1 + 37.6 * std::log10(distance_m / 1000.0);
}

double antenna_gain_dbi(double azimuth_offset_deg, AntennaMode mode, double boresight_gain_dbi) {
  if (mode == AntennaMode::Omni) return boresight_gain_dbi;
  const double theta_3db = mode == AntennaMode::Sector120 ? 70.0 : 35.0;
  const double offset = normalize_deg(azimuth_offset_deg);
  const double a_m = 20.0;
  const double atten = std::min(12.0 * (offset / theta_3db) * (offset / theta_3db), a_m);
  return boresight_gain_dbi - atten;
}

double channel_gain_linear(double tx_gain_dbi, double rx_gain_dbi, double loss_db) {
  return db_to_linear(tx_gain_dbi + rx_gain_dbi - loss_db);
}

double sinr(double serving_power_mw, const ChannelSnapshot& s) {
  const double denom = s.interference_mw + s.noise_mw;
  if (!(denom > 0)) throw DomainError("sinr: interference plus noise must be > 0");
  return serving_power_mw * s.gain_linear / denom;
}

double effective_coeff_per_w(const ChannelSnapshot& s) {
  return sinr(1000.0, s);
}

std::vector<UePlacement> place_ues(const ScenarioConfig& cfg) {
  const double r0 = kMinDropDistanceM;
  const double r1 = cfg.inter_enodeb_distance_m / 2.0;
  if (!(r1 > r0))
    throw DomainError("place_ues: inter_enodeb_distance_m too small for the drop annulus");
  std::vector<UePlacement> out;
  out.reserve(cfg.num_ues);
  for (int u = 0; u < cfg.num_ues; ++u) {
    SplitRng rng(derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(u), RngStream::Placement));
    const double a = rng.uniform01();
    const double r = std::sqrt(a * (r1 * r1 - r0 * r0) + r0 * r0);
    const double az = rng.uniform01() * 360.0 - 180.0;
    out.push_back({u, r, az});
  }
  return out;
}

ChannelSnapshot build_snapshot(const ScenarioConfig& cfg, const UePlacement& ue, double shadow_db) {
  const double p_ref_mw = cfg.max_tx_power_w * 1000.0;

  const double serving_loss = path_loss_db(ue.distance_m) - shadow_db;
  const double serving_tx_gain = antenna_gain_dbi(ue.azimuth_deg, cfg.antenna_mode, cfg.tx_antenna_gain_dbi);
  ChannelSnapshot snap;
  snap.ue_id = ue.ue_id;
  snap.gain_linear = channel_gain_linear(serving_tx_gain, cfg.rx_antenna_gain_dbi, serving_loss);
  snap.noise_mw = noise_power_mw(cfg.noise_density_dbm_hz, cfg.bandwidth_hz);

  // Six first-tier sites on a ring at the inter-site distance; every site's
  // sector boresight points along azimuth 0.
  const double d_site = cfg.inter_enodeb_distance_m;
  const double ux = ue.distance_m * std::cos(ue.azimuth_deg * kPi / 180.0);
  const double uy = ue.distance_m * std::sin(ue.azimuth_deg * kPi / 180.0);
  double interference = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double ang = i * 60.0 * kPi / 180.0;
    const double sx = d_site * std::cos(ang);
    const double sy = d_site * std::sin(ang);
    const double dx = ux - sx;
    const double dy = uy - sy;
    const double dist = std::sqrt(dx * dx + dy * dy);
    const double bearing = std::atan2(dy, dx) * 180.0 / kPi;
    const double tx_gain = antenna_gain_dbi(bearing, cfg.antenna_mode, cfg.tx_antenna_gain_dbi);
    const double g = channel_gain_linear(tx_gain, cfg.rx_antenna_gain_dbi, path_loss_db(dist));
    interference += p_ref_mw * g;
  }
  snap.interference_mw = interference;
  return snap;
}

}  // namespace setsim
