#include "setsim/traffic.hpp"

#include <fstream>
#include <sstream>

#include "setsim/csv.hpp"
#include "setsim/rng.hpp"

namespace setsim {

std::vector<Packet> generate_arrivals(double rate_pkts_per_s, double horizon_ms,
                                      std::uint64_t seed, int ue_id, int packet_size_bits) {
  if (rate_pkts_per_s < 0) throw DomainError("generate_arrivals: rate must be >= 0");
  if (horizon_ms < 0) throw DomainError("generate_arrivals: horizon must be >= 0");
  if (packet_size_bits <= 0) throw DomainError("generate_arrivals: packet size must be > 0");
  if (rate_pkts_per_s == 0) return {};
  SplitRng rng(derive_seed(seed, static_cast<std::uint64_t>(ue_id), RngStream::Traffic));
  const double mean_gap_ms = 1000.0 / rate_pkts_per_s;
  std::vector<Packet> out;
  double t = 0.0;
  for (;;) {
    t += rng.exponential(mean_gap_ms);
    if (t >= horizon_ms) break;
    out.push_back({ue_id, t, packet_size_bits});
  }
  return out;
}

std::vector<Packet> fixed_arrivals(const std::vector<double>& arrival_ms, int ue_id,
                                   int packet_size_bits) {
  if (packet_size_bits <= 0) throw DomainError("fixed_arrivals: packet size must be > 0");
  std::vector<Packet> out;
  out.reserve(arrival_ms.size());
  double prev = -1.0;
  for (double t : arrival_ms) {
    if (t < 0) throw DomainError("fixed_arrivals: timestamps must be >= 0");
    if (t <= prev) throw OrderingError("fixed_arrivals: timestamps must strictly increase");
    prev = t;
    out.push_back({ue_id, t, packet_size_bits});
  }
  return out;
}

IatEstimator update_iat(IatEstimator est, double arrival_ms) {
  if (!est.has_prior) {
    est.has_prior = true;
    est.estimate_ms = 0.0;
    est.last_arrival_ms = arrival_ms;
    return est;
  }
  if (arrival_ms < est.last_arrival_ms)
    throw OrderingError("update_iat: arrival time regressed");
  const double gap = arrival_ms - est.last_arrival_ms;
  est.estimate_ms = est.weight_a * gap + (1.0 - est.weight_a) * est.estimate_ms;
  est.last_arrival_ms = arrival_ms;
  return est;
}

void export_trace_csv(const std::string& path, const std::vector<Packet>& packets) {
  CsvWriter w(path);
  w.row({"ue_id", "arrival_ms", "size_bits"});
  for (const Packet& p : packets)
    w.row({std::to_string(p.ue_id), format_sig9(p.arrival_ms), std::to_string(p.size_bits)});
}

std::vector<Packet> import_trace_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ParseError("trace file is empty: " + path);
  std::vector<Packet> out;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string ue, t, bits;
    if (!std::getline(ss, ue, ',') || !std::getline(ss, t, ',') || !std::getline(ss, bits))
      throw ParseError("trace line " + std::to_string(lineno) + ": expected 3 fields");
    try {
      out.push_back({std::stoi(ue), std::stod(t), std::stoi(bits)});
    } catch (const std::exception&) {
      throw ParseError("trace line " + std::to_string(lineno) + ": bad numeric field");
    }
  }
  return out;
}

}  // namespace setsim
