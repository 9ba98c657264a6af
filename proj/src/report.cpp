#include "setsim/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

#include "setsim/csv.hpp"
#include "setsim/rng.hpp"

namespace setsim {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::NumUes: return "num_ues";
    case SweepVariable::ArrivalRate: return "arrival_rate";
    case SweepVariable::Theta: return "theta";
  }
  throw InternalError("unhandled sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "num_ues") return SweepVariable::NumUes;
  if (s == "arrival_rate") return SweepVariable::ArrivalRate;
  if (s == "theta") return SweepVariable::Theta;
  throw ParseError("sweep variable must be one of num_ues|arrival_rate|theta, got '" + s + "'");
}

namespace {

void apply_variable(ScenarioConfig& cfg, SweepVariable variable, double value) {
  switch (variable) {
    case SweepVariable::NumUes: {
      const double rounded = std::floor(value);
      if (rounded != value || value < 1)
        throw ValidationError("num_ues sweep values must be positive integers");
      cfg.num_ues = static_cast<int>(rounded);
      return;
    }
    case SweepVariable::ArrivalRate:
      if (!(value > 0)) throw ValidationError("arrival_rate sweep values must be > 0");
      cfg.arrival_rate_pkts_per_s = value;
      return;
    case SweepVariable::Theta:
      if (!(value >= 0 && value <= 1))
        throw ValidationError("theta sweep values must lie in [0,1]");
      cfg.theta_grid = {value};
      return;
  }
  throw InternalError("unhandled sweep variable");
}

}  // namespace

SweepResult sweep(const ScenarioConfig& base, SweepVariable variable,
                  const std::vector<double>& values, const std::vector<Algorithm>& algorithms,
                  int jobs, bool collect_traces) {
  if (values.empty()) throw ValidationError("sweep values must be nonempty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw OrderingError("sweep values must be sorted ascending");
  if (algorithms.empty()) throw ValidationError("sweep needs at least one algorithm");
  if (jobs < 1) throw ValidationError("jobs must be >= 1");

  SweepResult result;
  result.base = base;
  result.variable = variable;
  result.values = values;
  result.algorithms = algorithms;
  result.cells.resize(values.size() * algorithms.size());

  struct CellSpec {
    std::size_t slot;
    ScenarioConfig cfg;
    SweepVariable variable;
    double value;
    std::uint64_t seed;
  };
  std::vector<CellSpec> specs;
  specs.reserve(result.cells.size());
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    const std::uint64_t cell_seed = derive_seed(base.rng_seed, vi, RngStream::Cell);
    for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
      ScenarioConfig cfg = base;
      apply_variable(cfg, variable, values[vi]);
      cfg.algorithm = algorithms[ai];
      cfg.rng_seed = cell_seed;
      specs.push_back(CellSpec{vi * algorithms.size() + ai, std::move(cfg), variable, values[vi],
                               cell_seed});
    }
  }

  std::vector<std::exception_ptr> failures(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const CellSpec& spec = specs[i];
      try {
        RunOptions opts;
        opts.collect_trace = collect_traces;
        CellResult cell;
        cell.algorithm = spec.cfg.algorithm;
        cell.variable = spec.variable;
        cell.value = spec.value;
        cell.num_ues = spec.cfg.num_ues;
        cell.cell_seed = spec.seed;
        cell.metrics = run(spec.cfg, opts);
        result.cells[spec.slot] = std::move(cell);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const std::size_t thread_count =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), specs.size());
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!failures[i]) continue;
    const CellSpec& spec = specs[i];
    const std::string tag = "cell " + to_string(spec.cfg.algorithm) + " " +
                            to_string(spec.variable) + "=" + format_sig9(spec.value) + ": ";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      throw Error(tag + e.what());
    }
  }
  return result;
}

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

const CellResult* find_cell(const SweepResult& r, Algorithm algo, std::size_t value_index) {
  for (std::size_t ai = 0; ai < r.algorithms.size(); ++ai)
    if (r.algorithms[ai] == algo) return &r.cells[value_index * r.algorithms.size() + ai];
  return nullptr;
}

std::string ratio_str(double set_v, double drx_v) {
  return format_sig9(set_v / drx_v);
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& out_dir) {
  if (result.cells.empty()) throw ValidationError("emit_csv: no results to write");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  {
    CsvWriter w(join_path(out_dir, "se_vs_users.csv"));
    w.row({"algorithm", "variable", "value", "num_ues", "mean_cell_se_bits_per_hz"});
    for (const auto& c : result.cells)
      w.row({to_string(c.algorithm), to_string(c.variable), format_sig9(c.value),
             std::to_string(c.num_ues), format_sig9(c.metrics.mean_cell_se_bits_hz)});
  }
  {
    CsvWriter w(join_path(out_dir, "delay_vs_users.csv"));
    w.row({"algorithm", "variable", "value", "num_ues", "avg_response_delay_ms",
           "delay_violations"});
    for (const auto& c : result.cells)
      w.row({to_string(c.algorithm), to_string(c.variable), format_sig9(c.value),
             std::to_string(c.num_ues), format_sig9(c.metrics.avg_response_delay_ms),
             std::to_string(c.metrics.delay_violations)});
  }
  {
    CsvWriter w(join_path(out_dir, "energy.csv"));
    w.row({"algorithm", "variable", "value", "consumed_j", "lifetime_s", "depleted"});
    for (const auto& c : result.cells)
      w.row({to_string(c.algorithm), to_string(c.variable), format_sig9(c.value),
             format_sig9(c.metrics.consumed_j), format_sig9(c.metrics.lifetime_s),
             c.metrics.depleted ? "1" : "0"});
  }
  {
    CsvWriter w(join_path(out_dir, "tradeoff.csv"));
    w.row({"algorithm", "theta", "se", "ee", "sop"});
    for (const auto& c : result.cells)
      for (const auto& p : c.metrics.tradeoff)
        w.row({to_string(c.algorithm), format_sig9(p.theta), format_sig9(p.se_bits_hz),
               format_sig9(p.ee_bits_hz_w), format_sig9(p.sop_value)});
  }
  {
    CsvWriter w(join_path(out_dir, "summary.csv"));
    w.row({"variable", "value", "se_ratio_set_over_drx", "delay_ratio_set_over_drx",
           "energy_ratio_set_over_drx", "lifetime_ratio_set_over_drx"});
    for (std::size_t vi = 0; vi < result.values.size(); ++vi) {
      const CellResult* set_cell = find_cell(result, Algorithm::Set, vi);
      const CellResult* drx_cell = find_cell(result, Algorithm::Drx, vi);
      if (!set_cell || !drx_cell) continue;
      const RunMetrics& s = set_cell->metrics;
      const RunMetrics& d = drx_cell->metrics;
      w.row({to_string(result.variable), format_sig9(result.values[vi]),
             ratio_str(s.mean_cell_se_bits_hz, d.mean_cell_se_bits_hz),
             ratio_str(s.avg_response_delay_ms, d.avg_response_delay_ms),
             ratio_str(s.consumed_j, d.consumed_j), ratio_str(s.lifetime_s, d.lifetime_s)});
    }
  }
  {
    CsvWriter w(join_path(out_dir, "metadata.csv"));
    w.row({"key", "value"});
    for (const auto& [key, value] : scenario_items(result.base)) w.row({key, value});
    w.row({"sweep_variable", to_string(result.variable)});
    std::string joined;
    for (std::size_t i = 0; i < result.values.size(); ++i) {
      if (i) joined += ",";
      joined += format_sig9(result.values[i]);
    }
    w.row({"sweep_values", joined});
    std::string algos;
    for (std::size_t i = 0; i < result.algorithms.size(); ++i) {
      if (i) algos += ",";
      algos += to_string(result.algorithms[i]);
    }
    w.row({"algorithms", algos});
    for (std::size_t vi = 0; vi < result.values.size(); ++vi)
      w.row({"cell_seed_" + std::to_string(vi),
             std::to_string(result.cells[vi * result.algorithms.size()].cell_seed)});
  }
}

}  // namespace setsim
