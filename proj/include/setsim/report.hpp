#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setsim/engine.hpp"
#include "setsim/scenario.hpp"

namespace setsim {

enum class SweepVariable { NumUes, ArrivalRate, Theta };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

struct CellResult {
  Algorithm algorithm = Algorithm::Set;
  SweepVariable variable = SweepVariable::NumUes;
  double value = 0;
  int num_ues = 0;
  std::uint64_t cell_seed = 0;
  RunMetrics metrics;
};

struct SweepResult {
  ScenarioConfig base;
  SweepVariable variable = SweepVariable::NumUes;
  std::vector<double> values;
  std::vector<Algorithm> algorithms;
  std::vector<CellResult> cells;  // value-major, algorithm order within
};

// One run per (value, algorithm). Every algorithm at a given value runs under
// the same derived cell seed, so traffic and channels are shared and the
// comparison is paired. Cells execute on up to `jobs` threads; results keep
// the deterministic value-major order regardless of scheduling.
SweepResult sweep(const ScenarioConfig& base, SweepVariable variable,
                  const std::vector<double>& values, const std::vector<Algorithm>& algorithms,
                  int jobs = 1, bool collect_traces = false);

// Writes se_vs_users.csv, delay_vs_users.csv, energy.csv, tradeoff.csv,
// summary.csv and metadata.csv into out_dir (created if missing). summary.csv
// carries per-value ratios of the two algorithms and has data rows only when
// both ran.
void emit_csv(const SweepResult& result, const std::string& out_dir);

}  // namespace setsim
