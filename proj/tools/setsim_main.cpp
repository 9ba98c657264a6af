#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "setsim/engine.hpp"
#include "setsim/report.hpp"
#include "setsim/scenario.hpp"

namespace {

int verbosity() {
  const char* v = std::getenv("SETSIM_VERBOSITY");
  if (!v) return 1;
  try {
    return std::stoi(v);
  } catch (...) {
    return 1;
  }
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string item =
        list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty()) throw setsim::ParseError("empty value in sweep list");
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(item, &used);
    } catch (...) {
      throw setsim::ParseError("bad sweep value '" + item + "'");
    }
    if (used != item.size()) throw setsim::ParseError("bad sweep value '" + item + "'");
    values.push_back(d);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

struct SweepSpec {
  setsim::SweepVariable variable;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos)
    throw setsim::ParseError("--sweep expects VAR=v1,v2,..., got '" + arg + "'");
  SweepSpec spec{setsim::sweep_variable_from_string(arg.substr(0, eq)),
                 parse_values(arg.substr(eq + 1))};
  return spec;
}

std::vector<setsim::Algorithm> parse_algorithms(const std::string& arg) {
  std::vector<setsim::Algorithm> algos;
  std::size_t pos = 0;
  while (pos <= arg.size()) {
    const std::size_t comma = arg.find(',', pos);
    const std::string item =
        arg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    algos.push_back(setsim::algorithm_from_string(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 0; i < algos.size(); ++i)
    for (std::size_t j = i + 1; j < algos.size(); ++j)
      if (algos[i] == algos[j]) throw setsim::ParseError("--algo lists an algorithm twice");
  return algos;
}

int run_command(const std::string& scenario_path, const std::vector<std::string>& overrides,
                const std::string& sweep_arg, const std::string& algo_arg, int jobs,
                const std::string& out_dir, std::uint64_t seed, bool seed_given, bool trace) {
  setsim::ScenarioConfig cfg = setsim::load_scenario_file(scenario_path);
  for (const std::string& kv : overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw setsim::ParseError("--set expects key=value, got '" + kv + "'");
    setsim::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (seed_given) cfg.rng_seed = seed;
  setsim::validate(cfg);

  SweepSpec spec{setsim::SweepVariable::NumUes, {static_cast<double>(cfg.num_ues)}};
  if (!sweep_arg.empty()) spec = parse_sweep(sweep_arg);

  std::vector<setsim::Algorithm> algos = {cfg.algorithm};
  if (!algo_arg.empty()) algos = parse_algorithms(algo_arg);

  const auto result = setsim::sweep(cfg, spec.variable, spec.values, algos, jobs, trace);
  setsim::emit_csv(result, out_dir);
  if (trace) {
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto& cell = result.cells[i];
      const std::string name = "trace_" + setsim::to_string(cell.algorithm) + "_" +
                               std::to_string(i / algos.size()) + ".csv";
      setsim::export_energy_csv(cell.metrics.trace,
                                (std::filesystem::path(out_dir) / name).string());
    }
  }
  if (verbosity() >= 1)
    std::cerr << "wrote " << result.cells.size() << " cell(s) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Downlink cell simulator comparing two sleep-mode policies"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario or a sweep and emit CSVs");
  std::string scenario_path;
  std::vector<std::string> overrides;
  std::string sweep_arg;
  std::string algo_arg;
  std::string out_dir;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool trace = false;
  run_cmd->add_option("--scenario", scenario_path, "Scenario file (key = value lines)")
      ->required();
  run_cmd->add_option("--set", overrides, "Override one scenario key (key=value, repeatable)");
  run_cmd->add_option("--sweep", sweep_arg, "Sweep spec: num_ues|arrival_rate|theta=v1,v2,...");
  run_cmd->add_option("--algo", algo_arg, "Algorithms to run: set, drx or set,drx");
  run_cmd->add_option("--jobs", jobs, "Max concurrent cells")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Output directory for CSV files")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_flag("--trace", trace, "Also write per-cell energy trace CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run_command(scenario_path, overrides, sweep_arg, algo_arg, jobs, out_dir, seed,
                       seed_opt->count() > 0, trace);
  } catch (const setsim::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const setsim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const setsim::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const setsim::OrderingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
