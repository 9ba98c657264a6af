#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setsim/engine.hpp"
#include "setsim/optimizer.hpp"
#include "setsim/radio.hpp"
#include "setsim/report.hpp"
#include "setsim/scenario.hpp"
#include "setsim/sleep.hpp"
#include "setsim/traffic.hpp"

namespace py = pybind11;
using namespace setsim;

namespace {

std::vector<Packet> packets_from_tuples(
    const std::vector<std::tuple<int, double, int>>& arrivals) {
  std::vector<Packet> out;
  out.reserve(arrivals.size());
  for (const auto& [ue, ms, bits] : arrivals) out.push_back(Packet{ue, ms, bits});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Downlink cell simulator comparing two sleep-mode policies";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<OrderingError>(m, "OrderingError", base);
  py::register_exception<IllegalTransition>(m, "IllegalTransition", base);
  py::register_exception<InsufficientData>(m, "InsufficientData", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<InternalError>(m, "InternalError", base);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init(&default_scenario))
      .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
      .def_readwrite("num_rbs", &ScenarioConfig::num_rbs)
      .def_readwrite("tti_ms", &ScenarioConfig::tti_ms)
      .def_readwrite("sim_duration_s", &ScenarioConfig::sim_duration_s)
      .def_readwrite("num_ues", &ScenarioConfig::num_ues)
      .def_readwrite("inter_enodeb_distance_m", &ScenarioConfig::inter_enodeb_distance_m)
      .def_readwrite("ue_speed_mps", &ScenarioConfig::ue_speed_mps)
      .def_readwrite("max_tx_power_w", &ScenarioConfig::max_tx_power_w)
      .def_readwrite("max_delay_ms", &ScenarioConfig::max_delay_ms)
      .def_readwrite("arrival_rate_pkts_per_s", &ScenarioConfig::arrival_rate_pkts_per_s)
      .def_readwrite("packet_size_bits", &ScenarioConfig::packet_size_bits)
      .def_readwrite("theta_grid", &ScenarioConfig::theta_grid)
      .def_readwrite("rng_seed", &ScenarioConfig::rng_seed)
      .def_readwrite("battery_j", &ScenarioConfig::battery_j)
      .def_property(
          "algorithm", [](const ScenarioConfig& c) { return to_string(c.algorithm); },
          [](ScenarioConfig& c, const std::string& s) { c.algorithm = algorithm_from_string(s); })
      .def_property(
          "antenna_mode", [](const ScenarioConfig& c) { return to_string(c.antenna_mode); },
          [](ScenarioConfig& c, const std::string& s) {
            c.antenna_mode = antenna_mode_from_string(s);
          })
      .def("set", &apply_override, py::arg("key"), py::arg("value"),
           "Apply one key=value override, as the CLI --set flag does")
      .def("items", &scenario_items, "Canonical (key, value) pairs")
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  m.def("default_scenario", &default_scenario);
  m.def("load_scenario", &load_scenario, py::arg("text"));
  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("config"));
  m.def("validate", &validate, py::arg("config"));
  m.def("classify", [](const ScenarioConfig& c) { return to_string(classify(c)); });

  m.def("noise_power_mw", &noise_power_mw, py::arg("density_dbm_hz"), py::arg("bandwidth_hz"));
  m.def("path_loss_db", &path_loss_db, py::arg("distance_m"));
  m.def(
      "antenna_gain_dbi",
      [](double offset_deg, const std::string& mode, double boresight_dbi) {
        return antenna_gain_dbi(offset_deg, antenna_mode_from_string(mode), boresight_dbi);
      },
      py::arg("azimuth_offset_deg"), py::arg("mode"), py::arg("boresight_gain_dbi"));

  m.def("iec", &iec, py::arg("e_total_j"), py::arg("e_remained_j"), py::arg("e_max_j"));
  m.def("fec", &fec, py::arg("a"), py::arg("e_max_j"), py::arg("e_min_j"));
  m.def("window_from_energy", &window_from_energy, py::arg("e_j"), py::arg("e_min_j"),
        py::arg("e_max_j"), py::arg("t_min_ms"), py::arg("t_max_ms"), py::arg("tti_ms"));

  m.def("se_user", &se_user, py::arg("beta"));
  m.def("se_total", &se_total, py::arg("betas"));
  m.def(
      "ee",
      [](double se, const std::vector<double>& powers_w,
         const std::vector<double>& circuit_powers_w) {
        return ee(se, PowerAllocation{powers_w, circuit_powers_w, 0});
      },
      py::arg("se_total"), py::arg("powers_w"), py::arg("circuit_powers_w"));
  m.def("sop", &sop, py::arg("se"), py::arg("ee"), py::arg("theta"));
  m.def("mop_dominates", &mop_dominates, py::arg("a_se"), py::arg("a_ee"), py::arg("b_se"),
        py::arg("b_ee"));
  m.def("total_traffic_energy_j", &total_traffic_energy_j, py::arg("num_users"),
        py::arg("e_rtx_j"), py::arg("e_stx_j"));

  py::class_<TradeoffPoint>(m, "TradeoffPoint")
      .def_readonly("theta", &TradeoffPoint::theta)
      .def_readonly("se", &TradeoffPoint::se_bits_hz)
      .def_readonly("ee", &TradeoffPoint::ee_bits_hz_w)
      .def_readonly("sop", &TradeoffPoint::sop_value)
      .def_readonly("converged", &TradeoffPoint::converged)
      .def_property_readonly("powers_w",
                             [](const TradeoffPoint& p) { return p.allocation.powers_w; });

  m.def(
      "optimize_power",
      [](double theta, const std::vector<double>& coeff_per_w, double p_max_w,
         const std::vector<double>& circuit_powers_w) {
        return optimize_power(theta, ChannelContext{coeff_per_w}, p_max_w, circuit_powers_w);
      },
      py::arg("theta"), py::arg("coeff_per_w"), py::arg("p_max_w"), py::arg("circuit_powers_w"));
  m.def(
      "pareto_sweep",
      [](const std::vector<double>& theta_grid, const std::vector<double>& coeff_per_w,
         double p_max_w, const std::vector<double>& circuit_powers_w) {
        return pareto_sweep(theta_grid, ChannelContext{coeff_per_w}, p_max_w, circuit_powers_w);
      },
      py::arg("theta_grid"), py::arg("coeff_per_w"), py::arg("p_max_w"),
      py::arg("circuit_powers_w"));

  py::class_<Packet>(m, "Packet")
      .def_readonly("ue_id", &Packet::ue_id)
      .def_readonly("arrival_ms", &Packet::arrival_ms)
      .def_readonly("size_bits", &Packet::size_bits);
  m.def("generate_arrivals", &generate_arrivals, py::arg("rate_pkts_per_s"),
        py::arg("horizon_ms"), py::arg("seed"), py::arg("ue_id"), py::arg("packet_size_bits"));

  py::class_<ModeOccupancy>(m, "ModeOccupancy")
      .def_readonly("awake", &ModeOccupancy::awake)
      .def_readonly("listening", &ModeOccupancy::listening)
      .def_readonly("initial_sleep", &ModeOccupancy::initial_sleep)
      .def_readonly("final_sleep", &ModeOccupancy::final_sleep);

  py::class_<RunMetrics>(m, "RunMetrics")
      .def_readonly("total_ttis", &RunMetrics::total_ttis)
      .def_readonly("generated_packets", &RunMetrics::generated_packets)
      .def_readonly("delivered_packets", &RunMetrics::delivered_packets)
      .def_readonly("residual_packets", &RunMetrics::residual_packets)
      .def_readonly("transmitted_bits", &RunMetrics::transmitted_bits)
      .def_readonly("mean_cell_se_bits_hz", &RunMetrics::mean_cell_se_bits_hz)
      .def_readonly("avg_response_delay_ms", &RunMetrics::avg_response_delay_ms)
      .def_readonly("delay_violations", &RunMetrics::delay_violations)
      .def_readonly("consumed_j", &RunMetrics::consumed_j)
      .def_readonly("remaining_j", &RunMetrics::remaining_j)
      .def_readonly("depleted", &RunMetrics::depleted)
      .def_readonly("lifetime_s", &RunMetrics::lifetime_s)
      .def_readonly("occupancy", &RunMetrics::occupancy)
      .def_readonly("listening_fraction", &RunMetrics::listening_fraction)
      .def_readonly("final_iat_estimate_ms", &RunMetrics::final_iat_estimate_ms)
      .def_readonly("mean_grant_coeff_per_w", &RunMetrics::mean_grant_coeff_per_w)
      .def_readonly("tradeoff", &RunMetrics::tradeoff)
      .def_property_readonly("trace_modes",
                             [](const RunMetrics& r) { return trace_mode_string(r.trace); });

  m.def(
      "run",
      [](const ScenarioConfig& cfg, bool collect_trace,
         const std::optional<std::vector<std::tuple<int, double, int>>>& arrivals) {
        RunOptions opts;
        opts.collect_trace = collect_trace;
        if (arrivals) opts.arrivals = packets_from_tuples(*arrivals);
        return run(cfg, opts);
      },
      py::arg("config"), py::arg("collect_trace") = false, py::arg("arrivals") = py::none(),
      "Simulate one cell; scripted arrivals are (ue_id, arrival_ms, size_bits) tuples");

  m.def(
      "sweep_and_emit",
      [](const ScenarioConfig& base, const std::string& variable,
         const std::vector<double>& values, const std::vector<std::string>& algorithms, int jobs,
         const std::string& out_dir) {
        std::vector<Algorithm> algos;
        for (const auto& a : algorithms) algos.push_back(algorithm_from_string(a));
        const auto result = sweep(base, sweep_variable_from_string(variable), values, algos, jobs);
        emit_csv(result, out_dir);
        return result.cells.size();
      },
      py::arg("config"), py::arg("variable"), py::arg("values"), py::arg("algorithms"),
      py::arg("jobs"), py::arg("out_dir"),
      "Run a sweep and write the CSV set; returns the number of cells");
}
