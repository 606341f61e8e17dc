#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <sstream>

#include "seasearch/radio.hpp"
#include "seasearch/rangeloc.hpp"
#include "seasearch/runner.hpp"
#include "seasearch/scenario.hpp"
#include "seasearch/search.hpp"

namespace py = pybind11;
using namespace seasearch;

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Deterministic multi-UAV maritime search simulator";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

    py::enum_<Strategy>(m, "Strategy")
        .value("PARALLEL", Strategy::Parallel)
        .value("CREEPING", Strategy::Creeping)
        .value("SPIRAL", Strategy::Spiral)
        .value("INFORMED", Strategy::Informed);
    m.def("strategy_from_string", [](const std::string &s) { return strategy_from_string(s); });

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("seed", &Scenario::seed)
        .def_property_readonly("strategy", [](const Scenario &s) { return s.strategy; })
        .def("set_strategy", &Scenario::set_strategy)
        .def_readwrite("uav_count", &Scenario::uav_count)
        .def_readwrite("mission_limit", &Scenario::mission_limit)
        .def_readwrite("stop_on_found", &Scenario::stop_on_found)
        .def_readwrite("use_estimate", &Scenario::use_estimate)
        .def_readwrite("vessel_count", &Scenario::vessel_count)
        .def_readwrite("track_spacing", &Scenario::track_spacing)
        .def_readwrite("relay_spacing", &Scenario::relay_spacing)
        .def_property_readonly("zone", [](const Scenario &s) { return std::make_tuple(s.zone.x0, s.zone.y0, s.zone.x1, s.zone.y1); })
        .def("validate", &Scenario::validate);
    m.def("parse_scenario", [](const std::string &text) { return parse_scenario(text); }, py::arg("json_text"));
    m.def("load_scenario", [](const std::string &path) { return load_scenario(path); }, py::arg("path"));

    py::class_<RunMetrics>(m, "RunMetrics")
        .def_readonly("coverage_time", &RunMetrics::coverage_time)
        .def_readonly("time_to_detect", &RunMetrics::time_to_detect)
        .def_readonly("in_range_pct", &RunMetrics::in_range_pct)
        .def_readonly("gt5_relay_pct", &RunMetrics::gt5_relay_pct)
        .def_readonly("loc_rmse", &RunMetrics::loc_rmse)
        .def_readonly("loc_max", &RunMetrics::loc_max)
        .def("__repr__", [](const RunMetrics &r) {
            auto opt = [](const std::optional<double> &v) { return v ? std::to_string(*v) : std::string("None"); };
            return "RunMetrics(coverage_time=" + opt(r.coverage_time) + ", time_to_detect=" + opt(r.time_to_detect) +
                   ", in_range_pct=" + std::to_string(r.in_range_pct) + ", gt5_relay_pct=" + std::to_string(r.gt5_relay_pct) +
                   ", loc_rmse=" + std::to_string(r.loc_rmse) + ")";
        });

    m.def("run_mission", &run_mission, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_mission_logged",
        [](const Scenario &sc) {
            MissionResult r;
            {
                py::gil_scoped_release release;
                r = run_mission_logged(sc);
            }
            return py::make_tuple(r.metrics, r.log.to_ndjson());
        },
        py::arg("scenario"), "Returns (metrics, event log as NDJSON text).");

    py::class_<ResultRow>(m, "ResultRow")
        .def_readonly("run_id", &ResultRow::run_id)
        .def_readonly("seed", &ResultRow::seed)
        .def_readonly("strategy", &ResultRow::strategy)
        .def_readonly("uav_count", &ResultRow::uav_count)
        .def_readonly("metrics", &ResultRow::metrics);
    py::class_<ResultTable>(m, "ResultTable")
        .def_readonly("rows", &ResultTable::rows)
        .def("to_csv", &ResultTable::to_csv)
        .def_static("from_csv", [](const std::string &text) {
            std::istringstream in(text);
            return ResultTable::read_csv(in);
        });
    m.def(
        "monte_carlo",
        [](const Scenario &base, const std::vector<Strategy> &strategies, int n_runs, std::uint64_t seed0, int threads) {
            return monte_carlo(base, strategies, n_runs, seed0, {threads});
        },
        py::arg("base"), py::arg("strategies"), py::arg("n_runs"), py::arg("seed0") = 0, py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

    py::enum_<search::Pattern>(m, "Pattern")
        .value("PARALLEL_LINES", search::Pattern::ParallelLines)
        .value("CREEPING_LINES", search::Pattern::CreepingLines)
        .value("SQUARE_SPIRAL", search::Pattern::SquareSpiral);
    m.def(
        "generate_pattern",
        [](search::Pattern p, std::tuple<double, double, double, double> region, int n_uavs, double spacing) {
            const auto [x0, y0, x1, y1] = region;
            std::vector<std::vector<std::pair<double, double>>> out;
            for (const auto &path : search::generate_pattern(p, Rect{x0, y0, x1, y1}, n_uavs, spacing)) {
                auto &o = out.emplace_back();
                for (const auto &w : path) o.emplace_back(w.x(), w.y());
            }
            return out;
        },
        py::arg("pattern"), py::arg("region"), py::arg("n_uavs"), py::arg("spacing"),
        "Waypoint lists (x, y) per UAV for region (x0, y0, x1, y1).");

    py::class_<rangeloc::BenchResult>(m, "BenchResult")
        .def_readonly("rmse", &rangeloc::BenchResult::rmse)
        .def_readonly("median_rmse", &rangeloc::BenchResult::median_rmse)
        .def_readonly("non_monotone_iterations", &rangeloc::BenchResult::non_monotone_iterations);
    m.def("localization_bench", &rangeloc::localization_bench, py::arg("agents"), py::arg("region_size"), py::arg("trials"),
          py::arg("seed"), py::arg("relative_sigma") = 0.01);

    py::class_<radio::LinkParams>(m, "LinkParams")
        .def(py::init<>())
        .def_readwrite("tx_dbm", &radio::LinkParams::tx_dbm)
        .def_readwrite("l0_dbm", &radio::LinkParams::l0_dbm)
        .def_readwrite("fading_exponent", &radio::LinkParams::fading_exponent)
        .def_readwrite("sigma_db", &radio::LinkParams::sigma_db)
        .def_readwrite("noise_floor_dbm", &radio::LinkParams::noise_floor_dbm)
        .def_readwrite("d_max", &radio::LinkParams::d_max);
    m.def("rx_power_mean", &radio::rx_power_mean, py::arg("d"), py::arg("params") = radio::LinkParams{});
    m.def("bit_error_ratio", &radio::bit_error_ratio, py::arg("rx_dbm"), py::arg("noise_floor_dbm"));
    m.def("drop_probability", &radio::drop_probability, py::arg("ber"), py::arg("n_bytes"));
    m.def("expected_drop_probability", &radio::expected_drop_probability, py::arg("d"), py::arg("n_bytes"),
          py::arg("params") = radio::LinkParams{});
}
