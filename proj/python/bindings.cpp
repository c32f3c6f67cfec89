#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rrm/clock_model.hpp"
#include "rrm/engine.hpp"
#include "rrm/report_io.hpp"

namespace py = pybind11;

PYBIND11_MODULE(rrmsim, m) {
    m.doc() = "Bistatic radar resource management with adaptive synchronisation scheduling";
    m.attr("__version__") = rrm::kArtifactVersion;
    m.attr("SPEED_OF_LIGHT") = rrm::kSpeedOfLight;

    // resources / Q-RAM
    py::class_<rrm::ResourceVector>(m, "ResourceVector")
        .def(py::init<std::vector<double>>())
        .def_static("zeros", &rrm::ResourceVector::zeros)
        .def_static("scalar", &rrm::ResourceVector::scalar)
        .def_property_readonly("components", &rrm::ResourceVector::components)
        .def("__len__", &rrm::ResourceVector::size)
        .def("__getitem__", [](const rrm::ResourceVector& v, std::size_t i) {
            if (i >= v.size()) throw py::index_error();
            return v[i];
        });

    py::enum_<rrm::TaskKind>(m, "TaskKind")
        .value("Search", rrm::TaskKind::Search)
        .value("Track", rrm::TaskKind::Track)
        .value("Sync", rrm::TaskKind::Sync);

    py::class_<rrm::TaskConfig>(m, "TaskConfig")
        .def(py::init<>())
        .def_readwrite("task_id", &rrm::TaskConfig::task_id)
        .def_readwrite("kind", &rrm::TaskConfig::kind)
        .def_readwrite("params", &rrm::TaskConfig::params)
        .def_readwrite("quality", &rrm::TaskConfig::quality)
        .def_readwrite("utility", &rrm::TaskConfig::utility)
        .def_readwrite("resources", &rrm::TaskConfig::resources)
        .def_readwrite("compound", &rrm::TaskConfig::compound);

    py::class_<rrm::JobList>(m, "JobList")
        .def_readonly("task_id", &rrm::JobList::task_id)
        .def_readonly("kind", &rrm::JobList::kind)
        .def_readonly("entries", &rrm::JobList::entries);

    py::class_<rrm::Allocation>(m, "Allocation")
        .def_readonly("selected", &rrm::Allocation::selected)
        .def_readonly("total_utility", &rrm::Allocation::total_utility)
        .def_readonly("total_resources", &rrm::Allocation::total_resources);

    m.def("compound_resource", &rrm::compound_resource, py::arg("resources"), py::arg("weights"));
    m.def("build_job_list", &rrm::build_job_list, py::arg("task_id"), py::arg("configs"));
    m.def(
        "greedy_allocate",
        [](const std::vector<rrm::JobList>& lists, const rrm::ResourceVector& bounds) {
            return rrm::greedy_allocate(lists, bounds);
        },
        py::arg("job_lists"), py::arg("bounds"));

    // clock
    py::class_<rrm::DriftingClock>(m, "DriftingClock")
        .def(py::init<double, std::uint64_t, double>(), py::arg("step_bound_s"), py::arg("seed"),
             py::arg("start_time_s") = 0.0)
        .def("advance", &rrm::DriftingClock::advance)
        .def("apply_sync", &rrm::DriftingClock::apply_sync)
        .def("offset_at", &rrm::DriftingClock::offset_at)
        .def_property_readonly("current_offset", &rrm::DriftingClock::current_offset)
        .def_property_readonly("current_time", &rrm::DriftingClock::current_time)
        .def_property_readonly("last_sync_time", &rrm::DriftingClock::last_sync_time);

    m.def("range_error_from_clock", &rrm::range_error_from_clock, py::arg("offset_s"));

    // radar models
    py::class_<rrm::RadarParams>(m, "RadarParams")
        .def(py::init<>())
        .def_readwrite("peak_power_w", &rrm::RadarParams::peak_power_w)
        .def_readwrite("compression_ratio", &rrm::RadarParams::compression_ratio)
        .def_readwrite("gain_tx", &rrm::RadarParams::gain_tx)
        .def_readwrite("gain_rx", &rrm::RadarParams::gain_rx)
        .def_readwrite("wavelength_m", &rrm::RadarParams::wavelength_m)
        .def_readwrite("system_loss", &rrm::RadarParams::system_loss)
        .def_readwrite("noise_factor", &rrm::RadarParams::noise_factor)
        .def_readwrite("thermal_noise_w", &rrm::RadarParams::thermal_noise_w)
        .def_readwrite("comm_mismatch_loss", &rrm::RadarParams::comm_mismatch_loss)
        .def_readwrite("beamwidth_az_rad", &rrm::RadarParams::beamwidth_az_rad)
        .def_readwrite("beamwidth_el_rad", &rrm::RadarParams::beamwidth_el_rad)
        .def_readwrite("max_range_m", &rrm::RadarParams::max_range_m)
        .def_readwrite("detection_threshold", &rrm::RadarParams::detection_threshold)
        .def_readwrite("range_std_m", &rrm::RadarParams::range_std_m)
        .def_readwrite("search_pulses", &rrm::RadarParams::search_pulses);

    m.def("calibrated_radar_params", &rrm::calibrated_radar_params);
    m.def("snr", &rrm::snr, py::arg("params"), py::arg("target_pos"), py::arg("rcs_m2"),
          py::arg("pulses"), py::arg("tx_pos"), py::arg("rx_pos"), py::arg("beam_dir"),
          py::arg("comm_mismatch"));
    m.def("angle_std", &rrm::angle_std, py::arg("snr"), py::arg("beamwidth_rad"));
    m.def("db", &rrm::lin2db, py::arg("linear"));
    m.def("from_db", &rrm::db2lin, py::arg("db"));

    py::class_<rrm::BistaticMeasurement>(m, "BistaticMeasurement")
        .def(py::init<>())
        .def_readwrite("sum_range_m", &rrm::BistaticMeasurement::sum_range_m)
        .def_readwrite("az_rad", &rrm::BistaticMeasurement::az_rad)
        .def_readwrite("el_rad", &rrm::BistaticMeasurement::el_rad)
        .def_readwrite("snr", &rrm::BistaticMeasurement::snr)
        .def_readwrite("time_s", &rrm::BistaticMeasurement::time_s);

    py::class_<rrm::MonostaticMeasurement>(m, "MonostaticMeasurement")
        .def_readonly("range_m", &rrm::MonostaticMeasurement::range_m)
        .def_readonly("az_rad", &rrm::MonostaticMeasurement::az_rad)
        .def_readonly("el_rad", &rrm::MonostaticMeasurement::el_rad)
        .def_readonly("covariance", &rrm::MonostaticMeasurement::covariance)
        .def_readonly("time_s", &rrm::MonostaticMeasurement::time_s);

    m.def("bistatic_to_monostatic", &rrm::bistatic_to_monostatic, py::arg("measurement"),
          py::arg("tx_pos"), py::arg("rx_pos"));
    m.def("mc_covariance", &rrm::mc_covariance, py::arg("measurement"), py::arg("sigma_sum_range_m"),
          py::arg("sigma_az_rad"), py::arg("sigma_el_rad"), py::arg("tx_pos"), py::arg("rx_pos"),
          py::arg("n_samples"), py::arg("seed"));
    m.def("convert_measurement", &rrm::convert_measurement, py::arg("measurement"),
          py::arg("sigma_sum_range_m"), py::arg("sigma_az_rad"), py::arg("sigma_el_rad"),
          py::arg("tx_pos"), py::arg("rx_pos"), py::arg("n_samples"), py::arg("seed"));

    // sync planning
    py::class_<rrm::SyncScheme>(m, "SyncScheme")
        .def_readonly("scheme_id", &rrm::SyncScheme::scheme_id)
        .def_readonly("sync_times", &rrm::SyncScheme::sync_times)
        .def_readonly("resource_cost", &rrm::SyncScheme::resource_cost);

    m.def("make_sync_scheme", &rrm::make_sync_scheme, py::arg("scheme_id"), py::arg("sync_times"),
          py::arg("dwell_duration_s"), py::arg("resource_types"));

    py::class_<rrm::SyncErrorProfile>(m, "SyncErrorProfile")
        .def("std_at", &rrm::SyncErrorProfile::std_at)
        .def_property_readonly("horizon", &rrm::SyncErrorProfile::horizon);

    m.def("predict_sync_error", &rrm::predict_sync_error, py::arg("last_sync_age_s"), py::arg("scheme"),
          py::arg("drift_step_bound_s"), py::arg("horizon_s"));

    py::class_<rrm::TrackUtilityParams>(m, "TrackUtilityParams")
        .def(py::init<>())
        .def_readwrite("sigma_max_m", &rrm::TrackUtilityParams::sigma_max_m)
        .def_readwrite("range_std_m", &rrm::TrackUtilityParams::range_std_m)
        .def_readwrite("velocity_std_ms", &rrm::TrackUtilityParams::velocity_std_ms);

    m.def("predicted_track_error", &rrm::predicted_track_error, py::arg("predicted_range_m"),
          py::arg("sigma_az_rad"), py::arg("sigma_el_rad"), py::arg("revisit_s"),
          py::arg("sync_range_std_m"), py::arg("params"));
    m.def("rebuild_utilities", &rrm::rebuild_utilities, py::arg("job_lists"), py::arg("profile"),
          py::arg("params"));

    py::class_<rrm::ClockInfo>(m, "ClockInfo")
        .def(py::init<>())
        .def_readwrite("last_sync_age_s", &rrm::ClockInfo::last_sync_age_s)
        .def_readwrite("step_bound_s", &rrm::ClockInfo::step_bound_s);

    py::class_<rrm::SchemeEvaluation>(m, "SchemeEvaluation")
        .def_readonly("scheme_id", &rrm::SchemeEvaluation::scheme_id)
        .def_readonly("feasible", &rrm::SchemeEvaluation::feasible)
        .def_readonly("allocation", &rrm::SchemeEvaluation::allocation)
        .def_readonly("system_utility", &rrm::SchemeEvaluation::system_utility)
        .def_readonly("profile", &rrm::SchemeEvaluation::profile);

    py::class_<rrm::SchemeSelection>(m, "SchemeSelection")
        .def_readonly("chosen", &rrm::SchemeSelection::chosen)
        .def_readonly("evaluations", &rrm::SchemeSelection::evaluations);

    m.def(
        "select_scheme",
        [](const std::vector<rrm::SyncScheme>& schemes, const std::vector<rrm::JobList>& lists,
           const rrm::ResourceVector& bounds, const rrm::ClockInfo& clock, double horizon,
           const rrm::TrackUtilityParams& params) {
            return rrm::select_scheme(schemes, lists, bounds, clock, horizon, params);
        },
        py::arg("schemes"), py::arg("job_lists"), py::arg("bounds"), py::arg("clock"),
        py::arg("horizon_s"), py::arg("params"));

    // statistics
    py::class_<rrm::SampleStats>(m, "SampleStats")
        .def_readonly("median", &rrm::SampleStats::median)
        .def_readonly("min", &rrm::SampleStats::min)
        .def_readonly("max", &rrm::SampleStats::max)
        .def_readonly("mean", &rrm::SampleStats::mean)
        .def_readonly("std_dev", &rrm::SampleStats::std_dev)
        .def_readonly("count", &rrm::SampleStats::count);

    m.def("compute_stats", &rrm::compute_stats, py::arg("samples"));

    // scenario + engine (configs travel as JSON text)
    py::class_<rrm::TrackErrorSample>(m, "TrackErrorSample")
        .def_readonly("time_s", &rrm::TrackErrorSample::time_s)
        .def_readonly("track_id", &rrm::TrackErrorSample::track_id)
        .def_readonly("target_id", &rrm::TrackErrorSample::target_id)
        .def_readonly("position_error_m", &rrm::TrackErrorSample::position_error_m);

    py::class_<rrm::RunReport>(m, "RunReport")
        .def_readonly("strategy", &rrm::RunReport::strategy)
        .def_readonly("seed", &rrm::RunReport::seed)
        .def_readonly("error_samples", &rrm::RunReport::error_samples)
        .def_readonly("sync_times", &rrm::RunReport::sync_times)
        .def_readonly("stats", &rrm::RunReport::stats)
        .def_readonly("tracks_acquired", &rrm::RunReport::tracks_acquired)
        .def_readonly("targets_total", &rrm::RunReport::targets_total)
        .def_readonly("mean_period_load", &rrm::RunReport::mean_period_load)
        .def_readonly("max_period_load", &rrm::RunReport::max_period_load)
        .def_readonly("budget_violations", &rrm::RunReport::budget_violations);

    py::class_<rrm::MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("runs", &rrm::MonteCarloSummary::runs)
        .def_readonly("pooled", &rrm::MonteCarloSummary::pooled)
        .def_readonly("mean_sync_count", &rrm::MonteCarloSummary::mean_sync_count)
        .def_readonly("mean_tracks_acquired", &rrm::MonteCarloSummary::mean_tracks_acquired);

    m.def("default_scenario_json", []() { return rrm::serialize_config(rrm::default_scenario()); });
    m.def("config_hash", [](const std::string& json_text) {
        return rrm::config_hash(rrm::parse_config(json_text));
    });
    m.def(
        "run_scenario",
        [](const std::string& config_json, std::uint64_t seed) {
            return rrm::run(rrm::parse_config(config_json), seed);
        },
        py::arg("config_json"), py::arg("seed"));
    m.def(
        "monte_carlo",
        [](const std::string& config_json, int n_runs, int threads) {
            return rrm::monte_carlo(rrm::parse_config(config_json), n_runs, threads);
        },
        py::arg("config_json"), py::arg("n_runs"), py::arg("threads") = 1);
}
