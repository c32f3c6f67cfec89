#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rrm/radar_model.hpp"
#include "rrm/sync_planner.hpp"
#include "rrm/tracker.hpp"

namespace rrm {

struct TargetSpec {
    double spawn_time_s = 0.0;
    Eigen::Vector3d position_m = Eigen::Vector3d::Zero();  // at spawn time
    Eigen::Vector3d velocity_ms = Eigen::Vector3d::Zero();
    double rcs_m2 = 1.0;
};

struct SearchParams {
    double fence_az_halfwidth_rad = 0.6981317007977318;  // 40 deg
    double fence_el_min_rad = 0.017453292519943295;      // 1 deg
    double fence_el_extent_rad = 0.08726646259971647;    // 5 deg
    double unloaded_full_update_s = 10.0;
    double priority = 1.0;
    int share_levels = 8;  // searchable time fractions of the period, 1/levels steps
};

struct TrackTaskOptions {
    std::vector<double> revisit_options_s{0.25, 0.5, 1.0};
    std::vector<int> pulse_options{32, 64};
    double pulse_duration_s = 0.001;
    double priority = 30.0;
    double planning_rcs_m2 = 1.0;  // assumed cross-section when predicting dwell SNR
};

struct StrategySpec {
    enum class Kind { CaseDecision, RegUpdate, TimeBalanced };
    Kind kind = Kind::CaseDecision;
    double period_s = 0.0;  // regUpdate interval / time-balance desired period

    std::string name() const;
    static StrategySpec parse(const std::string& name);  // "caseDecision", "regUpdate3", "TBreg3", ...
};

struct ScenarioConfig {
    double duration_s = 60.0;
    double planning_period_s = 1.0;
    double sync_dwell_s = 0.231;
    Eigen::Vector3d tx_pos_m = Eigen::Vector3d::Zero();
    Eigen::Vector3d rx_pos_m = Eigen::Vector3d(20000.0, 0.0, 0.0);
    std::vector<TargetSpec> targets;
    RadarParams radar = calibrated_radar_params();
    double clock_step_bound_s = 2e-6;
    SearchParams search;
    TrackTaskOptions track_task;
    TrackUtilityParams utility;
    TrackerParams tracker;
    StrategySpec strategy;
    int mc_samples = 2000;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
};

// The experiment shipped as the default: six targets entering the fence at
// ten-second intervals, transmitter and receiver 20 km apart.
ScenarioConfig default_scenario();

struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigInvalidError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON text round trip. All fields are optional in the input and default to
// the values above; unknown keys are rejected with their path. Units in the
// file are the same SI units the structs use, so a serialize/parse cycle is
// byte-stable.
std::string serialize_config(const ScenarioConfig& config);
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

// Cross-field checks (positive durations, sync dwell shorter than the
// period, target speeds within limits, ...). Throws ConfigInvalidError.
void validate_config(const ScenarioConfig& config);

// Stable fingerprint of the serialized configuration.
std::string config_hash(const ScenarioConfig& config);

}  // namespace rrm
