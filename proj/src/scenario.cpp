#include "rrm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rrm/rng.hpp"

namespace rrm {

using nlohmann::json;

std::string StrategySpec::name() const {
    auto fmt_period = [](double p) {
        char buf[32];
        if (p == std::floor(p) && p < 1e9) {
            std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(p));
        } else {
            std::snprintf(buf, sizeof(buf), "%g", p);
        }
        return std::string(buf);
    };
    switch (kind) {
        case Kind::CaseDecision: return "caseDecision";
        case Kind::RegUpdate: return "regUpdate" + fmt_period(period_s);
        case Kind::TimeBalanced: return "TBreg" + fmt_period(period_s);
    }
    return "unknown";
}

StrategySpec StrategySpec::parse(const std::string& name) {
    auto parse_period = [&](const std::string& tail) {
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(tail, &pos);
        } catch (const std::exception&) {
            throw ConfigParseError("strategy '" + name + "': cannot parse period");
        }
        if (pos != tail.size() || !(value > 0.0)) {
            throw ConfigParseError("strategy '" + name + "': period must be a positive number");
        }
        return value;
    };
    if (name == "caseDecision") {
        return {Kind::CaseDecision, 0.0};
    }
    if (name.rfind("regUpdate", 0) == 0) {
        return {Kind::RegUpdate, parse_period(name.substr(9))};
    }
    if (name.rfind("TBreg", 0) == 0) {
        return {Kind::TimeBalanced, parse_period(name.substr(5))};
    }
    throw ConfigParseError("unknown strategy '" + name +
                           "' (expected caseDecision, regUpdate<seconds> or TBreg<seconds>)");
}

ScenarioConfig default_scenario() {
    ScenarioConfig cfg;
    cfg.targets = {
        {0.0, {-60e3, 220e3, 7000.0}, {250.0, -1100.0, 0.0}, 3.0},
        {10.0, {90e3, 200e3, 6500.0}, {-300.0, -1030.0, 0.0}, 3.0},
        {20.0, {-130e3, 190e3, 8000.0}, {450.0, -1000.0, 0.0}, 3.0},
        {30.0, {20e3, 230e3, 7500.0}, {-100.0, -1200.0, 0.0}, 3.0},
        {40.0, {120e3, 190e3, 6000.0}, {-400.0, -900.0, 0.0}, 3.0},
        {50.0, {-40e3, 170e3, 5500.0}, {150.0, -1250.0, 0.0}, 3.0},
    };
    return cfg;
}

namespace {

json vec3_to_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec3_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigParseError(path + ": expected an array of 3 numbers");
    }
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigParseError(path + ": expected an array of 3 numbers");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void read_field(const json& j, const std::string& key, const std::string& path, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigParseError(path + "." + key + ": wrong type");
    }
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigParseError(path + "." + key + ": unknown field");
    }
}

}  // namespace

std::string serialize_config(const ScenarioConfig& c) {
    json j;
    j["duration_s"] = c.duration_s;
    j["planning_period_s"] = c.planning_period_s;
    j["sync_dwell_s"] = c.sync_dwell_s;
    j["tx_pos_m"] = vec3_to_json(c.tx_pos_m);
    j["rx_pos_m"] = vec3_to_json(c.rx_pos_m);

    j["targets"] = json::array();
    for (const TargetSpec& t : c.targets) {
        j["targets"].push_back({{"spawn_time_s", t.spawn_time_s},
                                {"position_m", vec3_to_json(t.position_m)},
                                {"velocity_ms", vec3_to_json(t.velocity_ms)},
                                {"rcs_m2", t.rcs_m2}});
    }

    j["radar"] = {{"peak_power_w", c.radar.peak_power_w},
                  {"compression_ratio", c.radar.compression_ratio},
                  {"gain_tx", c.radar.gain_tx},
                  {"gain_rx", c.radar.gain_rx},
                  {"wavelength_m", c.radar.wavelength_m},
                  {"system_loss", c.radar.system_loss},
                  {"noise_factor", c.radar.noise_factor},
                  {"thermal_noise_w", c.radar.thermal_noise_w},
                  {"comm_mismatch_loss", c.radar.comm_mismatch_loss},
                  {"beamwidth_az_rad", c.radar.beamwidth_az_rad},
                  {"beamwidth_el_rad", c.radar.beamwidth_el_rad},
                  {"max_range_m", c.radar.max_range_m},
                  {"detection_threshold", c.radar.detection_threshold},
                  {"range_std_m", c.radar.range_std_m},
                  {"search_pulses", c.radar.search_pulses}};

    j["clock"] = {{"step_bound_s", c.clock_step_bound_s}};

    j["search"] = {{"fence_az_halfwidth_rad", c.search.fence_az_halfwidth_rad},
                   {"fence_el_min_rad", c.search.fence_el_min_rad},
                   {"fence_el_extent_rad", c.search.fence_el_extent_rad},
                   {"unloaded_full_update_s", c.search.unloaded_full_update_s},
                   {"priority", c.search.priority},
                   {"share_levels", c.search.share_levels}};

    j["track"] = {{"revisit_options_s", c.track_task.revisit_options_s},
                  {"pulse_options", c.track_task.pulse_options},
                  {"pulse_duration_s", c.track_task.pulse_duration_s},
                  {"priority", c.track_task.priority},
                  {"planning_rcs_m2", c.track_task.planning_rcs_m2}};

    j["utility"] = {{"sigma_max_m", c.utility.sigma_max_m},
                    {"velocity_std_ms", c.utility.velocity_std_ms}};

    j["tracker"] = {{"process_noise_q", c.tracker.process_noise_q},
                    {"gate_threshold", c.tracker.gate_threshold},
                    {"confirm_hits", c.tracker.confirm_hits},
                    {"confirm_window", c.tracker.confirm_window},
                    {"drop_after_misses", c.tracker.drop_after_misses},
                    {"initial_velocity_std", c.tracker.initial_velocity_std}};

    j["strategy"] = c.strategy.name();
    j["mc_samples"] = c.mc_samples;
    j["seeds"] = c.seeds;
    return j.dump(2) + "\n";
}

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigParseError("config root must be a JSON object");

    check_keys(j, "config",
               {"duration_s", "planning_period_s", "sync_dwell_s", "tx_pos_m", "rx_pos_m", "targets",
                "radar", "clock", "search", "track", "utility", "tracker", "strategy", "mc_samples",
                "seeds"});

    ScenarioConfig c = default_scenario();
    read_field(j, "duration_s", "config", c.duration_s);
    read_field(j, "planning_period_s", "config", c.planning_period_s);
    read_field(j, "sync_dwell_s", "config", c.sync_dwell_s);
    if (j.contains("tx_pos_m")) c.tx_pos_m = vec3_from_json(j["tx_pos_m"], "config.tx_pos_m");
    if (j.contains("rx_pos_m")) c.rx_pos_m = vec3_from_json(j["rx_pos_m"], "config.rx_pos_m");

    if (j.contains("targets")) {
        if (!j["targets"].is_array()) throw ConfigParseError("config.targets: expected an array");
        c.targets.clear();
        int idx = 0;
        for (const json& tj : j["targets"]) {
            const std::string path = "config.targets[" + std::to_string(idx++) + "]";
            if (!tj.is_object()) throw ConfigParseError(path + ": expected an object");
            check_keys(tj, path, {"spawn_time_s", "position_m", "velocity_ms", "rcs_m2"});
            TargetSpec t;
            read_field(tj, "spawn_time_s", path, t.spawn_time_s);
            if (tj.contains("position_m")) t.position_m = vec3_from_json(tj["position_m"], path + ".position_m");
            if (tj.contains("velocity_ms")) t.velocity_ms = vec3_from_json(tj["velocity_ms"], path + ".velocity_ms");
            read_field(tj, "rcs_m2", path, t.rcs_m2);
            c.targets.push_back(t);
        }
    }

    if (j.contains("radar")) {
        const json& r = j["radar"];
        check_keys(r, "config.radar",
                   {"peak_power_w", "compression_ratio", "gain_tx", "gain_rx", "wavelength_m",
                    "system_loss", "noise_factor", "thermal_noise_w", "comm_mismatch_loss",
                    "beamwidth_az_rad", "beamwidth_el_rad", "max_range_m", "detection_threshold",
                    "range_std_m", "search_pulses"});
        read_field(r, "peak_power_w", "config.radar", c.radar.peak_power_w);
        read_field(r, "compression_ratio", "config.radar", c.radar.compression_ratio);
        read_field(r, "gain_tx", "config.radar", c.radar.gain_tx);
        read_field(r, "gain_rx", "config.radar", c.radar.gain_rx);
        read_field(r, "wavelength_m", "config.radar", c.radar.wavelength_m);
        read_field(r, "system_loss", "config.radar", c.radar.system_loss);
        read_field(r, "noise_factor", "config.radar", c.radar.noise_factor);
        read_field(r, "thermal_noise_w", "config.radar", c.radar.thermal_noise_w);
        read_field(r, "comm_mismatch_loss", "config.radar", c.radar.comm_mismatch_loss);
        read_field(r, "beamwidth_az_rad", "config.radar", c.radar.beamwidth_az_rad);
        read_field(r, "beamwidth_el_rad", "config.radar", c.radar.beamwidth_el_rad);
        read_field(r, "max_range_m", "config.radar", c.radar.max_range_m);
        read_field(r, "detection_threshold", "config.radar", c.radar.detection_threshold);
        read_field(r, "range_std_m", "config.radar", c.radar.range_std_m);
        read_field(r, "search_pulses", "config.radar", c.radar.search_pulses);
    }

    if (j.contains("clock")) {
        check_keys(j["clock"], "config.clock", {"step_bound_s"});
        read_field(j["clock"], "step_bound_s", "config.clock", c.clock_step_bound_s);
    }

    if (j.contains("search")) {
        const json& s = j["search"];
        check_keys(s, "config.search",
                   {"fence_az_halfwidth_rad", "fence_el_min_rad", "fence_el_extent_rad",
                    "unloaded_full_update_s", "priority", "share_levels"});
        read_field(s, "fence_az_halfwidth_rad", "config.search", c.search.fence_az_halfwidth_rad);
        read_field(s, "fence_el_min_rad", "config.search", c.search.fence_el_min_rad);
        read_field(s, "fence_el_extent_rad", "config.search", c.search.fence_el_extent_rad);
        read_field(s, "unloaded_full_update_s", "config.search", c.search.unloaded_full_update_s);
        read_field(s, "priority", "config.search", c.search.priority);
        read_field(s, "share_levels", "config.search", c.search.share_levels);
    }

    if (j.contains("track")) {
        const json& t = j["track"];
        check_keys(t, "config.track",
                   {"revisit_options_s", "pulse_options", "pulse_duration_s", "priority",
                    "planning_rcs_m2"});
        read_field(t, "revisit_options_s", "config.track", c.track_task.revisit_options_s);
        read_field(t, "pulse_options", "config.track", c.track_task.pulse_options);
        read_field(t, "pulse_duration_s", "config.track", c.track_task.pulse_duration_s);
        read_field(t, "priority", "config.track", c.track_task.priority);
        read_field(t, "planning_rcs_m2", "config.track", c.track_task.planning_rcs_m2);
    }

    if (j.contains("utility")) {
        check_keys(j["utility"], "config.utility", {"sigma_max_m", "velocity_std_ms"});
        read_field(j["utility"], "sigma_max_m", "config.utility", c.utility.sigma_max_m);
        read_field(j["utility"], "velocity_std_ms", "config.utility", c.utility.velocity_std_ms);
    }

    if (j.contains("tracker")) {
        const json& t = j["tracker"];
        check_keys(t, "config.tracker",
                   {"process_noise_q", "gate_threshold", "confirm_hits", "confirm_window",
                    "drop_after_misses", "initial_velocity_std"});
        read_field(t, "process_noise_q", "config.tracker", c.tracker.process_noise_q);
        read_field(t, "gate_threshold", "config.tracker", c.tracker.gate_threshold);
        read_field(t, "confirm_hits", "config.tracker", c.tracker.confirm_hits);
        read_field(t, "confirm_window", "config.tracker", c.tracker.confirm_window);
        read_field(t, "drop_after_misses", "config.tracker", c.tracker.drop_after_misses);
        read_field(t, "initial_velocity_std", "config.tracker", c.tracker.initial_velocity_std);
    }

    if (j.contains("strategy")) {
        if (!j["strategy"].is_string()) throw ConfigParseError("config.strategy: expected a string");
        c.strategy = StrategySpec::parse(j["strategy"].get<std::string>());
    }
    read_field(j, "mc_samples", "config", c.mc_samples);
    read_field(j, "seeds", "config", c.seeds);

    // The utility surrogate shares the measurement's fixed range noise.
    c.utility.range_std_m = c.radar.range_std_m;
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ScenarioConfig& c) {
    auto fail = [](const std::string& msg) { throw ConfigInvalidError(msg); };
    if (!(c.duration_s > 0.0)) fail("duration_s must be positive");
    if (!(c.planning_period_s > 0.0)) fail("planning_period_s must be positive");
    if (!(c.sync_dwell_s > 0.0)) fail("sync_dwell_s must be positive");
    if (c.sync_dwell_s >= c.planning_period_s) fail("sync_dwell_s must be shorter than planning_period_s");
    if (!(c.clock_step_bound_s >= 0.0)) fail("clock.step_bound_s must be non-negative");
    for (std::size_t i = 0; i < c.targets.size(); ++i) {
        const double speed = c.targets[i].velocity_ms.norm();
        if (speed < 800.0 || speed > 1300.0) {
            fail("targets[" + std::to_string(i) + "]: speed " + std::to_string(speed) +
                 " m/s outside [800, 1300]");
        }
    }
    if (c.radar.peak_power_w <= 0.0 || c.radar.wavelength_m <= 0.0 || c.radar.thermal_noise_w <= 0.0 ||
        c.radar.noise_factor <= 0.0 || c.radar.gain_tx <= 0.0 || c.radar.gain_rx <= 0.0 ||
        c.radar.compression_ratio <= 0.0) {
        fail("radar parameters must be positive");
    }
    if (c.radar.system_loss <= 0.0 || c.radar.system_loss > 1.0) fail("radar.system_loss must be in (0, 1]");
    if (c.radar.beamwidth_az_rad <= 0.0 || c.radar.beamwidth_el_rad <= 0.0) {
        fail("radar beamwidths must be positive");
    }
    if (c.radar.range_std_m <= 0.0) fail("radar.range_std_m must be positive");
    if (c.radar.search_pulses <= 0) fail("radar.search_pulses must be positive");
    if (c.search.share_levels < 1) fail("search.share_levels must be at least 1");
    if (!(c.search.unloaded_full_update_s > 0.0)) fail("search.unloaded_full_update_s must be positive");
    if (c.track_task.revisit_options_s.empty()) fail("track.revisit_options_s must not be empty");
    for (double r : c.track_task.revisit_options_s) {
        if (!(r > 0.0)) fail("track.revisit_options_s entries must be positive");
    }
    if (c.track_task.pulse_options.empty()) fail("track.pulse_options must not be empty");
    for (int p : c.track_task.pulse_options) {
        if (p <= 0) fail("track.pulse_options entries must be positive");
    }
    if (!(c.track_task.pulse_duration_s > 0.0)) fail("track.pulse_duration_s must be positive");
    if (!(c.utility.sigma_max_m > 0.0)) fail("utility.sigma_max_m must be positive");
    if (c.strategy.kind != StrategySpec::Kind::CaseDecision && !(c.strategy.period_s > 0.0)) {
        fail("strategy period must be positive");
    }
    if (c.strategy.kind != StrategySpec::Kind::CaseDecision && c.strategy.period_s < c.planning_period_s) {
        fail("strategy period must not be shorter than the planning period");
    }
    if (c.mc_samples < 100) fail("mc_samples must be at least 100");
    if (c.seeds.empty()) fail("seeds must not be empty");
}

std::string config_hash(const ScenarioConfig& c) {
    const std::string text = serialize_config(c);
    const std::uint64_t h = fnv1a64(text.data(), text.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace rrm
