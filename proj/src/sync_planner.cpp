#include "rrm/sync_planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrm/clock_model.hpp"

namespace rrm {

SyncScheme make_sync_scheme(int scheme_id, std::vector<double> sync_times, double dwell_duration_s,
                            std::size_t resource_types) {
    if (!std::is_sorted(sync_times.begin(), sync_times.end())) {
        throw std::invalid_argument("sync times must be ascending");
    }
    SyncScheme scheme;
    scheme.scheme_id = scheme_id;
    scheme.sync_times = std::move(sync_times);
    std::vector<double> cost(resource_types, 0.0);
    if (!cost.empty()) {
        cost[0] = dwell_duration_s * static_cast<double>(scheme.sync_times.size());
    }
    scheme.resource_cost = ResourceVector(std::move(cost));
    return scheme;
}

SyncErrorProfile::SyncErrorProfile(double base_age_s, double step_bound_s, std::vector<double> sync_times,
                                   double horizon_s)
    : base_age_s(base_age_s), step_bound_s_(step_bound_s), sync_times_(std::move(sync_times)),
      horizon_s_(horizon_s) {}

double SyncErrorProfile::std_at(double t_s) const {
    double age = base_age_s + t_s;
    for (auto it = sync_times_.rbegin(); it != sync_times_.rend(); ++it) {
        if (*it <= t_s) {
            age = t_s - *it;
            break;
        }
    }
    return step_bound_s_ * std::sqrt(age / 3.0);
}

double SyncErrorProfile::rms_over(std::span<const double> times_s) const {
    if (times_s.empty()) return 0.0;
    double acc = 0.0;
    for (double t : times_s) {
        const double s = std_at(t);
        acc += s * s;
    }
    return std::sqrt(acc / static_cast<double>(times_s.size()));
}

SyncErrorProfile predict_sync_error(double last_sync_age_s, const SyncScheme& scheme,
                                    double drift_step_bound_s, double horizon_s) {
    if (horizon_s < 0.0) throw std::invalid_argument("horizon must be non-negative");
    if (last_sync_age_s < 0.0) throw std::invalid_argument("sync age must be non-negative");
    if (drift_step_bound_s < 0.0) throw std::invalid_argument("drift step bound must be non-negative");
    return SyncErrorProfile(last_sync_age_s, drift_step_bound_s, scheme.sync_times, horizon_s);
}

double predicted_track_error(double predicted_range_m, double sigma_az_rad, double sigma_el_rad,
                             double revisit_s, double sync_range_std_m, const TrackUtilityParams& params) {
    const double cross_az = predicted_range_m * sigma_az_rad;
    const double cross_el = predicted_range_m * sigma_el_rad;
    const double coast = params.velocity_std_ms * revisit_s;
    return std::sqrt(params.range_std_m * params.range_std_m + sync_range_std_m * sync_range_std_m +
                     cross_az * cross_az + cross_el * cross_el + coast * coast);
}

double track_utility_from_error(double sigma_pred_m, double priority, const TrackUtilityParams& params) {
    const double u = (params.sigma_max_m - sigma_pred_m) / params.sigma_max_m;
    return priority * std::clamp(u, 0.0, 1.0);
}

double sync_range_std(const SyncErrorProfile& profile, double revisit_s) {
    if (!(revisit_s > 0.0)) throw std::invalid_argument("track config revisit must be positive");
    std::vector<double> dwell_times;
    for (double t = 0.0; t < profile.horizon(); t += revisit_s) dwell_times.push_back(t);
    return kSpeedOfLight * profile.rms_over(dwell_times);
}

void apply_track_utility(TaskConfig& config, const SyncErrorProfile& profile,
                         const TrackUtilityParams& params) {
    if (config.resources.is_zero()) return;  // idle stays at zero utility
    const double revisit = config.params.at("revisit_s");
    const double sigma = predicted_track_error(config.params.at("predicted_range_m"),
                                               config.params.at("sigma_az_rad"),
                                               config.params.at("sigma_el_rad"), revisit,
                                               sync_range_std(profile, revisit), params);
    config.quality = sigma;
    config.utility = track_utility_from_error(sigma, config.params.at("priority"), params);
}

std::vector<JobList> rebuild_utilities(std::vector<JobList> job_lists, const SyncErrorProfile& profile,
                                       const TrackUtilityParams& params) {
    for (JobList& list : job_lists) {
        if (list.kind != TaskKind::Track) continue;

        std::vector<TaskConfig> configs = std::move(list.entries);
        for (TaskConfig& c : configs) apply_track_utility(c, profile, params);
        list = build_job_list(list.task_id, std::move(configs));
    }
    return job_lists;
}

SchemeSelection select_scheme(std::span<const SyncScheme> schemes, std::span<const JobList> job_lists,
                              const ResourceVector& bounds, const ClockInfo& clock, double horizon_s,
                              const TrackUtilityParams& params) {
    if (schemes.empty()) throw std::invalid_argument("no candidate schemes");

    SchemeSelection result;
    for (const SyncScheme& scheme : schemes) {
        SchemeEvaluation eval;
        eval.scheme_id = scheme.scheme_id;
        const auto reduced = bounds.minus(scheme.resource_cost);
        if (!reduced.has_value()) {
            eval.feasible = false;
            result.evaluations.push_back(std::move(eval));
            continue;
        }
        eval.profile = predict_sync_error(clock.last_sync_age_s, scheme, clock.step_bound_s, horizon_s);
        const std::vector<JobList> rebuilt =
            rebuild_utilities(std::vector<JobList>(job_lists.begin(), job_lists.end()), eval.profile, params);
        eval.allocation = greedy_allocate(rebuilt, *reduced);
        eval.system_utility = eval.allocation.total_utility;
        eval.feasible = true;
        result.evaluations.push_back(std::move(eval));
    }

    int best = -1;
    for (int i = 0; i < static_cast<int>(result.evaluations.size()); ++i) {
        const SchemeEvaluation& e = result.evaluations[i];
        if (!e.feasible) continue;
        if (best < 0) {
            best = i;
            continue;
        }
        const SchemeEvaluation& b = result.evaluations[best];
        const double cost_e = schemes[i].resource_cost.sum();
        const double cost_b = schemes[best].resource_cost.sum();
        if (e.system_utility > b.system_utility ||
            (e.system_utility == b.system_utility && cost_e < cost_b) ||
            (e.system_utility == b.system_utility && cost_e == cost_b && e.scheme_id < b.scheme_id)) {
            best = i;
        }
    }
    if (best < 0) throw std::runtime_error("no feasible scheme");
    result.chosen = result.evaluations[best];
    return result;
}

}  // namespace rrm
