#pragma once

#include <span>
#include <vector>

#include "rrm/qram.hpp"

namespace rrm {

// Candidate placement of sync dwells within one planning period, with the
// aperture time the dwells consume.
struct SyncScheme {
    int scheme_id = 0;
    std::vector<double> sync_times;  // offsets into the period, ascending
    ResourceVector resource_cost;
};

SyncScheme make_sync_scheme(int scheme_id, std::vector<double> sync_times, double dwell_duration_s,
                            std::size_t resource_types);

// Predicted standard deviation of the receiver clock offset over a planning
// horizon: d * sqrt(age / 3), where the age restarts at every sync event of
// the scheme and otherwise keeps growing from the last sync before the
// period.
class SyncErrorProfile {
public:
    SyncErrorProfile() = default;
    SyncErrorProfile(double base_age_s, double step_bound_s, std::vector<double> sync_times,
                     double horizon_s);

    double std_at(double t_s) const;  // t relative to the period start
    double rms_over(std::span<const double> times_s) const;
    double horizon() const { return horizon_s_; }
    double step_bound() const { return step_bound_s_; }

private:
    double base_age_s = 0.0;
    double step_bound_s_ = 0.0;
    std::vector<double> sync_times_;
    double horizon_s_ = 0.0;
};

SyncErrorProfile predict_sync_error(double last_sync_age_s, const SyncScheme& scheme,
                                    double drift_step_bound_s, double horizon_s);

// Parameters of the tracking-utility surrogate: utility falls linearly from
// the priority at zero predicted error to zero at sigma_max.
struct TrackUtilityParams {
    double sigma_max_m = 30000.0;
    double range_std_m = 50.0;
    double velocity_std_ms = 150.0;  // coast growth per second of revisit interval
};

// Predicted RMS position error for one tracking configuration. Combines the
// fixed range noise, the sync-induced range error, the cross-range error at
// the predicted range, and motion uncertainty over the revisit interval.
double predicted_track_error(double predicted_range_m, double sigma_az_rad, double sigma_el_rad,
                             double revisit_s, double sync_range_std_m, const TrackUtilityParams& params);

double track_utility_from_error(double sigma_pred_m, double priority, const TrackUtilityParams& params);

// Range-error standard deviation the predicted clock offset induces on a
// configuration that revisits every revisit_s over the profile's horizon.
double sync_range_std(const SyncErrorProfile& profile, double revisit_s);

// Re-evaluates one tracking configuration's quality and utility under the
// given sync error prediction.
void apply_track_utility(TaskConfig& config, const SyncErrorProfile& profile,
                         const TrackUtilityParams& params);

// Recomputes quality and utility of every tracking configuration under the
// given sync error prediction, then re-filters each job list. Search and
// sync tasks pass through unchanged.
std::vector<JobList> rebuild_utilities(std::vector<JobList> job_lists, const SyncErrorProfile& profile,
                                       const TrackUtilityParams& params);

// What the planner may assume about the receiver clock: when it was last
// synchronised and how fast it drifts. The true offset is not observable.
struct ClockInfo {
    double last_sync_age_s = 0.0;
    double step_bound_s = 0.0;
};

struct SchemeEvaluation {
    int scheme_id = 0;
    bool feasible = false;
    Allocation allocation;
    double system_utility = 0.0;
    SyncErrorProfile profile;
};

struct SchemeSelection {
    SchemeEvaluation chosen;
    std::vector<SchemeEvaluation> evaluations;
};

// Evaluates every candidate scheme with its own reduced budget and
// sync-aware utilities, then picks the highest system utility. Ties go to
// the cheaper scheme, then the lower scheme_id. Throws when no scheme fits
// the bounds.
SchemeSelection select_scheme(std::span<const SyncScheme> schemes, std::span<const JobList> job_lists,
                              const ResourceVector& bounds, const ClockInfo& clock, double horizon_s,
                              const TrackUtilityParams& params);

}  // namespace rrm
