#pragma once

#include <string>
#include <vector>

#include "rrm/scenario.hpp"
#include "rrm/stats.hpp"

namespace rrm {

struct RunReport {
    std::string strategy;
    std::uint64_t seed = 0;
    std::vector<TrackErrorSample> error_samples;
    std::vector<double> sync_times;  // dwell start times of executed syncs
    SampleStats stats;               // over error_samples; count 0 when none
    int tracks_acquired = 0;         // tracks that ever reached confirmed
    int targets_total = 0;
    double mean_period_load = 0.0;  // executed dwell time / planning period
    double max_period_load = 0.0;
    int budget_violations = 0;
    std::string error_sampling = "per_update_confirmed";
};

struct MonteCarloSummary {
    std::vector<RunReport> runs;  // ascending seed order
    SampleStats pooled;           // over all runs' samples; count 0 when none
    double mean_sync_count = 0.0;
    double mean_tracks_acquired = 0.0;
};

// Time-balance rule: the sync task is due once its elapsed time reaches the
// desired period.
bool time_balance_decide(double last_sync_s, double desired_period_s, double now_s);

// Scanned fence as a beam-position raster; one raster cell per search dwell.
class SearchRaster {
public:
    SearchRaster(const SearchParams& params, double beamwidth_az_rad, double beamwidth_el_rad);

    int cell_count() const { return static_cast<int>(cells_.size()); }
    double beam_dwell_s() const { return beam_dwell_s_; }
    int next_index() const { return next_; }
    void advance() { next_ = (next_ + 1) % cell_count(); }

    struct Cell {
        double az_rad;
        double el_rad;
    };
    const Cell& cell(int index) const { return cells_[static_cast<std::size_t>(index)]; }

    // Whether a direction falls into the given cell's patch of the fence.
    bool covers(int index, double az_rad, double el_rad) const;

private:
    std::vector<Cell> cells_;
    double beam_dwell_s_ = 0.0;
    double az_spacing_rad_ = 0.0;
    double el_spacing_rad_ = 0.0;
    int next_ = 0;
};

// One search task plus one task per live track, with utilities evaluated
// under the given sync error prediction.
std::vector<JobList> build_task_set(double now_s, const TrackManager& tracks, const SearchRaster& raster,
                                    const SyncErrorProfile& profile, const ScenarioConfig& config);

// Closed-loop simulation of one run: per planning period the strategy
// places sync dwells, the allocator divides the remaining aperture time
// between search and tracking, and the dwells execute serially against the
// drifting clock and the target truth.
RunReport run(const ScenarioConfig& config, std::uint64_t seed);

// Independent runs over the configured seeds (extended deterministically
// when n_runs exceeds them), pooled per-strategy statistics.
MonteCarloSummary monte_carlo(const ScenarioConfig& config, int n_runs, int threads = 1);

// Seed list actually used by monte_carlo for a given run count.
std::vector<std::uint64_t> monte_carlo_seeds(const ScenarioConfig& config, int n_runs);

}  // namespace rrm
