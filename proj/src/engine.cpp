#include "rrm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "rrm/clock_model.hpp"
#include "rrm/qram.hpp"

namespace rrm {

bool time_balance_decide(double last_sync_s, double desired_period_s, double now_s) {
    if (now_s < last_sync_s) throw std::invalid_argument("time balance queried before last sync");
    return now_s - last_sync_s - desired_period_s >= 0.0;
}

SearchRaster::SearchRaster(const SearchParams& params, double beamwidth_az_rad, double beamwidth_el_rad) {
    const double az_extent = 2.0 * params.fence_az_halfwidth_rad;
    const double el_extent = params.fence_el_extent_rad;
    const int n_az = std::max(1, static_cast<int>(std::ceil(az_extent / beamwidth_az_rad - 1e-9)));
    const int n_el = std::max(1, static_cast<int>(std::ceil(el_extent / beamwidth_el_rad - 1e-9)));
    az_spacing_rad_ = az_extent / n_az;
    el_spacing_rad_ = el_extent / n_el;
    for (int row = 0; row < n_el; ++row) {
        const double el = params.fence_el_min_rad + (row + 0.5) * el_spacing_rad_;
        for (int col = 0; col < n_az; ++col) {
            const double az = -params.fence_az_halfwidth_rad + (col + 0.5) * az_spacing_rad_;
            cells_.push_back({az, el});
        }
    }
    beam_dwell_s_ = params.unloaded_full_update_s / static_cast<double>(cells_.size());
}

bool SearchRaster::covers(int index, double az_rad, double el_rad) const {
    const Cell& c = cells_[static_cast<std::size_t>(index)];
    return std::abs(az_rad - c.az_rad) <= 0.5 * az_spacing_rad_ &&
           std::abs(el_rad - c.el_rad) <= 0.5 * el_spacing_rad_;
}

namespace {

constexpr TaskId kSearchTaskId = 0;
// Track task ids follow the track id so ties in the greedy loop resolve in
// creation order.
TaskId track_task_id(int track_id) { return track_id; }

std::vector<double> search_share_options(const ScenarioConfig& cfg) {
    std::vector<double> shares;
    for (int l = 1; l <= cfg.search.share_levels; ++l) {
        shares.push_back(static_cast<double>(l) / static_cast<double>(cfg.search.share_levels));
    }
    return shares;
}

}  // namespace

std::vector<JobList> build_task_set(double now_s, const TrackManager& tracks,
                                    [[maybe_unused]] const SearchRaster& raster,
                                    const SyncErrorProfile& profile, const ScenarioConfig& cfg) {
    std::vector<JobList> lists;
    const double period = cfg.planning_period_s;

    // Search task: fraction of the period spent scanning; quality is the
    // coverage rate relative to the unloaded full-update rate.
    {
        std::vector<TaskConfig> configs;
        for (double share : search_share_options(cfg)) {
            TaskConfig c;
            c.task_id = kSearchTaskId;
            c.kind = TaskKind::Search;
            c.params["time_share"] = share;
            c.quality = share;
            c.utility = cfg.search.priority * std::sqrt(share);
            c.resources = ResourceVector::scalar(share * period);
            c.compound = c.resources[0];
            configs.push_back(std::move(c));
        }
        lists.push_back(build_job_list(kSearchTaskId, std::move(configs)));
    }

    for (const Track& track : tracks.tracks()) {
        if (track.status == TrackStatus::Dropped) continue;

        Track probe = track;
        kf_predict(probe, std::max(now_s + 0.5 * period, probe.last_update_s), cfg.tracker.process_noise_q);
        const Eigen::Vector3d predicted_pos = probe.position();
        const double predicted_range = (predicted_pos - cfg.rx_pos_m).norm();

        std::vector<TaskConfig> configs;
        for (double revisit : cfg.track_task.revisit_options_s) {
            for (int pulses : cfg.track_task.pulse_options) {
                const double dwell = pulses * cfg.track_task.pulse_duration_s;
                const int dwells_per_period =
                    std::max(1, static_cast<int>(std::floor(period / revisit + 1e-9)));

                double snr_hat = 0.0;
                try {
                    snr_hat = snr(cfg.radar, predicted_pos, cfg.track_task.planning_rcs_m2, pulses,
                                  cfg.tx_pos_m, cfg.rx_pos_m, predicted_pos - cfg.tx_pos_m, true);
                } catch (const std::invalid_argument&) {
                    continue;  // degenerate predicted geometry: no usable configuration
                }
                if (!(snr_hat > 0.0)) continue;

                TaskConfig c;
                c.task_id = track_task_id(track.track_id);
                c.kind = TaskKind::Track;
                c.params["revisit_s"] = revisit;
                c.params["pulses"] = static_cast<double>(pulses);
                c.params["dwell_s"] = dwell;
                c.params["predicted_range_m"] = predicted_range;
                c.params["sigma_az_rad"] = angle_std(snr_hat, cfg.radar.beamwidth_az_rad);
                c.params["sigma_el_rad"] = angle_std(snr_hat, cfg.radar.beamwidth_el_rad);
                c.params["priority"] = cfg.track_task.priority;
                c.resources = ResourceVector::scalar(dwell * dwells_per_period);
                c.compound = c.resources[0];
                // Utility under the supplied sync prediction; rebuild applies
                // the same formula when other schemes are evaluated.
                apply_track_utility(c, profile, cfg.utility);
                configs.push_back(std::move(c));
            }
        }
        if (configs.empty()) continue;
        lists.push_back(build_job_list(track_task_id(track.track_id), std::move(configs)));
    }
    return lists;
}

namespace {

struct TrackDwellPlan {
    int track_id = 0;
    double revisit_s = 0.0;
    int pulses = 0;
    double dwell_s = 0.0;
};

struct PeriodPlan {
    bool do_sync = false;
    std::vector<TrackDwellPlan> track_dwells;
    double search_time_s = 0.0;
};

struct DwellEvent {
    double due_s = 0.0;
    int kind = 0;  // 0 track, 1 search
    int track_id = 0;
    int pulses = 0;
    double duration_s = 0.0;
    int sequence = 0;

    bool operator<(const DwellEvent& o) const {
        if (due_s != o.due_s) return due_s < o.due_s;
        if (kind != o.kind) return kind < o.kind;
        if (track_id != o.track_id) return track_id < o.track_id;
        return sequence < o.sequence;
    }
};

PeriodPlan plan_from_allocation(const Allocation& alloc, const std::vector<JobList>& lists, bool do_sync,
                                const ScenarioConfig& cfg) {
    PeriodPlan plan;
    plan.do_sync = do_sync;
    for (const JobList& list : lists) {
        const std::size_t index = alloc.selected.at(list.task_id);
        const TaskConfig& entry = list.entries[index];
        if (entry.resources.is_zero()) continue;
        if (list.kind == TaskKind::Search) {
            plan.search_time_s = entry.params.at("time_share") * cfg.planning_period_s;
        } else if (list.kind == TaskKind::Track) {
            plan.track_dwells.push_back({static_cast<int>(list.task_id), entry.params.at("revisit_s"),
                                         static_cast<int>(entry.params.at("pulses")),
                                         entry.params.at("dwell_s")});
        }
    }
    return plan;
}

// The rule-based baseline: fixed revisit interval and pulse count per live
// track in id order while budget remains, the leftover time to search.
PeriodPlan rule_based_plan(const TrackManager& tracks, bool do_sync, const ScenarioConfig& cfg) {
    PeriodPlan plan;
    plan.do_sync = do_sync;
    double budget = cfg.planning_period_s - (do_sync ? cfg.sync_dwell_s : 0.0);
    const int pulses = cfg.track_task.pulse_options.back();
    const double dwell = pulses * cfg.track_task.pulse_duration_s;
    for (const Track& track : tracks.tracks()) {
        if (track.status == TrackStatus::Dropped) continue;
        if (budget - dwell < 0.0) break;
        plan.track_dwells.push_back({track.track_id, cfg.planning_period_s, pulses, dwell});
        budget -= dwell;
    }
    plan.search_time_s = std::max(budget, 0.0);
    return plan;
}

struct Simulation {
    const ScenarioConfig& cfg;
    DriftingClock clock;
    Rng meas_rng;
    Rng mc_seed_stream;
    TrackManager tracks;
    SearchRaster raster;
    RunReport report;
    double last_sync_s = 0.0;

    Simulation(const ScenarioConfig& cfg_, std::uint64_t seed)
        : cfg(cfg_),
          clock(cfg_.clock_step_bound_s, mix_seed(seed, 0), 0.0),
          meas_rng(mix_seed(seed, 1)),
          mc_seed_stream(mix_seed(seed, 2)),
          tracks(cfg_.tracker),
          raster(cfg_.search, cfg_.radar.beamwidth_az_rad, cfg_.radar.beamwidth_el_rad) {
        report.strategy = cfg.strategy.name();
        report.seed = seed;
        report.targets_total = static_cast<int>(cfg.targets.size());
    }

    std::vector<TruthPoint> truth_at(double t) const {
        std::vector<TruthPoint> out;
        for (std::size_t i = 0; i < cfg.targets.size(); ++i) {
            const TargetSpec& tgt = cfg.targets[i];
            if (tgt.spawn_time_s > t) continue;
            out.push_back({static_cast<int>(i),
                           tgt.position_m + (t - tgt.spawn_time_s) * tgt.velocity_ms});
        }
        return out;
    }

    // Planner-side knowledge of the clock quality at a measurement time.
    double predicted_offset_std(double t) const {
        return cfg.clock_step_bound_s * std::sqrt(std::max(t - last_sync_s, 0.0) / 3.0);
    }

    double effective_range_std(double t) const {
        const double sync_range = kSpeedOfLight * predicted_offset_std(t);
        return std::sqrt(cfg.radar.range_std_m * cfg.radar.range_std_m + sync_range * sync_range);
    }

    void sample_confirmed_error(int track_id, double t) {
        Track* track = tracks.find(track_id);
        if (track == nullptr || track->status != TrackStatus::Confirmed) return;
        const auto samples = record_errors({*track}, truth_at(t), t);
        report.error_samples.insert(report.error_samples.end(), samples.begin(), samples.end());
    }

    // Converts a raw detection and feeds it to the named track. Degenerate
    // MC conversions count as misses.
    void feed_track(int track_id, const BistaticMeasurement& raw, double t) {
        try {
            const MonostaticMeasurement mono = convert_raw(raw, t);
            tracks.update_track(track_id, mono, cfg.rx_pos_m);
        } catch (const std::runtime_error&) {
            tracks.record_miss(track_id, t);
        }
    }

    MonostaticMeasurement convert_raw(const BistaticMeasurement& raw, double t) {
        const double sigma_az = angle_std(raw.snr, cfg.radar.beamwidth_az_rad);
        const double sigma_el = angle_std(raw.snr, cfg.radar.beamwidth_el_rad);
        return convert_measurement(raw, effective_range_std(t), sigma_az, sigma_el, cfg.tx_pos_m,
                                   cfg.rx_pos_m, cfg.mc_samples, mc_seed_stream.next_u64());
    }

    std::optional<BistaticMeasurement> try_detect(const Eigen::Vector3d& beam_dir, int pulses, double t,
                                                  const std::vector<TruthPoint>& truth) {
        int best = -1;
        double best_snr = 0.0;
        for (const TruthPoint& tp : truth) {
            const double s = snr(cfg.radar, tp.position, cfg.targets[tp.target_id].rcs_m2, pulses,
                                 cfg.tx_pos_m, cfg.rx_pos_m, beam_dir, true);
            if (s > best_snr) {
                best_snr = s;
                best = tp.target_id;
            }
        }
        if (best < 0) return std::nullopt;
        clock.advance(t);
        const Eigen::Vector3d pos =
            cfg.targets[best].position_m + (t - cfg.targets[best].spawn_time_s) * cfg.targets[best].velocity_ms;
        return detect(cfg.radar, best_snr, pos, cfg.tx_pos_m, cfg.rx_pos_m, clock.offset_at(t),
                      t, meas_rng);
    }

    void execute_track_dwell(int track_id, int pulses, double t) {
        Track* track = tracks.find(track_id);
        if (track == nullptr || track->status == TrackStatus::Dropped) return;

        Track probe = *track;
        kf_predict(probe, std::max(t, probe.last_update_s), cfg.tracker.process_noise_q);
        const Eigen::Vector3d beam_dir = probe.position() - cfg.tx_pos_m;

        const auto raw = try_detect(beam_dir, pulses, t, truth_at(t));
        if (raw.has_value()) {
            feed_track(track_id, *raw, t);
        } else {
            tracks.record_miss(track_id, t);
        }
        sample_confirmed_error(track_id, t);
    }

    void execute_search_dwell(double t, std::vector<int>& cued) {
        const int index = raster.next_index();
        raster.advance();
        const SearchRaster::Cell& cell = raster.cell(index);

        const auto truth = truth_at(t);
        std::vector<TruthPoint> in_cell;
        for (const TruthPoint& tp : truth) {
            double az = 0.0, el = 0.0;
            azel_of_direction(tp.position - cfg.tx_pos_m, az, el);
            if (raster.covers(index, az, el)) in_cell.push_back(tp);
        }
        if (in_cell.empty()) return;

        const Eigen::Vector3d beam_dir = direction_from_azel(cell.az_rad, cell.el_rad);
        const auto raw = try_detect(beam_dir, cfg.radar.search_pulses, t, in_cell);
        if (!raw.has_value()) return;

        try {
            const MonostaticMeasurement mono = convert_raw(*raw, t);
            const int matched = tracks.try_associate(mono, cfg.rx_pos_m);
            if (matched >= 0) {
                sample_confirmed_error(matched, t);
            } else {
                cued.push_back(tracks.create_track(mono, cfg.rx_pos_m));
            }
        } catch (const std::runtime_error&) {
            // degenerate conversion: detection discarded
        }
    }

    void execute_period(double t0, const PeriodPlan& plan) {
        const double budget_end = t0 + cfg.planning_period_s;
        double cursor = t0;

        if (plan.do_sync) {
            clock.apply_sync(cursor);
            last_sync_s = cursor;
            report.sync_times.push_back(cursor);
            cursor += cfg.sync_dwell_s;
        }

        std::vector<DwellEvent> events;
        int seq = 0;
        for (const TrackDwellPlan& td : plan.track_dwells) {
            const int n = std::max(1, static_cast<int>(std::floor(cfg.planning_period_s / td.revisit_s + 1e-9)));
            for (int j = 0; j < n; ++j) {
                events.push_back({t0 + j * td.revisit_s, 0, td.track_id, td.pulses, td.dwell_s, seq++});
            }
        }
        const int n_beams = static_cast<int>(std::floor(plan.search_time_s / raster.beam_dwell_s() + 1e-9));
        for (int j = 0; j < n_beams; ++j) {
            const double due = t0 + j * (cfg.planning_period_s / std::max(n_beams, 1));
            events.push_back({due, 1, -1, cfg.radar.search_pulses, raster.beam_dwell_s(), seq++});
        }
        std::sort(events.begin(), events.end());

        std::vector<int> cued;
        for (const DwellEvent& ev : events) {
            if (cursor + ev.duration_s > budget_end) continue;
            if (ev.kind == 0) {
                execute_track_dwell(ev.track_id, ev.pulses, cursor);
            } else {
                execute_search_dwell(cursor, cued);
            }
            cursor += ev.duration_s;
        }

        // Cued confirmation dwells for tracks born this period.
        const double confirm_dwell = cfg.track_task.pulse_options.back() * cfg.track_task.pulse_duration_s;
        for (int track_id : cued) {
            if (cursor + confirm_dwell > budget_end) break;
            execute_track_dwell(track_id, cfg.track_task.pulse_options.back(), cursor);
            cursor += confirm_dwell;
        }

        const double load = (cursor - t0) / cfg.planning_period_s;
        report.max_period_load = std::max(report.max_period_load, load);
        report.mean_period_load += load;
        if (cursor > budget_end) ++report.budget_violations;
    }
};

}  // namespace

RunReport run(const ScenarioConfig& cfg, std::uint64_t seed) {
    validate_config(cfg);

    Simulation sim(cfg, seed);
    double next_reg_sync = 0.0;
    const int n_periods = static_cast<int>(std::floor(cfg.duration_s / cfg.planning_period_s)) + 1;

    const std::size_t resource_types = 1;
    const SyncScheme no_sync = make_sync_scheme(0, {}, cfg.sync_dwell_s, resource_types);
    const SyncScheme sync_at_start = make_sync_scheme(1, {0.0}, cfg.sync_dwell_s, resource_types);
    const ResourceVector bounds = ResourceVector::scalar(cfg.planning_period_s);

    for (int k = 0; k < n_periods; ++k) {
        const double t0 = k * cfg.planning_period_s;
        const ClockInfo clock_info{t0 - sim.last_sync_s, cfg.clock_step_bound_s};

        PeriodPlan plan;
        if (cfg.strategy.kind == StrategySpec::Kind::TimeBalanced) {
            const bool do_sync = time_balance_decide(sim.last_sync_s, cfg.strategy.period_s, t0);
            plan = rule_based_plan(sim.tracks, do_sync, cfg);
        } else {
            const SyncErrorProfile base_profile =
                predict_sync_error(clock_info.last_sync_age_s, no_sync, cfg.clock_step_bound_s,
                                   cfg.planning_period_s);
            const std::vector<JobList> lists =
                build_task_set(t0, sim.tracks, sim.raster, base_profile, cfg);

            std::vector<SyncScheme> candidates;
            if (cfg.strategy.kind == StrategySpec::Kind::CaseDecision) {
                candidates = {no_sync, sync_at_start};
            } else {
                const bool due = t0 + 1e-9 >= next_reg_sync;
                if (due) next_reg_sync += cfg.strategy.period_s;
                candidates = {due ? sync_at_start : no_sync};
            }
            const SchemeSelection sel = select_scheme(candidates, lists, bounds, clock_info,
                                                      cfg.planning_period_s, cfg.utility);
            // The allocation indexes the job lists as refiltered under the
            // chosen scheme's error profile, not the base lists.
            const std::vector<JobList> chosen_lists =
                rebuild_utilities(lists, sel.chosen.profile, cfg.utility);
            plan = plan_from_allocation(sel.chosen.allocation, chosen_lists,
                                        sel.chosen.scheme_id == sync_at_start.scheme_id, cfg);
        }

        sim.execute_period(t0, plan);
    }

    sim.report.mean_period_load /= static_cast<double>(n_periods);
    sim.report.tracks_acquired = sim.tracks.ever_confirmed();
    if (!sim.report.error_samples.empty()) {
        std::vector<double> errors;
        errors.reserve(sim.report.error_samples.size());
        for (const TrackErrorSample& s : sim.report.error_samples) errors.push_back(s.position_error_m);
        sim.report.stats = compute_stats(std::move(errors));
    }
    return sim.report;
}

std::vector<std::uint64_t> monte_carlo_seeds(const ScenarioConfig& cfg, int n_runs) {
    if (n_runs < 1) throw std::invalid_argument("monte_carlo needs at least one run");
    std::vector<std::uint64_t> seeds = cfg.seeds;
    const std::uint64_t base = seeds.empty() ? 1 : seeds.back();
    for (int i = static_cast<int>(seeds.size()); i < n_runs; ++i) {
        seeds.push_back(mix_seed(base, static_cast<std::uint64_t>(i)));
    }
    seeds.resize(static_cast<std::size_t>(n_runs));
    std::sort(seeds.begin(), seeds.end());
    return seeds;
}

MonteCarloSummary monte_carlo(const ScenarioConfig& cfg, int n_runs, int threads) {
    const std::vector<std::uint64_t> seeds = monte_carlo_seeds(cfg, n_runs);

    MonteCarloSummary summary;
    summary.runs.resize(seeds.size());

    if (threads <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) summary.runs[i] = run(cfg, seeds[i]);
    } else {
        std::vector<std::future<void>> jobs;
        std::atomic<std::size_t> next{0};
        const int workers = std::min<int>(threads, static_cast<int>(seeds.size()));
        for (int w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= seeds.size()) return;
                    summary.runs[i] = run(cfg, seeds[i]);
                }
            }));
        }
        for (auto& j : jobs) j.get();
    }

    std::vector<double> pooled;
    double sync_count = 0.0, acquired = 0.0;
    for (const RunReport& r : summary.runs) {
        for (const TrackErrorSample& s : r.error_samples) pooled.push_back(s.position_error_m);
        sync_count += static_cast<double>(r.sync_times.size());
        acquired += static_cast<double>(r.tracks_acquired);
    }
    if (!pooled.empty()) summary.pooled = compute_stats(std::move(pooled));
    summary.mean_sync_count = sync_count / static_cast<double>(summary.runs.size());
    summary.mean_tracks_acquired = acquired / static_cast<double>(summary.runs.size());
    return summary;
}

}  // namespace rrm
