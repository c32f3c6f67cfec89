#pragma once

#include <Eigen/Dense>
#include <deque>
#include <vector>

#include "rrm/bistatic.hpp"

namespace rrm {

enum class TrackStatus { Tentative, Confirmed, Dropped };

// Nearly-constant-velocity Cartesian track state.
struct Track {
    int track_id = 0;
    Eigen::Matrix<double, 6, 1> state = Eigen::Matrix<double, 6, 1>::Zero();  // px py pz vx vy vz
    Eigen::Matrix<double, 6, 6> covariance = Eigen::Matrix<double, 6, 6>::Zero();
    double last_update_s = 0.0;
    TrackStatus status = TrackStatus::Tentative;
    int hit_count = 0;
    int miss_count = 0;
    int consecutive_misses = 0;
    std::deque<bool> recent_outcomes;  // confirmation window

    Eigen::Vector3d position() const { return state.head<3>(); }
    Eigen::Vector3d velocity() const { return state.tail<3>(); }
};

struct TrackerParams {
    double process_noise_q = 10.0;  // m^2/s^3, continuous white-noise acceleration
    double gate_threshold = 11.344866730144373;  // chi-square(3), 99%
    int confirm_hits = 3;
    int confirm_window = 4;
    int drop_after_misses = 5;
    double initial_velocity_std = 1000.0;  // m/s
};

enum class UpdateOutcome { Accepted, Gated };

// Constant-velocity prediction with q * dt continuous white-noise
// acceleration process noise. Throws on time reversal.
void kf_predict(Track& track, double to_time_s, double process_noise_q);

// Measurement position and covariance in Cartesian coordinates about the
// receiver, linearised at the measured (range, az, el).
void cartesian_measurement(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos,
                           Eigen::Vector3d& z, Eigen::Matrix3d& cov);

// Linear Kalman update on the converted measurement with chi-square
// innovation gating; a gated measurement leaves the state untouched.
// Throws when the measurement covariance is not positive semidefinite.
UpdateOutcome kf_update(Track& track, const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos,
                        const TrackerParams& params);

struct TrackErrorSample {
    double time_s = 0.0;
    int track_id = 0;
    int target_id = 0;
    double position_error_m = 0.0;
};

struct TruthPoint {
    int target_id = 0;
    Eigen::Vector3d position;
};

// One Euclidean position-error sample per confirmed track, associated to
// the nearest truth point.
std::vector<TrackErrorSample> record_errors(const std::vector<Track>& tracks,
                                            const std::vector<TruthPoint>& truth, double time_s);

// Track lifecycle: tentative on first detection, confirmed on M of the last
// N update attempts, dropped after a run of consecutive misses.
class TrackManager {
public:
    explicit TrackManager(TrackerParams params) : params_(params) {}

    const TrackerParams& params() const { return params_; }
    std::vector<Track>& tracks() { return tracks_; }
    const std::vector<Track>& tracks() const { return tracks_; }

    // Tracks still worth radar time (tentative or confirmed).
    std::vector<int> active_track_ids() const;
    Track* find(int track_id);

    // Predicts the track to the measurement time and attempts the update.
    UpdateOutcome update_track(int track_id, const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos);

    // A dwell on this track produced nothing usable.
    void record_miss(int track_id, double time_s);

    // Gated-or-nearest association against all active tracks; returns the
    // updated track id or -1 when nothing gates.
    int try_associate(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos);

    // Starts a tentative track from a converted measurement.
    int create_track(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos);

    int ever_confirmed() const { return ever_confirmed_; }

private:
    void note_outcome(Track& track, bool hit);

    TrackerParams params_;
    std::vector<Track> tracks_;
    int next_id_ = 1;
    int ever_confirmed_ = 0;
};

}  // namespace rrm
