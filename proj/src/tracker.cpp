#include "rrm/tracker.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rrm {

namespace {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

void require_psd(const Eigen::Matrix3d& cov) {
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + cov.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("measurement covariance not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, cov.trace())) {
        throw std::invalid_argument("measurement covariance not positive semidefinite");
    }
}

}  // namespace

void kf_predict(Track& track, double to_time_s, double process_noise_q) {
    const double dt = to_time_s - track.last_update_s;
    if (dt < 0.0) throw std::invalid_argument("prediction time before track time");
    if (dt == 0.0) return;

    Matrix6d f = Matrix6d::Identity();
    f.block<3, 3>(0, 3) = dt * Eigen::Matrix3d::Identity();

    // Continuous white-noise acceleration: Q = q [dt^3/3, dt^2/2; dt^2/2, dt]
    Matrix6d q = Matrix6d::Zero();
    const double dt2 = dt * dt, dt3 = dt2 * dt;
    q.block<3, 3>(0, 0) = (process_noise_q * dt3 / 3.0) * Eigen::Matrix3d::Identity();
    q.block<3, 3>(0, 3) = (process_noise_q * dt2 / 2.0) * Eigen::Matrix3d::Identity();
    q.block<3, 3>(3, 0) = (process_noise_q * dt2 / 2.0) * Eigen::Matrix3d::Identity();
    q.block<3, 3>(3, 3) = (process_noise_q * dt) * Eigen::Matrix3d::Identity();

    track.state = f * track.state;
    track.covariance = f * track.covariance * f.transpose() + q;
    track.last_update_s = to_time_s;
}

void cartesian_measurement(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos,
                           Eigen::Vector3d& z, Eigen::Matrix3d& cov) {
    const double r = m.range_m;
    const double sa = std::sin(m.az_rad), ca = std::cos(m.az_rad);
    const double se = std::sin(m.el_rad), ce = std::cos(m.el_rad);

    const Eigen::Vector3d u(sa * ce, ca * ce, se);
    z = rx_pos + r * u;

    Eigen::Matrix3d jac;
    jac.col(0) = u;                                           // d pos / d range
    jac.col(1) = r * Eigen::Vector3d(ca * ce, -sa * ce, 0.);  // d pos / d az
    jac.col(2) = r * Eigen::Vector3d(-sa * se, -ca * se, ce); // d pos / d el
    cov = jac * m.covariance * jac.transpose();
}

UpdateOutcome kf_update(Track& track, const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos,
                        const TrackerParams& params) {
    require_psd(m.covariance);

    Eigen::Vector3d z;
    Eigen::Matrix3d r_cart;
    cartesian_measurement(m, rx_pos, z, r_cart);

    Eigen::Matrix<double, 3, 6> h = Eigen::Matrix<double, 3, 6>::Zero();
    h.block<3, 3>(0, 0) = Eigen::Matrix3d::Identity();

    const Eigen::Vector3d innovation = z - h * track.state;
    const Eigen::Matrix3d s = h * track.covariance * h.transpose() + r_cart;
    const Eigen::Matrix3d s_inv = s.inverse();
    const double nis = innovation.dot(s_inv * innovation);
    if (nis > params.gate_threshold) {
        return UpdateOutcome::Gated;
    }

    const Eigen::Matrix<double, 6, 3> gain = track.covariance * h.transpose() * s_inv;
    track.state += gain * innovation;

    // Joseph form keeps the covariance symmetric positive definite.
    const Matrix6d ikh = Matrix6d::Identity() - gain * h;
    track.covariance = ikh * track.covariance * ikh.transpose() + gain * r_cart * gain.transpose();
    track.covariance = 0.5 * (track.covariance + track.covariance.transpose());
    return UpdateOutcome::Accepted;
}

std::vector<TrackErrorSample> record_errors(const std::vector<Track>& tracks,
                                            const std::vector<TruthPoint>& truth, double time_s) {
    std::vector<TrackErrorSample> samples;
    for (const Track& track : tracks) {
        if (track.status != TrackStatus::Confirmed) continue;
        double best = std::numeric_limits<double>::infinity();
        int best_target = -1;
        for (const TruthPoint& t : truth) {
            const double err = (track.position() - t.position).norm();
            if (err < best) {
                best = err;
                best_target = t.target_id;
            }
        }
        if (best_target < 0) continue;
        samples.push_back({time_s, track.track_id, best_target, best});
    }
    return samples;
}

std::vector<int> TrackManager::active_track_ids() const {
    std::vector<int> ids;
    for (const Track& t : tracks_) {
        if (t.status != TrackStatus::Dropped) ids.push_back(t.track_id);
    }
    return ids;
}

Track* TrackManager::find(int track_id) {
    for (Track& t : tracks_) {
        if (t.track_id == track_id) return &t;
    }
    return nullptr;
}

void TrackManager::note_outcome(Track& track, bool hit) {
    track.recent_outcomes.push_back(hit);
    while (static_cast<int>(track.recent_outcomes.size()) > params_.confirm_window) {
        track.recent_outcomes.pop_front();
    }
    if (hit) {
        ++track.hit_count;
        track.consecutive_misses = 0;
        if (track.status == TrackStatus::Tentative) {
            const int hits = static_cast<int>(
                std::count(track.recent_outcomes.begin(), track.recent_outcomes.end(), true));
            if (hits >= params_.confirm_hits) {
                track.status = TrackStatus::Confirmed;
                ++ever_confirmed_;
            }
        }
    } else {
        ++track.miss_count;
        ++track.consecutive_misses;
        if (track.consecutive_misses >= params_.drop_after_misses) {
            track.status = TrackStatus::Dropped;
        }
    }
}

UpdateOutcome TrackManager::update_track(int track_id, const MonostaticMeasurement& m,
                                         const Eigen::Vector3d& rx_pos) {
    Track* track = find(track_id);
    if (track == nullptr || track->status == TrackStatus::Dropped) {
        throw std::invalid_argument("unknown or dropped track");
    }
    kf_predict(*track, m.time_s, params_.process_noise_q);
    const UpdateOutcome outcome = kf_update(*track, m, rx_pos, params_);
    note_outcome(*track, outcome == UpdateOutcome::Accepted);
    return outcome;
}

void TrackManager::record_miss(int track_id, double time_s) {
    Track* track = find(track_id);
    if (track == nullptr || track->status == TrackStatus::Dropped) return;
    kf_predict(*track, time_s, params_.process_noise_q);
    note_outcome(*track, false);
}

int TrackManager::try_associate(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos) {
    Eigen::Vector3d z;
    Eigen::Matrix3d r_cart;
    cartesian_measurement(m, rx_pos, z, r_cart);

    double best_nis = std::numeric_limits<double>::infinity();
    int best_id = -1;
    for (Track& track : tracks_) {
        if (track.status == TrackStatus::Dropped) continue;
        Track probe = track;
        kf_predict(probe, m.time_s, params_.process_noise_q);
        const Eigen::Matrix3d s = probe.covariance.block<3, 3>(0, 0) + r_cart;
        const Eigen::Vector3d innovation = z - probe.position();
        const double nis = innovation.dot(s.inverse() * innovation);
        if (nis <= params_.gate_threshold && nis < best_nis) {
            best_nis = nis;
            best_id = track.track_id;
        }
    }
    if (best_id >= 0) {
        update_track(best_id, m, rx_pos);
    }
    return best_id;
}

int TrackManager::create_track(const MonostaticMeasurement& m, const Eigen::Vector3d& rx_pos) {
    Eigen::Vector3d z;
    Eigen::Matrix3d r_cart;
    cartesian_measurement(m, rx_pos, z, r_cart);

    Track track;
    track.track_id = next_id_++;
    track.state.head<3>() = z;
    track.covariance.block<3, 3>(0, 0) = r_cart;
    track.covariance.block<3, 3>(3, 3) =
        params_.initial_velocity_std * params_.initial_velocity_std * Eigen::Matrix3d::Identity();
    track.last_update_s = m.time_s;
    track.status = TrackStatus::Tentative;
    note_outcome(track, true);
    tracks_.push_back(std::move(track));
    return tracks_.back().track_id;
}

}  // namespace rrm
