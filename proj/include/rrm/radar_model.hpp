#pragma once

#include <Eigen/Core>
#include <optional>

#include "rrm/rng.hpp"

namespace rrm {

// Frame convention: x east, y north, z up. Azimuth is measured from +y
// toward +x, elevation from the horizontal plane.
Eigen::Vector3d direction_from_azel(double az_rad, double el_rad);
void azel_of_direction(const Eigen::Vector3d& dir, double& az_rad, double& el_rad);

inline double deg2rad(double deg) { return deg * 0.017453292519943295; }
inline double rad2deg(double rad) { return rad * 57.29577951308232; }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

// Bistatic pair parameters, linear (non-dB) units throughout. Individual
// values are not observable in the radar equation, only their product, so
// peak power is back-solved from the snr calibration anchor instead of
// being guessed on its own; see calibrated_radar_params().
struct RadarParams {
    double peak_power_w = 2500.0;
    double compression_ratio = 1000.0;
    double gain_tx = 3162.2776601683795;  // 35 dBi boresight
    double gain_rx = 3162.2776601683795;  // receive beam formed digitally on the target
    double wavelength_m = 0.1;
    double system_loss = 0.5;                  // -3 dB
    double noise_factor = 3.1622776601683795;  // 5 dB
    double thermal_noise_w = 4.0019e-15;       // kTB at 290 K, 1 MHz
    double comm_mismatch_loss = 0.5;           // extra -3 dB on the combined radar+comm waveform
    double beamwidth_az_rad = 0.03490658503988659;  // 2 deg
    double beamwidth_el_rad = 0.03490658503988659;
    double max_range_m = 350e3;
    double detection_threshold = 19.952623149688797;  // 13 dB
    double range_std_m = 50.0;
    int search_pulses = 16;
};

// Transmit-pattern gain factor for a beam-steering offset: cosine-squared
// taper, 0.5 at half the 3 dB beamwidth, zero beyond the first null.
double beam_gain_factor(double offset_az_rad, double offset_el_rad, const RadarParams& params);

// Received signal-to-noise ratio of the bistatic pair (linear). The
// transmit gain is reduced by the beam pattern for targets off the steered
// direction; the receive beam always points at the target. comm_mismatch
// adds the filter-mismatch loss the passive receiver pays for processing
// the combined radar+comm waveform.
double snr(const RadarParams& params, const Eigen::Vector3d& target_pos, double rcs_m2, int pulses,
           const Eigen::Vector3d& tx_pos, const Eigen::Vector3d& rx_pos, const Eigen::Vector3d& beam_dir,
           bool comm_mismatch);

// Monopulse-style angular accuracy: 0.628 * beamwidth / (2 sqrt(SNR)).
double angle_std(double snr_linear, double beamwidth_rad);

// Defaults with peak power solved so that a 1 m^2 target at 300 km
// (both legs), centre beam, one search dwell comes out at exactly 10 dB.
RadarParams calibrated_radar_params();

// Raw measurement at the receiver: the two-way path length (including any
// clock-induced error), arrival angles, and the dwell SNR.
struct BistaticMeasurement {
    double sum_range_m = 0.0;
    double az_rad = 0.0;
    double el_rad = 0.0;
    double snr = 0.0;
    double time_s = 0.0;
};

// Threshold detection plus measurement-noise generation. Returns nullopt
// below threshold. On detection the sum range carries the clock offset as
// an exact bias (range_error_from_clock) on top of Gaussian range noise;
// angle noise follows angle_std at the dwell SNR. Noisy sum ranges that
// fall under the baseline length are clamped just above it so the
// monostatic conversion stays defined.
std::optional<BistaticMeasurement> detect(const RadarParams& params, double snr_linear,
                                          const Eigen::Vector3d& target_pos, const Eigen::Vector3d& tx_pos,
                                          const Eigen::Vector3d& rx_pos, double clock_offset_s, double time_s,
                                          Rng& rng);

}  // namespace rrm
