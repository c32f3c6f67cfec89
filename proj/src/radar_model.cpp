#include "rrm/radar_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rrm/clock_model.hpp"

namespace rrm {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}
}  // namespace

Eigen::Vector3d direction_from_azel(double az_rad, double el_rad) {
    const double ce = std::cos(el_rad);
    return {std::sin(az_rad) * ce, std::cos(az_rad) * ce, std::sin(el_rad)};
}

void azel_of_direction(const Eigen::Vector3d& dir, double& az_rad, double& el_rad) {
    const Eigen::Vector3d u = dir.normalized();
    az_rad = std::atan2(u.x(), u.y());
    el_rad = std::asin(std::clamp(u.z(), -1.0, 1.0));
}

double beam_gain_factor(double offset_az_rad, double offset_el_rad, const RadarParams& params) {
    const double ua = std::abs(offset_az_rad) / params.beamwidth_az_rad;
    const double ue = std::abs(offset_el_rad) / params.beamwidth_el_rad;
    if (ua >= 1.0 || ue >= 1.0) return 0.0;
    const double ga = std::cos(0.5 * kPi * ua);
    const double ge = std::cos(0.5 * kPi * ue);
    return ga * ga * ge * ge;
}

double snr(const RadarParams& params, const Eigen::Vector3d& target_pos, double rcs_m2, int pulses,
           const Eigen::Vector3d& tx_pos, const Eigen::Vector3d& rx_pos, const Eigen::Vector3d& beam_dir,
           bool comm_mismatch) {
    if (pulses <= 0) throw std::invalid_argument("pulse count must be positive");
    const double r_tx = (target_pos - tx_pos).norm();
    const double r_rx = (target_pos - rx_pos).norm();
    if (r_tx == 0.0 || r_rx == 0.0) throw std::invalid_argument("target coincides with a sensor");

    double beam_az = 0.0, beam_el = 0.0, tgt_az = 0.0, tgt_el = 0.0;
    azel_of_direction(beam_dir, beam_az, beam_el);
    azel_of_direction(target_pos - tx_pos, tgt_az, tgt_el);
    const double pattern = beam_gain_factor(wrap_angle(tgt_az - beam_az), tgt_el - beam_el, params);

    double loss = params.system_loss;
    if (comm_mismatch) loss *= params.comm_mismatch_loss;

    const double four_pi_cubed = std::pow(4.0 * kPi, 3);
    const double numerator = params.peak_power_w * static_cast<double>(pulses) * params.compression_ratio *
                             (params.gain_tx * pattern) * params.gain_rx * rcs_m2 *
                             params.wavelength_m * params.wavelength_m * loss;
    const double denominator = four_pi_cubed * r_tx * r_tx * r_rx * r_rx * params.thermal_noise_w *
                               params.noise_factor;
    return numerator / denominator;
}

double angle_std(double snr_linear, double beamwidth_rad) {
    if (!(snr_linear > 0.0)) throw std::invalid_argument("angle_std requires positive SNR");
    return 0.628 * beamwidth_rad / (2.0 * std::sqrt(snr_linear));
}

RadarParams calibrated_radar_params() {
    RadarParams p;
    const double range = 300e3;
    const double target_snr = 10.0;  // 10 dB
    const double four_pi_cubed = std::pow(4.0 * kPi, 3);
    const double denominator = four_pi_cubed * std::pow(range, 4) * p.thermal_noise_w * p.noise_factor;
    const double numerator_without_power = static_cast<double>(p.search_pulses) * p.compression_ratio *
                                           p.gain_tx * p.gain_rx * p.wavelength_m * p.wavelength_m *
                                           p.system_loss;
    p.peak_power_w = target_snr * denominator / numerator_without_power;
    return p;
}

std::optional<BistaticMeasurement> detect(const RadarParams& params, double snr_linear,
                                          const Eigen::Vector3d& target_pos, const Eigen::Vector3d& tx_pos,
                                          const Eigen::Vector3d& rx_pos, double clock_offset_s, double time_s,
                                          Rng& rng) {
    if (snr_linear < params.detection_threshold) return std::nullopt;

    const double baseline = (tx_pos - rx_pos).norm();
    const double true_sum = (target_pos - tx_pos).norm() + (target_pos - rx_pos).norm();
    double az_true = 0.0, el_true = 0.0;
    azel_of_direction(target_pos - rx_pos, az_true, el_true);

    const double sigma_az = angle_std(snr_linear, params.beamwidth_az_rad);
    const double sigma_el = angle_std(snr_linear, params.beamwidth_el_rad);

    BistaticMeasurement m;
    m.sum_range_m = true_sum + range_error_from_clock(clock_offset_s) + rng.gaussian(0.0, params.range_std_m);
    m.az_rad = az_true + rng.gaussian(0.0, sigma_az);
    m.el_rad = el_true + rng.gaussian(0.0, sigma_el);
    m.snr = snr_linear;
    m.time_s = time_s;

    const double floor = baseline * (1.0 + 1e-9);
    if (m.sum_range_m < floor) m.sum_range_m = floor;
    return m;
}

}  // namespace rrm
