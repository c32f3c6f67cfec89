#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "rrm/radar_model.hpp"

namespace rrm {

// Receiver-relative measurement a conventional tracker can consume.
struct MonostaticMeasurement {
    double range_m = 0.0;
    double az_rad = 0.0;
    double el_rad = 0.0;
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // over (range, az, el)
    double time_s = 0.0;
};

// Solves the bistatic ellipse for the receiver-target range:
//   R = (D^2 - L^2) / (2 (D - L cos psi))
// with D the measured two-way path, L the baseline and psi the angle at the
// receiver between the measured target direction and the transmitter.
// Throws "degenerate geometry" when the direction is inconsistent with D.
double bistatic_to_monostatic(const BistaticMeasurement& m, const Eigen::Vector3d& tx_pos,
                              const Eigen::Vector3d& rx_pos);

// Sample covariance of (range, az, el) after pushing Gaussian perturbations
// of (sum range, az, el) through the ellipse solution. Perturbed samples
// that land on a degenerate geometry are redrawn; more than 10% rejections
// aborts. Fixed seed makes the result bit-exact reproducible.
Eigen::Matrix3d mc_covariance(const BistaticMeasurement& m, double sigma_sum_range_m, double sigma_az_rad,
                              double sigma_el_rad, const Eigen::Vector3d& tx_pos,
                              const Eigen::Vector3d& rx_pos, int n_samples, std::uint64_t seed);

// Full conversion pipeline used by the simulation loop.
MonostaticMeasurement convert_measurement(const BistaticMeasurement& m, double sigma_sum_range_m,
                                          double sigma_az_rad, double sigma_el_rad,
                                          const Eigen::Vector3d& tx_pos, const Eigen::Vector3d& rx_pos,
                                          int n_samples, std::uint64_t seed);

}  // namespace rrm
