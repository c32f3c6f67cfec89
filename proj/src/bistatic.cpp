#include "rrm/bistatic.hpp"

#include <stdexcept>
#include <vector>

namespace rrm {

namespace {

struct EllipseGeometry {
    double baseline;
    Eigen::Vector3d to_tx_dir;  // receiver -> transmitter, unit (zero when colocated)
};

EllipseGeometry make_geometry(const Eigen::Vector3d& tx_pos, const Eigen::Vector3d& rx_pos) {
    EllipseGeometry g;
    g.baseline = (tx_pos - rx_pos).norm();
    g.to_tx_dir = g.baseline > 0.0 ? Eigen::Vector3d((tx_pos - rx_pos) / g.baseline) : Eigen::Vector3d::Zero();
    return g;
}

double solve_range(double sum_range, double az, double el, const EllipseGeometry& g) {
    if (sum_range < g.baseline) {
        throw std::runtime_error("degenerate geometry: sum range below baseline");
    }
    if (g.baseline == 0.0) {
        return 0.5 * sum_range;
    }
    const Eigen::Vector3d u = direction_from_azel(az, el);
    const double cos_psi = u.dot(g.to_tx_dir);
    const double denom = 2.0 * (sum_range - g.baseline * cos_psi);
    if (denom <= 0.0) {
        throw std::runtime_error("degenerate geometry");
    }
    return (sum_range * sum_range - g.baseline * g.baseline) / denom;
}

}  // namespace

double bistatic_to_monostatic(const BistaticMeasurement& m, const Eigen::Vector3d& tx_pos,
                              const Eigen::Vector3d& rx_pos) {
    return solve_range(m.sum_range_m, m.az_rad, m.el_rad, make_geometry(tx_pos, rx_pos));
}

Eigen::Matrix3d mc_covariance(const BistaticMeasurement& m, double sigma_sum_range_m, double sigma_az_rad,
                              double sigma_el_rad, const Eigen::Vector3d& tx_pos,
                              const Eigen::Vector3d& rx_pos, int n_samples, std::uint64_t seed) {
    if (n_samples < 100) throw std::invalid_argument("mc_covariance needs at least 100 samples");
    if (!(sigma_sum_range_m > 0.0) || !(sigma_az_rad > 0.0) || !(sigma_el_rad > 0.0)) {
        throw std::invalid_argument("mc_covariance noise stds must be positive");
    }

    const EllipseGeometry g = make_geometry(tx_pos, rx_pos);
    Rng rng(seed);

    std::vector<Eigen::Vector3d> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    long rejected = 0;
    const long max_attempts = 20L * n_samples;
    long attempts = 0;
    while (samples.size() < static_cast<std::size_t>(n_samples)) {
        if (++attempts > max_attempts) {
            throw std::runtime_error("geometry too degenerate for MC conversion");
        }
        const double d = m.sum_range_m + rng.gaussian(0.0, sigma_sum_range_m);
        const double az = m.az_rad + rng.gaussian(0.0, sigma_az_rad);
        const double el = m.el_rad + rng.gaussian(0.0, sigma_el_rad);
        try {
            const double r = solve_range(d, az, el, g);
            samples.emplace_back(r, az, el);
        } catch (const std::runtime_error&) {
            ++rejected;
        }
    }
    if (rejected * 10 > static_cast<long>(n_samples) + rejected) {
        throw std::runtime_error("geometry too degenerate for MC conversion");
    }

    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const Eigen::Vector3d& s : samples) mean += s;
    mean /= static_cast<double>(samples.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Eigen::Vector3d& s : samples) {
        const Eigen::Vector3d d = s - mean;
        cov += d * d.transpose();
    }
    cov /= static_cast<double>(samples.size() - 1);
    return cov;
}

MonostaticMeasurement convert_measurement(const BistaticMeasurement& m, double sigma_sum_range_m,
                                          double sigma_az_rad, double sigma_el_rad,
                                          const Eigen::Vector3d& tx_pos, const Eigen::Vector3d& rx_pos,
                                          int n_samples, std::uint64_t seed) {
    MonostaticMeasurement out;
    out.range_m = bistatic_to_monostatic(m, tx_pos, rx_pos);
    out.az_rad = m.az_rad;
    out.el_rad = m.el_rad;
    out.covariance = mc_covariance(m, sigma_sum_range_m, sigma_az_rad, sigma_el_rad, tx_pos, rx_pos,
                                   n_samples, seed);
    out.time_s = m.time_s;
    return out;
}

}  // namespace rrm
