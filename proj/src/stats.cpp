#include "rrm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrm {

SampleStats compute_stats(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("cannot compute statistics of an empty sample set");
    std::sort(samples.begin(), samples.end());

    SampleStats s;
    s.count = samples.size();
    s.min = samples.front();
    s.max = samples.back();

    const std::size_t n = samples.size();
    s.median = (n % 2 == 1) ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);

    double sum = 0.0;
    for (double v : samples) sum += v;
    s.mean = sum / static_cast<double>(n);

    double sq = 0.0;
    for (double v : samples) sq += (v - s.mean) * (v - s.mean);
    s.std_dev = std::sqrt(sq / static_cast<double>(n));
    return s;
}

}  // namespace rrm
