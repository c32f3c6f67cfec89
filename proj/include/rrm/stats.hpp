#pragma once

#include <cstddef>
#include <vector>

namespace rrm {

// Order statistics and moments of an error-sample set. The standard
// deviation is the population convention (divide by n); the median of an
// even-length set is the midpoint of the two central values.
struct SampleStats {
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::size_t count = 0;
};

SampleStats compute_stats(std::vector<double> samples);  // throws on empty input

}  // namespace rrm
