#pragma once

#include <cstdint>
#include <vector>

#include "rrm/rng.hpp"

namespace rrm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Error a receiver clock offset adds to the measured transmitter-target-
// receiver path length.
inline double range_error_from_clock(double offset_s) { return kSpeedOfLight * offset_s; }

// Receiver clock offset simulated as a random walk: one uniform(-d, d)
// increment per second of elapsed time, interpolated linearly in between.
// The transmitter clock is taken as truth, so a sync event zeroes the
// offset and restarts the walk.
class DriftingClock {
public:
    DriftingClock(double step_bound_s, std::uint64_t seed, double start_time_s = 0.0);

    // Extends the walk so every time up to to_time_s can be queried.
    void advance(double to_time_s);

    // Advances, then resets the offset to zero at at_time_s.
    void apply_sync(double at_time_s);

    // Offset at a time between the last sync and the current walk horizon.
    double offset_at(double time_s) const;

    double current_offset() const { return offset_at(current_time_); }
    double current_time() const { return current_time_; }
    double last_sync_time() const { return last_sync_time_; }
    double step_bound() const { return step_bound_; }

private:
    void extend_grid(double to_time_s);

    double step_bound_;
    double last_sync_time_;
    double current_time_;
    std::vector<double> grid_offsets_;  // [i] = offset at last_sync_time_ + i seconds
    Rng rng_;
};

}  // namespace rrm
