#include "rrm/clock_model.hpp"

#include <cmath>
#include <stdexcept>

namespace rrm {

DriftingClock::DriftingClock(double step_bound_s, std::uint64_t seed, double start_time_s)
    : step_bound_(step_bound_s),
      last_sync_time_(start_time_s),
      current_time_(start_time_s),
      grid_offsets_{0.0},
      rng_(seed) {
    if (step_bound_s < 0.0) {
        throw std::invalid_argument("drift step bound must be non-negative");
    }
}

void DriftingClock::extend_grid(double to_time_s) {
    while (last_sync_time_ + static_cast<double>(grid_offsets_.size() - 1) < to_time_s) {
        grid_offsets_.push_back(grid_offsets_.back() + rng_.uniform_symmetric(step_bound_));
    }
}

void DriftingClock::advance(double to_time_s) {
    if (to_time_s < current_time_) {
        throw std::invalid_argument("clock cannot advance backwards");
    }
    extend_grid(to_time_s);
    current_time_ = to_time_s;
}

void DriftingClock::apply_sync(double at_time_s) {
    advance(at_time_s);
    last_sync_time_ = at_time_s;
    current_time_ = at_time_s;
    grid_offsets_.assign(1, 0.0);
}

double DriftingClock::offset_at(double time_s) const {
    if (time_s < last_sync_time_) {
        throw std::invalid_argument("offset history before the last sync is discarded");
    }
    const double u = time_s - last_sync_time_;
    const double last_grid = static_cast<double>(grid_offsets_.size() - 1);
    if (u > last_grid) {
        throw std::out_of_range("clock not advanced this far");
    }
    if (u == last_grid) {
        return grid_offsets_.back();
    }
    const auto i = static_cast<std::size_t>(std::floor(u));
    const double frac = u - static_cast<double>(i);
    return grid_offsets_[i] + frac * (grid_offsets_[i + 1] - grid_offsets_[i]);
}

}  // namespace rrm
