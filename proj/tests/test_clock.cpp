#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rrm/clock_model.hpp"

using namespace rrm;

TEST_CASE("zero step bound keeps the offset at zero") {
    DriftingClock clock(0.0, 42);
    clock.advance(100.0);
    CHECK(clock.offset_at(100.0) == 0.0);
    CHECK(clock.offset_at(37.5) == 0.0);
}

TEST_CASE("offsets interpolate linearly between grid samples") {
    DriftingClock clock(1e-9, 7);
    clock.advance(10.0);
    for (int k = 0; k < 9; ++k) {
        const double mid = clock.offset_at(k + 0.5);
        CHECK(mid == doctest::Approx(0.5 * (clock.offset_at(double(k)) + clock.offset_at(double(k + 1))))
                         .epsilon(1e-12));
    }
    // continuity across the grid breakpoints
    for (int k = 1; k < 10; ++k) {
        const double at = clock.offset_at(double(k));
        CHECK(std::abs(clock.offset_at(k - 1e-9) - at) < 1e-17);
        CHECK(std::abs(clock.offset_at(k + 1e-9) - at) < 1e-17);
    }
}

TEST_CASE("single-step offsets stay within the bound") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        DriftingClock clock(1e-9, seed);
        clock.apply_sync(5.0);
        clock.advance(6.0);
        CHECK(std::abs(clock.offset_at(6.0)) <= 1e-9);
    }
}

TEST_CASE("apply_sync zeroes the offset and is idempotent at the same time") {
    DriftingClock clock(1e-9, 3);
    clock.advance(12.3);
    clock.apply_sync(12.3);
    CHECK(clock.offset_at(12.3) == 0.0);
    CHECK(clock.last_sync_time() == 12.3);
    const double before = clock.current_offset();
    clock.apply_sync(12.3);
    CHECK(clock.current_offset() == before);
    CHECK(clock.offset_at(12.3) == 0.0);
}

TEST_CASE("time cannot go backwards") {
    DriftingClock clock(1e-9, 3);
    clock.advance(5.0);
    CHECK_THROWS_AS(clock.advance(4.0), std::invalid_argument);
    CHECK_THROWS_AS(clock.offset_at(5.5), std::out_of_range);
}

TEST_CASE("identical seeds give bit-identical walks") {
    DriftingClock a(2e-9, 99), b(2e-9, 99);
    a.advance(50.0);
    b.advance(50.0);
    for (int k = 0; k <= 50; ++k) {
        CHECK(a.offset_at(double(k)) == b.offset_at(double(k)));
    }
}

TEST_CASE("random walk matches the N d^2 / 3 variance law") {
    // Monte Carlo oracle: Var(sum of N uniform(-d, d)) = N d^2 / 3.
    const int walks = 10000;
    const int steps = 100;
    const double d = 1e-9;
    double sum = 0.0, sum_sq = 0.0;
    for (int w = 0; w < walks; ++w) {
        DriftingClock clock(d, 5000 + static_cast<std::uint64_t>(w));
        clock.advance(double(steps));
        const double offset = clock.offset_at(double(steps));
        sum += offset;
        sum_sq += offset * offset;
    }
    const double mean = sum / walks;
    const double variance = sum_sq / walks - mean * mean;
    const double expected = steps * d * d / 3.0;
    CHECK(variance == doctest::Approx(expected).epsilon(0.05));

    // martingale: |mean| within 3 standard errors of zero
    const double std_err = std::sqrt(expected / walks);
    CHECK(std::abs(mean) <= 3.0 * std_err);
}

TEST_CASE("clock offsets convert to range errors at the speed of light") {
    CHECK(range_error_from_clock(0.0) == 0.0);
    CHECK(range_error_from_clock(1e-9) == doctest::Approx(0.299792458).epsilon(1e-12));
    CHECK(range_error_from_clock(1e-6) == doctest::Approx(299.792458).epsilon(1e-12));
}
