#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rrm {

// Deterministic random source. std::mt19937_64 produces the same stream on
// every conforming platform; the double conversions below are hand-rolled
// because std::uniform_real_distribution / std::normal_distribution are
// implementation-defined and would break bit-exact reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform on [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform on [-bound, bound)
    double uniform_symmetric(double bound) { return bound * (2.0 * uniform01() - 1.0); }

    // standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kTwoPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kTwoPi * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// 64-bit FNV-1a, used for config fingerprints and derived seeds.
inline std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 14695981039346656037ull) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

}  // namespace rrm
