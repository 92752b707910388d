#pragma once

// Splittable counter-derived RNG streams. Each trial gets an independent
// stream from (seed, trial index), so parallel runs reproduce the serial
// result exactly regardless of scheduling.

#include <cmath>
#include <cstdint>

namespace uavcpn {

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(detail::mix64(seed + 0x632BE59BD9B4E019ULL) ^
                      detail::mix64((index + 1) * 0xD1342543DE82EF95ULL));
}

/// Knuth product-method Poisson draw, chunked so exp(-mean) never underflows.
inline std::uint64_t poisson_draw(SplitMix64& rng, double mean) {
    std::uint64_t count = 0;
    while (mean > 0.0) {
        const double chunk = mean > 500.0 ? 500.0 : mean;
        mean -= chunk;
        const double limit = std::exp(-chunk);
        double prod = 1.0;
        std::uint64_t k = 0;
        do {
            ++k;
            prod *= rng.u01();
        } while (prod > limit);
        count += k - 1;
    }
    return count;
}

}  // namespace uavcpn
