#pragma once

#include <cmath>
#include <cstdint>

namespace npi {

// Counter-based generator built on the splitmix64 finalizer. A value is a
// pure function of (seed, stream, counter), so any sample index can be
// evaluated independently of all others. Parallel code assigns one stream
// per work item (sample index, path id) and the result is identical for
// every thread count and schedule.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed + golden * mix(stream + golden))), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + golden * ++counter_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Derive an independent 64-bit seed from a seed and a tag.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) {
        return mix(mix(seed + golden) + golden * (tag + 1));
    }

private:
    static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below 1.2e-9). Used instead of std::normal_distribution
/// so that golden outputs are stable across standard libraries.
double normal_inv_cdf(double p);

/// One standard normal draw from a counter-based stream.
inline double next_normal(CounterRng& rng) {
    // next_double() is in [0,1); shift to (0,1) to keep the inverse CDF finite.
    return normal_inv_cdf((static_cast<double>(rng.next_u64() >> 11) + 0.5) * 0x1.0p-53);
}

} // namespace npi
