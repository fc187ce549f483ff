// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace setopt {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based 64-bit generator: SplitMix64 in counter mode.
///
/// The i-th output of stream s under seed q is
///   mix64(key(q, s) + i * 0x9E3779B97F4A7C15)  with  i = 1, 2, ...
///   key(q, s) = mix64(q + 0x9E3779B97F4A7C15) ^ mix64(s * 0xD1B54A32D192ED03 + 1)
/// This scheme is fixed; batch run r always draws from stream r, so the
/// sampled points are independent of thread scheduling.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed + kGamma) ^ mix64(stream * 0xD1B54A32D192ED03ULL + 1)) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (two draws per value, no cached spare).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr double kPi = 3.14159265358979323846;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace setopt
