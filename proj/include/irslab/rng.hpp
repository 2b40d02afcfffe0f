#pragma once

#include <cstdint>
#include <cmath>
#include <complex>
#include <random>

namespace irslab::rng {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; decorrelates derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

/// A master seed from which independent, counter-addressed engines are derived.
/// Substream i always yields the same engine no matter which worker asks for it
/// or in which order, so parallel runs reproduce serial ones bit for bit.
struct Stream {
    std::uint64_t master = 0;

    Engine substream(std::uint64_t index) const {
        return Engine(splitmix64(splitmix64(master) ^ (0xD1B54A32D192ED03ULL * (index + 1))));
    }

    Stream fork(std::uint64_t tag) const {
        return Stream{splitmix64(master ^ splitmix64(tag ^ 0xA0761D6478BD642FULL))};
    }
};

// All draws below consume engine output in a fixed, documented amount, so two
// samplers fed the same substream see identical prefixes (basis of the paired
// common-random-number comparisons in the robustness experiments).

/// Uniform on [0, 1), 53-bit resolution. One engine call.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform on [lo, hi). One engine call.
inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

/// Standard normal via Box-Muller. Two engine calls, deterministic across
/// standard libraries (std::normal_distribution is not).
inline double normal01(Engine& eng) {
    double u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline double normal(Engine& eng, double mean, double variance) {
    return mean + std::sqrt(variance) * normal01(eng);
}

/// Circularly-symmetric complex Gaussian CN(0, variance). Two engine calls.
inline std::complex<double> complex_normal(Engine& eng, double variance) {
    double u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-std::log(u1) * variance);
    const double phase = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

}  // namespace irslab::rng
