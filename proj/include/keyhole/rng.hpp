// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_RNG_HPP
#define KEYHOLE_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace keyhole {

// SplitMix64 output mix (Steele/Lea/Flood). Full 64-bit avalanche.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 run in counter mode. A stream is identified by (seed, stream);
// draws are mix(state + k*gamma), so the k-th output never depends on how
// many worker threads consumed other streams. This is the pinned generator
// for every Monte Carlo path in the library: same seed => same numbers,
// independent of platform and worker count.
class SplitMix64 {
  public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(splitmix64_mix(seed + kGamma)) {}

    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(splitmix64_mix(splitmix64_mix(seed + kGamma) ^
                                splitmix64_mix(stream * kGamma + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return splitmix64_mix(state_);
    }

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double next_double() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Uniform on [0, 2*pi).
    double next_angle() {
        return 6.283185307179586476925286766559 * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (two uniforms per variate, no caching,
    // so the draw count per call is fixed).
    double next_normal() {
        const double u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Circularly-symmetric complex normal CN(0, 1).
    std::complex<double> next_cnormal() {
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Gamma(shape, rate) via Marsaglia-Tsang squeeze; shape < 1 handled with
    // the boost X_{a+1} * U^{1/a}.
    double next_gamma(double shape, double rate) {
        double boost = 1.0;
        double a = shape;
        if (a < 1.0) {
            boost = std::pow(next_double(), 1.0 / a);
            a += 1.0;
        }
        const double d = a - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_double();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return boost * d * v / rate;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
        }
    }

  private:
    std::uint64_t state_;
};

// Stream ids: one substream per (realization index, slot), so channel and
// noise draws of a realization are independent and reproducible in isolation.
inline constexpr std::uint64_t stream_id(std::uint64_t index, unsigned slot) {
    return index * 8u + slot;
}

} // namespace keyhole

#endif
