// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_CHANNEL_HPP
#define KEYHOLE_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace keyhole {

// Keyhole channel law H = h_r h_t^H with i.i.d. Nakagami-m magnitudes on
// both sides: the squared magnitudes are Gamma(shape m, rate m), phases
// uniform. The public API requires n_t, n_r > 1 and m >= 1/2; construct the
// aggregate directly to probe degenerate antenna counts in tests.
struct ChannelConfig {
    int n_t = 2;
    int n_r = 2;
    double m_t = 1.0;
    double m_r = 1.0;
};

ChannelConfig make_config(int n_t, int n_r, double m_t, double m_r);

bool m_t_is_integer(const ChannelConfig &cfg);

// Finite expansion of the density of B = |h_t^H 1|^2 as a mixture
// f_B(x) = sum_h coeff[h] e^{-x/(4U)} x^h (4U)^{-h-1}. The alternating
// multi-index sums are aggregated per power h with compensated summation;
// term magnitudes go through the log domain. Requires integer m_t.
struct FOperatorExpansion {
    ChannelConfig config;
    double u = 0.0;                  // U = N_t / (4 m_t)
    std::vector<double> coeff;       // index h = 0 .. N_t (m_t - 1)
    std::uint64_t raw_term_count = 0;
};

FOperatorExpansion f_operator(const ChannelConfig &cfg);

// Density of B = |h_t^H 1|^2 at x > 0. Tiny negative values from
// cancellation are clamped to 0; values below -1e-9 raise numerical_error.
double pdf_b(const FOperatorExpansion &exp, double x);

// Density of S1 = ||h_r||^2 |h_t^H 1|^2 at x > 0 (uniform beamforming).
double pdf_s1(const FOperatorExpansion &exp, double x);

// Density of S2 = ||h_r||^2 ||h_t||^2 at x > 0 (maximal ratio transmission);
// valid for any real m_t, m_r >= 1/2.
double pdf_s2(const ChannelConfig &cfg, double x);

// One fading realization.
struct ChannelSample {
    std::vector<std::complex<double>> h_r;
    std::vector<std::complex<double>> h_t;

    double norm_r_sq() const;
    double norm_t_sq() const;
    // |h_t^H 1|^2
    double sum_t_sq() const;
};

// Deterministic per-index draw: realization `index` of the stream identified
// by `seed` is the same regardless of which worker evaluates it.
ChannelSample sample_channel_at(const ChannelConfig &cfg, std::uint64_t seed,
                                std::uint64_t index);

std::vector<ChannelSample> sample_channel(const ChannelConfig &cfg, std::uint64_t seed,
                                          std::int64_t count);

} // namespace keyhole

#endif
