// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/keyhole_channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "keyhole/errors.hpp"
#include "keyhole/parallel.hpp"
#include "keyhole/rng.hpp"
#include "keyhole/specfun.hpp"

namespace keyhole {

ChannelConfig make_config(int n_t, int n_r, double m_t, double m_r) {
    if (n_t <= 1 || n_r <= 1)
        throw std::invalid_argument("channel config: N_t and N_r must both exceed 1");
    if (!(m_t >= 0.5) || !(m_r >= 0.5))
        throw std::invalid_argument("channel config: fading severities must be >= 1/2");
    return ChannelConfig{n_t, n_r, m_t, m_r};
}

bool m_t_is_integer(const ChannelConfig &cfg) {
    return std::abs(cfg.m_t - std::round(cfg.m_t)) < 1e-12;
}

FOperatorExpansion f_operator(const ChannelConfig &cfg) {
    if (!m_t_is_integer(cfg))
        throw std::invalid_argument(
            "f_operator: the closed-form expansion requires integer m_t "
            "(use the Monte Carlo path for m_t = " + std::to_string(cfg.m_t) + ")");
    const int mt = static_cast<int>(std::lround(cfg.m_t));
    const int nt = cfg.n_t;
    if (nt * mt > 64)
        throw std::invalid_argument("f_operator: N_t * m_t exceeds the combinatorial guard (64)");

    const int smax = nt * (mt - 1);
    const double u = static_cast<double>(nt) / (4.0 * cfg.m_t);
    const double ln_inv4mt = -std::log(4.0 * cfg.m_t);
    const double ln_u = std::log(u);

    // ln |(i!)^2 / (1-m_t)_i| per single index value i; sign is (-1)^i.
    std::vector<double> ln_x1(mt);
    for (int i = 0; i < mt; ++i)
        ln_x1[i] = 2.0 * log_gamma(i + 1.0) - std::log(std::abs(pochhammer(1.0 - mt, i)));

    FOperatorExpansion out;
    out.config = cfg;
    out.u = u;
    out.coeff.assign(smax + 1, 0.0);
    std::vector<CompensatedSum> acc(smax + 1);

    // The summand depends on a multi-index only through the count vector
    // (c_0, ..., c_{m_t-1}); enumerate those with their multinomial
    // multiplicity instead of the m_t^{N_t} raw tuples.
    std::vector<int> counts(mt, 0);
    counts[0] = nt;
    for (;;) {
        int s = 0;
        double ln_x = 0.0;
        double ln_mult = log_gamma(nt + 1.0);
        for (int j = 0; j < mt; ++j) {
            s += j * counts[j];
            ln_x += counts[j] * ln_x1[j];
            ln_mult -= log_gamma(counts[j] + 1.0);
        }
        const double ln_common = ln_mult + log_gamma(s + 1.0) + s * ln_inv4mt - ln_x - s * ln_u;
        out.raw_term_count += static_cast<std::uint64_t>(std::llround(std::exp(ln_mult))) *
                              static_cast<std::uint64_t>(s + 1);
        for (int h = 0; h <= s; ++h) {
            // (-S)_h = (-1)^h S!/(S-h)!; X carries sign (-1)^S.
            const double ln_term = ln_common + log_gamma(s + 1.0) - log_gamma(s - h + 1.0) -
                                   2.0 * log_gamma(h + 1.0);
            const double sign = ((h + s) % 2 == 0) ? 1.0 : -1.0;
            acc[h].add(sign * std::exp(ln_term));
        }
        // next weak composition of N_t into m_t parts
        if (counts[mt - 1] == nt) break;
        int j = 0;
        while (counts[j] == 0) ++j;
        const int val = counts[j];
        counts[j] = 0;
        counts[0] = val - 1;
        counts[j + 1] += 1;
    }
    for (int h = 0; h <= smax; ++h) out.coeff[h] = acc[h].value();
    return out;
}

namespace {

double clamp_density(double raw, const char *name) {
    if (raw < -1e-9)
        throw numerical_error(std::string(name) + ": cancellation blowup, raw value " +
                              std::to_string(raw));
    return raw < 0.0 ? 0.0 : raw;
}

} // namespace

double pdf_b(const FOperatorExpansion &exp, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("pdf_b: x must be > 0");
    const double four_u = 4.0 * exp.u;
    double poly = 0.0;
    double xpow = 1.0 / four_u; // x^h (4U)^{-h-1}
    for (double c : exp.coeff) {
        poly += c * xpow;
        xpow *= x / four_u;
    }
    return clamp_density(std::exp(-x / four_u) * poly, "pdf_b");
}

double pdf_s1(const FOperatorExpansion &exp, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("pdf_s1: x must be > 0");
    const ChannelConfig &cfg = exp.config;
    const double ar = cfg.n_r * cfg.m_r;
    const double ratio = cfg.m_r * x / (4.0 * exp.u);
    const double two_sqrt = 2.0 * std::sqrt(ratio);
    const double ln_ratio = std::log(ratio);
    const double lg_ar = log_gamma(ar);

    double sum = 0.0;
    for (std::size_t h = 0; h < exp.coeff.size(); ++h) {
        if (exp.coeff[h] == 0.0) continue;
        const double order = ar - static_cast<double>(h) - 1.0;
        const double ln_mag = std::log(2.0) - lg_ar +
                              0.5 * (ar + static_cast<double>(h) + 1.0) * ln_ratio -
                              std::log(x);
        sum += exp.coeff[h] * std::exp(ln_mag) * bessel_k(order, two_sqrt);
    }
    return clamp_density(sum, "pdf_s1");
}

double pdf_s2(const ChannelConfig &cfg, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("pdf_s2: x must be > 0");
    const double at = cfg.n_t * cfg.m_t;
    const double ar = cfg.n_r * cfg.m_r;
    const double mm = cfg.m_t * cfg.m_r;
    const double half_sum = 0.5 * (at + ar);
    const double ln_mag = std::log(2.0) + half_sum * std::log(mm) - log_gamma(at) -
                          log_gamma(ar) - (1.0 - half_sum) * std::log(x);
    return std::exp(ln_mag) * bessel_k(ar - at, 2.0 * std::sqrt(mm * x));
}

double ChannelSample::norm_r_sq() const {
    double s = 0.0;
    for (const auto &v : h_r) s += std::norm(v);
    return s;
}

double ChannelSample::norm_t_sq() const {
    double s = 0.0;
    for (const auto &v : h_t) s += std::norm(v);
    return s;
}

double ChannelSample::sum_t_sq() const {
    std::complex<double> s(0.0, 0.0);
    for (const auto &v : h_t) s += v;
    return std::norm(s);
}

ChannelSample sample_channel_at(const ChannelConfig &cfg, std::uint64_t seed,
                                std::uint64_t index) {
    ChannelSample out;
    out.h_r.resize(cfg.n_r);
    out.h_t.resize(cfg.n_t);
    SplitMix64 rng_r(seed, stream_id(index, 0));
    for (int a = 0; a < cfg.n_r; ++a) {
        const double alpha = rng_r.next_gamma(cfg.m_r, cfg.m_r);
        const double phi = rng_r.next_angle();
        out.h_r[a] = std::sqrt(alpha) * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    SplitMix64 rng_t(seed, stream_id(index, 1));
    for (int b = 0; b < cfg.n_t; ++b) {
        const double beta = rng_t.next_gamma(cfg.m_t, cfg.m_t);
        const double psi = rng_t.next_angle();
        out.h_t[b] = std::sqrt(beta) * std::complex<double>(std::cos(psi), std::sin(psi));
    }
    return out;
}

std::vector<ChannelSample> sample_channel(const ChannelConfig &cfg, std::uint64_t seed,
                                          std::int64_t count) {
    if (count < 1) throw std::invalid_argument("sample_channel: count must be >= 1");
    std::vector<ChannelSample> out(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = sample_channel_at(cfg, seed, static_cast<std::uint64_t>(i));
    return out;
}

} // namespace keyhole
