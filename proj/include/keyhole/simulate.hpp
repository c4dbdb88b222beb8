// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_SIMULATE_HPP
#define KEYHOLE_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "keyhole/constellation.hpp"
#include "keyhole/emi_curve.hpp"
#include "keyhole/keyhole_channel.hpp"

namespace keyhole {

enum class SstScheme { sst_no_csit, sst_csit, gaussian_sst_no_csit, gaussian_sst_csit };

std::string to_string(SstScheme s);

// The Monte Carlo oracle for single-stream EMI. Effective per-realization
// SNR is gamma * S1 / N_t (uniform beamforming) or gamma * S2 (MRT); the
// scalar MI comes from the shared MiTable for finite alphabets and from
// log2(1 + gamma) for the Gaussian schemes.
struct SimulationPlan {
    Constellation constellation;   // ignored by the gaussian schemes
    ChannelConfig cfg;
    SstScheme scheme = SstScheme::sst_no_csit;
    std::vector<double> snr_db;
    std::int64_t realizations = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

EmiCurve emi_sst_mc(const SimulationPlan &plan);

struct DiversityFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
    double lo_db = 0.0;
    double hi_db = 0.0;
};

// Least-squares fit of log10(entropy - EMI) against log10(SNR) over the dB
// window [lo_db, hi_db]; -slope estimates the diversity order. Throws
// numerical_error if the window has < 4 points or the gap is not resolved
// above 10x the Monte Carlo standard error at any windowed point.
DiversityFit fit_diversity(const EmiCurve &curve, double entropy, double lo_db, double hi_db);

// Slides a window of the given width down from the top of the curve's grid
// and returns the first (deepest) fit whose gap clears the resolvability
// precondition at every point.
DiversityFit fit_diversity_deepest(const EmiCurve &curve, double entropy, double width_db);

} // namespace keyhole

#endif
