// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_EMI_CURVE_HPP
#define KEYHOLE_EMI_CURVE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "keyhole/keyhole_channel.hpp"

namespace keyhole {

enum class EmiMethod { analytic_quadrature, monte_carlo, asymptotic };

std::string to_string(EmiMethod m);

// SNR-indexed EMI samples with provenance. stderr_bits is populated only for
// Monte Carlo curves.
struct EmiCurve {
    std::vector<double> snr_db;
    std::vector<double> emi_bits;
    EmiMethod method = EmiMethod::analytic_quadrature;
    std::vector<double> stderr_bits;

    // provenance
    std::string scheme;
    std::string constellation_label;
    double entropy_bits = 0.0;
    ChannelConfig config{};
    int quad_order = 0;
    std::int64_t realizations = 0;
    std::int64_t noise_samples = 0;
    std::uint64_t seed = 0;
};

// Inclusive dB grid lo:hi:step.
std::vector<double> snr_grid(double lo_db, double hi_db, double step_db);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace keyhole

#endif
