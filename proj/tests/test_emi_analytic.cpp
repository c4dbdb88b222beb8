// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>

#include "keyhole/emi_analytic.hpp"
#include "keyhole/errors.hpp"

using namespace keyhole;

namespace {
const ChannelConfig kRefCfg = make_config(2, 2, 2.0, 3.0);
}

TEST_CASE("emi_sst_no_csit: vanishes at deeply negative SNR") {
    const EmiCurve c = emi_sst_no_csit(make_qam(4), kRefCfg, {-60.0}, 64);
    CHECK(c.emi_bits[0] >= 0.0);
    CHECK(c.emi_bits[0] < 1e-3);
}

TEST_CASE("emi_sst_no_csit: matches the Monte Carlo oracle at spot SNRs") {
    const Constellation qam4 = make_qam(4);
    const std::vector<double> grid = {0.0, 10.0, 20.0};
    const EmiCurve quad = emi_sst_no_csit(qam4, kRefCfg, grid, 200);

    SimulationPlan plan;
    plan.constellation = qam4;
    plan.cfg = kRefCfg;
    plan.scheme = SstScheme::sst_no_csit;
    plan.snr_db = grid;
    plan.realizations = 30000;
    plan.seed = 314;
    const EmiCurve mc = emi_sst_mc(plan);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double tol = std::max(0.02, 3.0 * mc.stderr_bits[j]);
        CHECK(std::abs(quad.emi_bits[j] - mc.emi_bits[j]) <= tol);
    }
}

TEST_CASE("emi_sst_no_csit: V self-convergence at 10 dB") {
    const Constellation qam4 = make_qam(4);
    const EmiCurve v100 = emi_sst_no_csit(qam4, kRefCfg, {10.0}, 100);
    const EmiCurve v200 = emi_sst_no_csit(qam4, kRefCfg, {10.0}, 200);
    CHECK(std::abs(v100.emi_bits[0] - v200.emi_bits[0]) < 1e-6);
}

TEST_CASE("emi_sst_csit: V self-convergence and saturation") {
    const Constellation qam4 = make_qam(4);
    const EmiCurve v100 = emi_sst_csit(qam4, kRefCfg, {10.0}, 100);
    const EmiCurve v200 = emi_sst_csit(qam4, kRefCfg, {10.0}, 200);
    CHECK(std::abs(v100.emi_bits[0] - v200.emi_bits[0]) < 1e-6);

    const EmiCurve sat = emi_sst_csit(qam4, kRefCfg, {-60.0, 40.0}, 200);
    CHECK(sat.emi_bits[0] < 1e-3);
    CHECK(2.0 - sat.emi_bits[1] < 1e-3);
    CHECK(sat.emi_bits[1] <= 2.0);
}

TEST_CASE("emi_sst_csit dominates emi_sst_no_csit pointwise") {
    const Constellation qam4 = make_qam(4);
    const auto grid = snr_grid(-10.0, 30.0, 4.0);
    const EmiCurve no = emi_sst_no_csit(qam4, kRefCfg, grid, 128);
    const EmiCurve with = emi_sst_csit(qam4, kRefCfg, grid, 128);
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(with.emi_bits[j] >= no.emi_bits[j] - 1e-9);
}

TEST_CASE("emi_sst curves: nondecreasing in SNR, bounded by the entropy") {
    const Constellation qam4 = make_qam(4);
    const auto grid = snr_grid(-10.0, 40.0, 2.0);
    for (const EmiCurve &c : {emi_sst_no_csit(qam4, kRefCfg, grid, 96),
                              emi_sst_csit(qam4, kRefCfg, grid, 96)}) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            CHECK(c.emi_bits[j] >= 0.0);
            CHECK(c.emi_bits[j] <= 2.0);
            if (j > 0) CHECK(c.emi_bits[j] >= c.emi_bits[j - 1] - 1e-9);
        }
    }
}

TEST_CASE("emi_sst preconditions") {
    const Constellation qam4 = make_qam(4);
    CHECK_THROWS_AS(emi_sst_no_csit(qam4, make_config(2, 2, 2.5, 3.0), {10.0}, 200),
                    std::invalid_argument); // non-integer m_t
    CHECK_THROWS_AS(emi_sst_no_csit(qam4, kRefCfg, {10.0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(emi_sst_csit(qam4, kRefCfg, {10.0}, 7), std::invalid_argument);
    // CSIT path accepts non-integer severities
    CHECK_NOTHROW(emi_sst_csit(qam4, make_config(2, 2, 1.5, 2.5), {0.0}, 64));
}

TEST_CASE("asymptotic_no_csit: diversity order 1 and validity checks") {
    const AsymptoticCharacterization a = asymptotic_no_csit(make_qam(4), kRefCfg);
    CHECK(a.diversity_order == 1.0);
    CHECK(a.array_gain > 0.0);
    CHECK(a.entropy == doctest::Approx(2.0));
    // N_r m_r = 2 collides with h+1 at h = 1 for m_t = 2
    CHECK_THROWS_AS(asymptotic_no_csit(make_qam(4), make_config(2, 2, 2.0, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("asymptotic_csit: G_d = min{N_t m_t, N_r m_r} and degeneracy") {
    const AsymptoticCharacterization a = asymptotic_csit(make_qam(4), kRefCfg);
    CHECK(a.diversity_order == doctest::Approx(4.0)); // min{4, 6}
    CHECK(a.array_gain > 0.0);
    CHECK_THROWS_AS(asymptotic_csit(make_qam(4), make_config(2, 2, 1.0, 1.0)),
                    std::invalid_argument); // N_t m_t = N_r m_r = 2
}

TEST_CASE("asymptotic gap law: ratio against the analytic curve") {
    // no-CSIT at 35 dB: gap/[ (G_a snr)^-1 ] should be near 1
    const Constellation qam4 = make_qam(4);
    const AsymptoticCharacterization a = asymptotic_no_csit(qam4, kRefCfg);
    const EmiCurve c = emi_sst_no_csit(qam4, kRefCfg, {35.0}, 200);
    const double gap = a.entropy - c.emi_bits[0];
    const double predicted = 1.0 / (a.array_gain * db_to_linear(35.0));
    CHECK(gap / predicted == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("asymptotic_csit: log-log slope of the analytic gap near -4") {
    const Constellation qam4 = make_qam(4);
    const EmiCurve c = emi_sst_csit(qam4, kRefCfg, snr_grid(20.0, 26.0, 1.0), 200);
    const DiversityFit fit = fit_diversity(c, 2.0, 20.0, 26.0);
    CHECK(fit.slope == doctest::Approx(-4.0).epsilon(0.075)); // +/- 0.3 absolute
}

TEST_CASE("saturation gap decays with a steepening log-log slope") {
    // positive gap whose local log-log slope is nonincreasing toward the
    // asymptotic power law on the sampled high-SNR grid
    const Constellation qam4 = make_qam(4);
    const auto grid = snr_grid(8.0, 36.0, 2.0);
    const EmiCurve c = emi_sst_csit(qam4, kRefCfg, grid, 200);
    double prev_slope = 0.0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double g0 = 2.0 - c.emi_bits[j - 1];
        const double g1 = 2.0 - c.emi_bits[j];
        CHECK(g1 > 0.0);
        CHECK(g1 < g0);
        const double slope = std::log10(g1 / g0) / 0.2;
        if (j > 1) CHECK(slope <= prev_slope + 1e-6);
        prev_slope = slope;
    }
}
