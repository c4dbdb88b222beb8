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

#include "keyhole/errors.hpp"
#include "keyhole/scalar_info.hpp"
#include "keyhole/simulate.hpp"
#include "test_support.hpp"

using namespace keyhole;

namespace {

SimulationPlan ref_plan(SstScheme scheme, std::int64_t realizations, std::uint64_t seed) {
    SimulationPlan plan;
    plan.constellation = make_qam(4);
    plan.cfg = make_config(2, 2, 2.0, 3.0);
    plan.scheme = scheme;
    plan.snr_db = snr_grid(-10.0, 30.0, 5.0);
    plan.realizations = realizations;
    plan.seed = seed;
    return plan;
}

} // namespace

TEST_CASE("snr_grid: inclusive endpoints") {
    const auto g = snr_grid(-10.0, 30.0, 2.0);
    REQUIRE(g.size() == 21);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == doctest::Approx(30.0).epsilon(1e-12));
    CHECK_THROWS_AS(snr_grid(10.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_grid(0.0, 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("emi_sst_mc: reproducible and worker-count independent") {
    SimulationPlan plan = ref_plan(SstScheme::sst_no_csit, 4000, 2024);
    plan.workers = 1;
    const EmiCurve a = emi_sst_mc(plan);
    plan.workers = 3;
    const EmiCurve b = emi_sst_mc(plan);
    REQUIRE(a.emi_bits.size() == b.emi_bits.size());
    for (std::size_t j = 0; j < a.emi_bits.size(); ++j) {
        CHECK(a.emi_bits[j] == b.emi_bits[j]);       // bitwise
        CHECK(a.stderr_bits[j] == b.stderr_bits[j]); // bitwise
    }
    for (std::size_t j = 0; j < a.emi_bits.size(); ++j) {
        CHECK(a.emi_bits[j] >= 0.0);
        CHECK(a.emi_bits[j] <= entropy_bits(plan.constellation));
    }
}

TEST_CASE("emi_sst_mc: stderr scales like 1/sqrt(realizations)") {
    SimulationPlan small = ref_plan(SstScheme::sst_no_csit, 5000, 11);
    SimulationPlan big = ref_plan(SstScheme::sst_no_csit, 20000, 11);
    const EmiCurve a = emi_sst_mc(small);
    const EmiCurve b = emi_sst_mc(big);
    // compare at 10 dB (index 4 on the -10:30:5 grid)
    const double ratio = a.stderr_bits[4] / b.stderr_bits[4];
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("emi_sst_mc: CSIT dominates no-CSIT; Gaussian dominates finite alphabet") {
    const EmiCurve no_csit = emi_sst_mc(ref_plan(SstScheme::sst_no_csit, 20000, 5));
    const EmiCurve csit = emi_sst_mc(ref_plan(SstScheme::sst_csit, 20000, 5));
    const EmiCurve gauss = emi_sst_mc(ref_plan(SstScheme::gaussian_sst_csit, 20000, 5));
    for (std::size_t j = 0; j < no_csit.emi_bits.size(); ++j) {
        const double slack =
            3.0 * std::hypot(no_csit.stderr_bits[j], csit.stderr_bits[j]);
        CHECK(csit.emi_bits[j] >= no_csit.emi_bits[j] - slack);
    }
    // 30 dB: Gaussian input grows unboundedly, finite alphabet saturates at 2
    CHECK(gauss.emi_bits.back() > csit.emi_bits.back());
    CHECK(gauss.emi_bits.back() > 5.0);
}

TEST_CASE("emi_sst_mc: agrees with the quadrature of f_S1 against the scalar MI") {
    // independent of Gauss-Laguerre: adaptive Simpson over the density
    const SimulationPlan plan = ref_plan(SstScheme::sst_no_csit, 50000, 17);
    const EmiCurve mc = emi_sst_mc(plan);
    const FOperatorExpansion fx = f_operator(plan.cfg);
    const auto mi = MiTable::shared(plan.constellation);
    const double gamma = db_to_linear(10.0); // index 4
    auto integrand = [&](double x) {
        return pdf_s1(fx, x) * (*mi)(gamma * x / plan.cfg.n_t);
    };
    const double analytic = testsup::integrate_density(integrand, 4000.0, 1e-8);
    CHECK(std::abs(analytic - mc.emi_bits[4]) <= 3.0 * mc.stderr_bits[4]);
}

TEST_CASE("emi_sst_mc: plan validation") {
    SimulationPlan plan = ref_plan(SstScheme::sst_no_csit, 500, 1); // too few
    CHECK_THROWS_AS(emi_sst_mc(plan), std::invalid_argument);
    plan.realizations = 2000;
    plan.snr_db = {10.0, 0.0}; // unsorted
    CHECK_THROWS_AS(emi_sst_mc(plan), std::invalid_argument);
}

TEST_CASE("fit_diversity: exact power law recovers itself") {
    EmiCurve curve;
    curve.method = EmiMethod::analytic_quadrature;
    const double ga = 2.0, gd = 3.0, entropy = 2.0;
    for (double db = 10.0; db <= 24.0; db += 2.0) {
        curve.snr_db.push_back(db);
        curve.emi_bits.push_back(entropy - std::pow(ga * db_to_linear(db), -gd));
    }
    const DiversityFit fit = fit_diversity(curve, entropy, 10.0, 24.0);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(fit.r_squared > 1.0 - 1e-12);
    // intercept encodes G_d log10 G_a
    CHECK(fit.intercept == doctest::Approx(-gd * std::log10(ga)).epsilon(1e-9));
}

TEST_CASE("fit_diversity: window preconditions") {
    EmiCurve curve;
    curve.method = EmiMethod::monte_carlo;
    for (double db = 0.0; db <= 30.0; db += 2.0) {
        curve.snr_db.push_back(db);
        curve.emi_bits.push_back(2.0 - std::pow(db_to_linear(db), -1.0));
        curve.stderr_bits.push_back(1e-9);
    }
    CHECK_THROWS_AS(fit_diversity(curve, 2.0, 28.0, 30.0), numerical_error); // < 4 points
    // unresolvable: gap at 30 dB is 1e-3, stderr below makes 10x fail
    curve.stderr_bits.assign(curve.stderr_bits.size(), 1e-3);
    CHECK_THROWS_AS(fit_diversity(curve, 2.0, 20.0, 30.0), numerical_error);
}
