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
#include <vector>

#include "keyhole/constellation.hpp"
#include "keyhole/rng.hpp"
#include "keyhole/scalar_info.hpp"
#include "test_support.hpp"

using namespace keyhole;

namespace {
constexpr double kLn2 = 0.69314718055994530941723212146;

// Monte Carlo estimate of the scalar AWGN MI: the complex-plane integral as
// an expectation over Z ~ CN(0,1). Independent of the Hermite path.
std::pair<double, double> mi_mc_oracle(const Constellation &c, double gamma, std::int64_t draws,
                                       std::uint64_t seed) {
    SplitMix64 rng(seed);
    const double sq = std::sqrt(gamma);
    std::vector<double> vals;
    vals.reserve(draws);
    for (std::int64_t i = 0; i < draws; ++i) {
        const std::size_t g = rng.next_u64() % c.size(); // uniform inputs only
        const cplx z = rng.next_cnormal();
        double emax = 0.0;
        std::vector<double> e(c.size());
        for (std::size_t h = 0; h < c.size(); ++h) {
            const cplx d = sq * (c.points[g] - c.points[h]);
            e[h] = std::log(c.probs[h] / c.probs[g]) - std::norm(z + d) + std::norm(z);
            emax = std::max(emax, e[h]);
        }
        double s = 0.0;
        for (double x : e) s += std::exp(x - emax);
        vals.push_back((emax + std::log(s)) / kLn2);
    }
    auto [mean, se] = testsup::mean_stderr(vals);
    return {entropy_bits(c) - mean, se};
}

} // namespace

TEST_CASE("mi_awgn: zero SNR and saturation") {
    const Constellation qam4 = make_qam(4);
    CHECK(mi_awgn(qam4, 0.0) == 0.0);
    CHECK(entropy_bits(qam4) - mi_awgn(qam4, 1e6) < 1e-6);
    CHECK(mi_awgn(make_bpsk(), 0.0) == 0.0);
}

TEST_CASE("mi_awgn: BPSK against the Monte Carlo oracle") {
    const Constellation bpsk = make_bpsk();
    const auto [mc, se] = mi_mc_oracle(bpsk, 1.0, 10000000, 99);
    CHECK(std::abs(mi_awgn(bpsk, 1.0) - mc) <= 3.0 * se);
}

TEST_CASE("mi_awgn: 4-QAM against the Monte Carlo oracle") {
    const Constellation qam4 = make_qam(4);
    const auto [mc, se] = mi_mc_oracle(qam4, 3.0, 2000000, 123);
    CHECK(std::abs(mi_awgn(qam4, 3.0) - mc) <= 3.0 * se);
}

TEST_CASE("mi_awgn: monotone and concave on a grid") {
    const Constellation qam4 = make_qam(4);
    std::vector<double> vals;
    for (double g = 0.0; g <= 6.0; g += 0.25) vals.push_back(mi_awgn(qam4, g));
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] - vals[i - 1] >= -1e-9);
    for (std::size_t i = 2; i < vals.size(); ++i)
        CHECK(vals[i] - 2.0 * vals[i - 1] + vals[i - 2] <= 1e-8);
}

TEST_CASE("mi_awgn and mmse_awgn: phase-rotation invariance") {
    const Constellation qam4 = make_qam(4);
    std::vector<cplx> rotated;
    for (const auto &p : qam4.points) rotated.push_back(p * std::polar(1.0, 0.31));
    const Constellation rot = make_constellation(rotated, qam4.probs, "rot");
    for (double g : {0.5, 1.0, 10.0}) {
        CHECK(std::abs(mi_awgn(qam4, g) - mi_awgn(rot, g)) < 1e-10);
        CHECK(std::abs(mmse_awgn(qam4, g) - mmse_awgn(rot, g)) < 1e-10);
    }
}

TEST_CASE("mmse_awgn: limits and decay") {
    const Constellation qam4 = make_qam(4);
    CHECK(mmse_awgn(qam4, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mmse_awgn(qam4, 1e3) < 1e-12); // e^{-t d^2/8} with d^2 = 2
    // in [0,1] and nonincreasing
    double prev = 1.0;
    for (double t = 0.0; t <= 30.0; t += 1.0) {
        const double v = mmse_awgn(qam4, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-10);
        prev = v;
    }
}

TEST_CASE("mmse_awgn: matches the finite-difference of mi_awgn (I-MMSE)") {
    const Constellation bpsk = make_bpsk();
    const double h = 1e-4;
    const double fd = (mi_awgn(bpsk, 2.0 + h) - mi_awgn(bpsk, 2.0 - h)) / (2.0 * h) * kLn2;
    CHECK(std::abs(fd - mmse_awgn(bpsk, 2.0)) < 1e-5);

    const Constellation qam16 = make_qam(16);
    for (double t : {0.3, 1.0, 4.0}) {
        const double ht = 1e-3 * std::max(t, 0.1);
        const double fd2 =
            (mi_awgn(qam16, t + ht) - mi_awgn(qam16, t - ht)) / (2.0 * ht) * kLn2;
        const double direct = mmse_awgn(qam16, t);
        CHECK(std::abs(fd2 - direct) <= std::max(1e-5, 1e-3 * direct));
    }
}

TEST_CASE("mellin_mmse: finiteness, cache, and the adaptive-quadrature oracle") {
    const Constellation bpsk = make_bpsk();
    MmseMellinEvaluator ev(bpsk);
    CHECK_THROWS_AS(ev(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ev(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(ev(21.0), std::invalid_argument);

    // z = 1: plain integral of the MMSE, against adaptive Simpson
    auto mmse_fn = [&](double t) { return mmse_awgn(bpsk, t); };
    const double oracle1 = testsup::adaptive_simpson(mmse_fn, 1e-10, 80.0, 1e-10);
    CHECK(ev(1.0) == doctest::Approx(oracle1).epsilon(1e-6));
    CHECK(ev(1.0) == ev(1.0)); // cached value identical

    // z = 2 for several constellations: finite and positive
    for (int m : {4, 16}) {
        MmseMellinEvaluator evq(make_qam(m));
        const double v2 = evq(2.0);
        CHECK(v2 > 0.0);
        CHECK(std::isfinite(v2));
    }

    // 4-QAM, z in {1, 2} against the same oracle
    const Constellation qam4 = make_qam(4);
    MmseMellinEvaluator evq(qam4);
    auto mmse_q = [&](double t) { return mmse_awgn(qam4, t); };
    const double o1 = testsup::adaptive_simpson(mmse_q, 1e-10, 160.0, 1e-10);
    auto mmse_q_t = [&](double t) { return t * mmse_awgn(qam4, t); };
    const double o2 = testsup::adaptive_simpson(mmse_q_t, 1e-10, 160.0, 1e-10);
    CHECK(evq(1.0) == doctest::Approx(o1).epsilon(1e-6));
    CHECK(evq(2.0) == doctest::Approx(o2).epsilon(1e-6));
}

TEST_CASE("mellin_mmse: z = 1 recovers H ln 2 (I-MMSE integral identity)") {
    for (int m : {4, 16}) {
        const Constellation c = make_qam(m);
        MmseMellinEvaluator ev(c);
        CHECK(ev(1.0) == doctest::Approx(entropy_bits(c) * kLn2).epsilon(2e-6));
    }
}

TEST_CASE("MiTable: interpolation error against direct evaluation") {
    const Constellation qam4 = make_qam(4);
    const auto table = MiTable::shared(qam4);
    SplitMix64 rng(5150);
    for (int i = 0; i < 40; ++i) {
        const double g = std::exp(std::log(1e-6) +
                                  rng.next_double() * (std::log(200.0) - std::log(1e-6)));
        CHECK(std::abs((*table)(g) - mi_awgn(qam4, g)) < 1e-9);
    }
    CHECK((*table)(0.0) == 0.0);
    CHECK((*table)(1e9) == doctest::Approx(2.0).epsilon(1e-12));
}
