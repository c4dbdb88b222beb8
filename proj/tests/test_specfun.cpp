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
#include "keyhole/rng.hpp"
#include "keyhole/specfun.hpp"
#include "test_support.hpp"

using namespace keyhole;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

TEST_CASE("gauss_laguerre: closed-form low orders") {
    const QuadratureRule &r1 = gauss_laguerre(1);
    CHECK(r1.nodes[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-14));

    // roots of L_2(x) = (x^2 - 4x + 2)/2 by the quadratic formula
    const QuadratureRule &r2 = gauss_laguerre(2);
    const double lo = 2.0 - std::sqrt(2.0), hi = 2.0 + std::sqrt(2.0);
    CHECK(r2.nodes[0] == doctest::Approx(lo).epsilon(1e-13));
    CHECK(r2.nodes[1] == doctest::Approx(hi).epsilon(1e-13));
}

TEST_CASE("gauss_laguerre: exactness up to degree 2V-1") {
    for (int v = 1; v <= 20; ++v) {
        const QuadratureRule &r = gauss_laguerre(v);
        double factorial = 1.0;
        for (int k = 0; k <= 2 * v - 1; ++k) {
            if (k > 0) factorial *= k;
            double s = 0.0;
            for (int i = 0; i < v; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            CHECK(s == doctest::Approx(factorial).epsilon(1e-9));
        }
    }
}

TEST_CASE("gauss_laguerre: V=200 moments and weight structure") {
    const QuadratureRule &r = gauss_laguerre(200);
    double s3 = 0.0, wsum = 0.0;
    for (int i = 0; i < 200; ++i) {
        s3 += r.weights[i] * std::pow(r.nodes[i], 3);
        wsum += r.weights[i];
    }
    CHECK(s3 == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.nodes.front() > 0.0);
    for (int i = 1; i < 200; ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    // raw weights underflow near the top of the rule; log weights stay finite
    CHECK(r.weights.back() == 0.0);
    for (double lw : r.log_weights) CHECK(std::isfinite(lw));
}

TEST_CASE("gauss_laguerre: log weights finite at the maximum order") {
    const QuadratureRule &r = gauss_laguerre(256);
    for (double lw : r.log_weights) CHECK(std::isfinite(lw));
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gauss_hermite: closed forms, symmetry, moments") {
    const QuadratureRule &r1 = gauss_hermite(1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));

    const QuadratureRule &r2 = gauss_hermite(2);
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r2.nodes[0] == -r2.nodes[1]);

    const QuadratureRule &r30 = gauss_hermite(30);
    double m2 = 0.0, wsum = 0.0;
    for (int i = 0; i < 30; ++i) {
        m2 += r30.weights[i] * r30.nodes[i] * r30.nodes[i];
        wsum += r30.weights[i];
    }
    CHECK(m2 == doctest::Approx(std::sqrt(kPi) / 2.0).epsilon(1e-12));
    CHECK(wsum == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
    for (int i = 0; i < 15; ++i)
        CHECK(std::abs(r30.nodes[i] + r30.nodes[29 - i]) < 1e-12);
}

TEST_CASE("quadrature: deterministic across calls, order bounds enforced") {
    const QuadratureRule &a = gauss_laguerre(37);
    const QuadratureRule &b = gauss_laguerre(37);
    REQUIRE(a.nodes.size() == b.nodes.size());
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i] == b.nodes[i]);
        CHECK(a.weights[i] == b.weights[i]);
    }
    CHECK_THROWS_AS(gauss_laguerre(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_laguerre(257), std::invalid_argument);
    CHECK_THROWS_AS(gauss_hermite(-3), std::invalid_argument);
}

TEST_CASE("bessel_k: closed forms and limits") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
    CHECK(bessel_k(0.5, 1.0) ==
          doctest::Approx(std::sqrt(kPi / 2.0) * std::exp(-1.0)).epsilon(1e-12));
    CHECK(bessel_k(0.5, 7.5) ==
          doctest::Approx(std::sqrt(kPi / 15.0) * std::exp(-7.5)).epsilon(1e-12));
    // symmetry in the order
    CHECK(bessel_k(3.0, 2.0) == bessel_k(-3.0, 2.0));
    CHECK(bessel_k(4.7, 0.9) == bessel_k(-4.7, 0.9));
    // small-argument limit K_nu(z) ~ Gamma(nu)/2 * (z/2)^{-nu}
    CHECK(bessel_k(2.0, 0.001) == doctest::Approx(2e6).epsilon(0.005));
    // domain and overflow signalling
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_k(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_k(61.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_k(60.0, 1e-8), numerical_error);
}

TEST_CASE("bessel_k: integral representation cross-check") {
    // K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt, integrated adaptively
    // with the peak exponent factored out.
    auto oracle = [](double nu, double z) {
        nu = std::abs(nu);
        const double tpeak = nu > 0.0 ? std::asinh(nu / z) : 0.0;
        const double peak = nu * tpeak - z * std::cosh(tpeak);
        double t_hi = std::max(tpeak, 1.0);
        while (nu * t_hi - z * std::cosh(t_hi) > peak - 60.0) t_hi += 0.5;
        auto ln_cosh = [](double x) {
            x = std::abs(x);
            return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
        };
        auto f = [&](double t) {
            return std::exp(-z * std::cosh(t) + ln_cosh(nu * t) - peak);
        };
        return std::exp(peak) * testsup::adaptive_simpson(f, 0.0, t_hi, 1e-12);
    };
    SplitMix64 rng(424242);
    for (int i = 0; i < 50; ++i) {
        const double nu = -8.0 + 16.0 * rng.next_double();
        const double z = std::exp(std::log(0.05) +
                                  rng.next_double() * (std::log(30.0) - std::log(0.05)));
        const double want = oracle(nu, z);
        CHECK(bessel_k(nu, z) == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("log_gamma") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-13));
    CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(kPi))).epsilon(1e-13));
    double factorial = 1.0;
    for (int n = 1; n <= 20; ++n) {
        if (n > 1) factorial *= (n - 1);
        CHECK(std::exp(log_gamma(n)) == doctest::Approx(factorial).epsilon(1e-12));
    }
    CHECK_THROWS_AS(log_gamma(0.0), std::invalid_argument);
    CHECK_THROWS_AS(log_gamma(-1.5), std::invalid_argument);
}

TEST_CASE("pochhammer: product form and reflection identity") {
    CHECK(pochhammer(3.7, 0) == 1.0);
    CHECK(pochhammer(-12.0, 0) == 1.0);
    CHECK(pochhammer(-1.0, 2) == 0.0);
    CHECK(pochhammer(3.0, 3) == 60.0);
    CHECK(pochhammer(1.0 - 2.0, 1) == -1.0); // (1 - m_t)_i at m_t = 2

    SplitMix64 rng(7);
    for (int i = 0; i < 30; ++i) {
        const double z = -6.0 + 12.0 * rng.next_double();
        const int n = static_cast<int>(rng.next_u64() % 7);
        const double lhs = pochhammer(-z, n);
        const double rhs = (n % 2 == 0 ? 1.0 : -1.0) * pochhammer(z - n + 1, n);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}
