// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

#include "keyhole/errors.hpp"

namespace keyhole {

namespace {

constexpr int kMaxOrder = 256;
constexpr double kPi = 3.14159265358979323846264338328;

// Symmetric tridiagonal QL with implicit shifts. d holds the diagonal,
// e the subdiagonal (e[0] unused on entry as e[i] couples rows i-1 and i).
// z starts as the first row of the identity and is rotated along, so that
// on exit z[j]^2 is the squared first component of the j-th eigenvector.
void tridiag_ql(std::vector<double> &d, std::vector<double> &e, std::vector<double> &z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd + 1e-300) break;
            }
            if (m != l) {
                if (iter++ == 60) throw numerical_error("tridiag_ql: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = (i >= l);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

QuadratureRule build_rule(QuadratureKind kind, int order) {
    std::vector<double> d(order), e(order), z(order, 0.0);
    z[0] = 1.0;
    double mu0;
    if (kind == QuadratureKind::laguerre) {
        for (int i = 0; i < order; ++i) {
            d[i] = 2.0 * i + 1.0;
            e[i] = static_cast<double>(i); // couples rows i-1 and i
        }
        mu0 = 1.0;
    } else {
        for (int i = 0; i < order; ++i) {
            d[i] = 0.0;
            e[i] = std::sqrt(0.5 * i);
        }
        mu0 = std::sqrt(kPi);
    }
    tridiag_ql(d, e, z);

    std::vector<int> idx(order);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });

    QuadratureRule rule;
    rule.kind = kind;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    rule.log_weights.resize(order);
    const double log_mu0 = std::log(mu0);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = d[idx[i]];
        const double zi = z[idx[i]];
        rule.weights[i] = mu0 * zi * zi;
        rule.log_weights[i] = log_mu0 + 2.0 * std::log(std::abs(zi));
    }

    if (kind == QuadratureKind::hermite) {
        // Enforce the exact +/- pairing the eigen-solve only delivers to
        // rounding accuracy.
        for (int i = 0, j = order - 1; i < j; ++i, --j) {
            const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
            rule.nodes[i] = -x;
            rule.nodes[j] = x;
            const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
            rule.weights[i] = rule.weights[j] = w;
            const double lw = 0.5 * (rule.log_weights[i] + rule.log_weights[j]);
            rule.log_weights[i] = rule.log_weights[j] = lw;
        }
        if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    }
    return rule;
}

const QuadratureRule &cached_rule(QuadratureKind kind, int order) {
    if (order < 1 || order > kMaxOrder)
        throw std::invalid_argument("quadrature order must be in [1, 256], got " +
                                    std::to_string(order));
    static std::mutex mu;
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(kind), order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_rule(kind, order)).first;
    return it->second;
}

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu), gam2 = the half-sum;
// the small-mu branch avoids the cancellation in the difference.
void temme_gammas(double mu, double &gam1, double &gam2, double &gampl, double &gammi) {
    gampl = 1.0 / std::tgamma(1.0 + mu);
    gammi = 1.0 / std::tgamma(1.0 - mu);
    if (std::abs(mu) < 1e-3) {
        constexpr double euler = 0.57721566490153286060651209008;
        // -(d^3/dx^3 coefficient of 1/Gamma(1+x)): gamma^3/6 - gamma pi^2/12 + zeta(3)/3
        constexpr double b3 = -0.04200263503409523553;
        gam1 = -(euler + b3 * mu * mu);
    } else {
        gam1 = (gammi - gampl) / (2.0 * mu);
    }
    gam2 = 0.5 * (gammi + gampl);
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x <= 2 (Temme's series).
void bessel_k_temme(double x, double mu, double &kmu, double &kmu1) {
    constexpr double eps = 1e-17;
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = (std::abs(pimu) < eps) ? 1.0 : pimu / std::sin(pimu);
    double dlog = -std::log(x2);
    double e = mu * dlog;
    const double fact2 = (std::abs(e) < eps) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * dlog);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    const double d = x2 * x2;
    double sum1 = p;
    const double mu2 = mu * mu;
    for (int i = 1; i <= 1000; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::abs(del) < std::abs(sum) * eps) {
            kmu = sum;
            kmu1 = sum1 * 2.0 / x;
            return;
        }
    }
    throw numerical_error("bessel_k: Temme series failed to converge");
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x > 2 (Steed's CF2).
void bessel_k_cf2(double x, double mu, double &kmu, double &kmu1) {
    constexpr double eps = 1e-17;
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) {
            h = a1 * h;
            kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
            kmu1 = kmu * (mu + x + 0.5 - h) / x;
            return;
        }
    }
    throw numerical_error("bessel_k: CF2 failed to converge");
}

} // namespace

const QuadratureRule &gauss_laguerre(int order) {
    return cached_rule(QuadratureKind::laguerre, order);
}

const QuadratureRule &gauss_hermite(int order) {
    return cached_rule(QuadratureKind::hermite, order);
}

double bessel_k(double nu, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("bessel_k: z must be > 0");
    nu = std::abs(nu); // K_nu = K_{-nu}
    if (nu > 60.0) throw std::invalid_argument("bessel_k: |nu| must be <= 60");

    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl; // |mu| <= 1/2
    double kmu, kmu1;
    if (z <= 2.0)
        bessel_k_temme(z, mu, kmu, kmu1);
    else
        bessel_k_cf2(z, mu, kmu, kmu1);

    // K_{m+1}(z) = K_{m-1}(z) + 2 m / z * K_m(z)
    const double xi2 = 2.0 / z;
    for (int i = 1; i <= nl; ++i) {
        const double knext = (mu + i) * xi2 * kmu1 + kmu;
        kmu = kmu1;
        kmu1 = knext;
    }
    if (!std::isfinite(kmu))
        throw numerical_error("bessel_k: overflow for nu=" + std::to_string(nu) +
                              ", z=" + std::to_string(z));
    return kmu;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("log_gamma: x must be > 0");
    return std::lgamma(x);
}

double pochhammer(double z, int n) {
    if (n < 0) throw std::invalid_argument("pochhammer: n must be >= 0");
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= (z + k);
    return r;
}

} // namespace keyhole
