// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

// Test-local oracles, deliberately independent of the library's
// Gauss-Laguerre / Gauss-Hermite evaluation paths.

#ifndef KEYHOLE_TEST_SUPPORT_HPP
#define KEYHOLE_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace testsup {

inline double simpson_cell(const std::function<double(double)> &f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)> &f, double a, double b,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson_cell(f, a, m);
    const double right = simpson_cell(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)> &f, double a, double b,
                               double tol) {
    return adaptive_simpson_rec(f, a, b, simpson_cell(f, a, b), tol, 48);
}

// Integral over (0, hi] of a decaying density, split across log seams so the
// recursion resolves both the origin and the tail.
inline double integrate_density(const std::function<double(double)> &pdf, double hi,
                                double tol) {
    double total = 0.0;
    double lo = 1e-12;
    for (double seam : {1e-6, 1e-3, 0.1, 1.0, 10.0, 100.0}) {
        if (seam >= hi) break;
        total += adaptive_simpson(pdf, lo, seam, tol / 8.0);
        lo = seam;
    }
    total += adaptive_simpson(pdf, lo, hi, tol / 8.0);
    return total;
}

// Kolmogorov-Smirnov distance between sorted samples and a CDF callable.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)> &cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    return ks;
}

// CDF obtained by cumulative Simpson integration of a pdf on a log grid.
class NumericCdf {
  public:
    NumericCdf(const std::function<double(double)> &pdf, double x_lo, double x_hi, int cells) {
        u_.resize(cells + 1);
        cum_.resize(cells + 1);
        const double ulo = std::log(x_lo), uhi = std::log(x_hi);
        const double du = (uhi - ulo) / cells;
        auto g = [&](double u) { return pdf(std::exp(u)) * std::exp(u); };
        u_[0] = ulo;
        cum_[0] = 0.0;
        for (int i = 1; i <= cells; ++i) {
            u_[i] = ulo + i * du;
            cum_[i] = cum_[i - 1] + simpson_cell(g, u_[i - 1], u_[i]);
        }
    }

    double operator()(double x) const {
        if (x <= 0.0) return 0.0;
        const double u = std::log(x);
        if (u <= u_.front()) return 0.0;
        if (u >= u_.back()) return cum_.back();
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const std::size_t i = static_cast<std::size_t>(it - u_.begin()) - 1;
        const double t = (u - u_[i]) / (u_[i + 1] - u_[i]);
        return cum_[i] + t * (cum_[i + 1] - cum_[i]);
    }

  private:
    std::vector<double> u_, cum_;
};

inline std::pair<double, double> mean_stderr(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) s += x;
    const double mean = s / static_cast<double>(v.size());
    double q = 0.0;
    for (double x : v) q += (x - mean) * (x - mean);
    const double var = q / static_cast<double>(v.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(v.size()))};
}

} // namespace testsup

#endif
