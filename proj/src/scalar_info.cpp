// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/scalar_info.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "keyhole/errors.hpp"
#include "keyhole/parallel.hpp"

namespace keyhole {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLog2e = 1.44269504088896340735992468100;

// The tensor-product Hermite grid is not isotropic, so its (tiny) error
// depends on the alphabet's orientation. Rotating a deterministically
// chosen minimum-distance pair onto the real axis first makes every
// unit-modulus rotation of an alphabet evaluate the same geometry.
Constellation canonical_rotation(const Constellation &c) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < c.size(); ++g)
        for (std::size_t h = g + 1; h < c.size(); ++h)
            best = std::min(best, std::abs(c.points[g] - c.points[h]));
    cplx diff(1.0, 0.0);
    bool found = false;
    for (std::size_t g = 0; g < c.size() && !found; ++g)
        for (std::size_t h = g + 1; h < c.size() && !found; ++h) {
            const cplx d = c.points[g] - c.points[h];
            if (std::abs(d) <= best * (1.0 + 1e-9)) {
                diff = d;
                found = true;
            }
        }
    const cplx rot = std::conj(diff) / std::abs(diff);
    Constellation out = c;
    for (auto &p : out.points) p *= rot;
    return out;
}

// Per-reference-symbol linearized exponents: for noise node v = (va, vb),
// exponent(g') = a + va * b + vb * c.
struct ExpRow {
    std::vector<double> a, b, c;
};

std::vector<ExpRow> exponent_rows(const Constellation &c, double gamma, bool with_prior_ratio) {
    const std::size_t m = c.size();
    const double sq = std::sqrt(gamma);
    std::vector<ExpRow> rows(m);
    for (std::size_t g = 0; g < m; ++g) {
        rows[g].a.resize(m);
        rows[g].b.resize(m);
        rows[g].c.resize(m);
        for (std::size_t h = 0; h < m; ++h) {
            const cplx d = sq * (c.points[g] - c.points[h]);
            rows[g].a[h] = (with_prior_ratio ? std::log(c.probs[h] / c.probs[g])
                                             : std::log(c.probs[h])) -
                           std::norm(d);
            rows[g].b[h] = -2.0 * d.real();
            rows[g].c[h] = -2.0 * d.imag();
        }
    }
    return rows;
}

} // namespace

double mi_awgn_fixed(const Constellation &c_in, double gamma, int hermite_order) {
    if (gamma < 0.0) throw std::invalid_argument("mi_awgn: gamma must be >= 0");
    const double entropy = entropy_bits(c_in);
    if (gamma == 0.0) return 0.0;
    const Constellation c = canonical_rotation(c_in);

    const QuadratureRule &rule = gauss_hermite(hermite_order);
    const std::size_t m = c.size();
    const auto rows = exponent_rows(c, gamma, /*with_prior_ratio=*/true);

    double gap = 0.0; // E log2 sum_{g'} (p'/p) e^{...} averaged over g
    std::vector<double> e(m);
    for (std::size_t g = 0; g < m; ++g) {
        const ExpRow &r = rows[g];
        double acc = 0.0;
        for (int ia = 0; ia < hermite_order; ++ia) {
            const double va = rule.nodes[ia];
            const double wa = rule.weights[ia];
            for (int ib = 0; ib < hermite_order; ++ib) {
                const double vb = rule.nodes[ib];
                double emax = 0.0; // the g'=g term is exactly 0
                for (std::size_t h = 0; h < m; ++h) {
                    e[h] = r.a[h] + va * r.b[h] + vb * r.c[h];
                    if (e[h] > emax) emax = e[h];
                }
                double s = 0.0;
                for (std::size_t h = 0; h < m; ++h) s += std::exp(e[h] - emax);
                acc += wa * rule.weights[ib] * (emax + std::log(s));
            }
        }
        gap += c.probs[g] * acc;
    }
    const double mi = entropy - gap * kLog2e / kPi;
    return std::clamp(mi, 0.0, entropy);
}

double mi_awgn(const Constellation &c, double gamma, int hermite_order) {
    if (gamma < 0.0) throw std::invalid_argument("mi_awgn: gamma must be >= 0");
    if (gamma == 0.0) return 0.0;
    int order = std::clamp(hermite_order, 4, 256);
    const int cap = std::max(160, order);
    // The agreement target is far below the contractual 1e-9 bits so that
    // the escalation decision, and with it the returned value, is stable
    // under unit-modulus rotations of the alphabet.
    double cur = mi_awgn_fixed(c, gamma, order);
    while (2 * order <= cap) {
        order *= 2;
        const double next = mi_awgn_fixed(c, gamma, order);
        if (std::abs(next - cur) < 1e-12) return next;
        cur = next;
    }
    return cur;
}

namespace {

double mmse_awgn_fixed(const Constellation &c_in, double t, int hermite_order) {
    const Constellation c = canonical_rotation(c_in);
    const QuadratureRule &rule = gauss_hermite(hermite_order);
    const std::size_t m = c.size();
    const auto rows = exponent_rows(c, t, /*with_prior_ratio=*/false);

    double acc = 0.0;
    std::vector<double> e(m);
    for (std::size_t g = 0; g < m; ++g) {
        const ExpRow &r = rows[g];
        double acc_g = 0.0;
        for (int ia = 0; ia < hermite_order; ++ia) {
            const double va = rule.nodes[ia];
            const double wa = rule.weights[ia];
            for (int ib = 0; ib < hermite_order; ++ib) {
                const double vb = rule.nodes[ib];
                double emax = -std::numeric_limits<double>::infinity();
                for (std::size_t h = 0; h < m; ++h) {
                    e[h] = r.a[h] + va * r.b[h] + vb * r.c[h];
                    emax = std::max(emax, e[h]);
                }
                double den = 0.0;
                cplx num(0.0, 0.0);
                for (std::size_t h = 0; h < m; ++h) {
                    const double w = std::exp(e[h] - emax);
                    den += w;
                    num += w * c.points[h];
                }
                const cplx cond_mean = num / den;
                acc_g += wa * rule.weights[ib] * std::norm(c.points[g] - cond_mean);
            }
        }
        acc += c.probs[g] * acc_g;
    }
    return std::clamp(acc / kPi, 0.0, 1.0);
}

} // namespace

double mmse_awgn(const Constellation &c, double t) {
    if (t < 0.0) throw std::invalid_argument("mmse_awgn: t must be >= 0");
    if (t == 0.0) {
        cplx mean(0.0, 0.0);
        for (std::size_t g = 0; g < c.size(); ++g) mean += c.probs[g] * c.points[g];
        return 1.0 - std::norm(mean);
    }
    int order = 40;
    double cur = mmse_awgn_fixed(c, t, order);
    while (2 * order <= 160) {
        order *= 2;
        const double next = mmse_awgn_fixed(c, t, order);
        if (std::abs(next - cur) < 1e-12) return next;
        cur = next;
    }
    return cur;
}

MmseMellinEvaluator::MmseMellinEvaluator(Constellation c, int laguerre_order)
    : c_(std::move(c)), rule_(&gauss_laguerre(laguerre_order)) {
    // The MMSE decays like e^{-t d^2/8}; the rule's node range covers that
    // directly unless the minimum distance is small, in which case t is
    // rescaled just enough to pull the tail inside the rule. Stronger
    // rescaling would starve the head of the integrand of nodes.
    const double d2 = min_distance(c_) * min_distance(c_);
    scale_ = std::max(1.0, 0.4 / d2);
    log_mmse_.resize(rule_->nodes.size());
    for (std::size_t i = 0; i < rule_->nodes.size(); ++i) {
        const double v = mmse_awgn(c_, scale_ * rule_->nodes[i]);
        log_mmse_[i] = v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    }
}

double MmseMellinEvaluator::operator()(double z) const {
    if (!(z > 0.0)) throw std::invalid_argument("mellin_mmse: z must be > 0");
    if (z > 20.0) throw std::invalid_argument("mellin_mmse: z must be <= 20");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(z);
        if (it != cache_.end()) return it->second;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < rule_->nodes.size(); ++i) {
        if (!std::isfinite(log_mmse_[i])) continue;
        const double s = rule_->nodes[i];
        sum += std::exp(rule_->log_weights[i] + s + (z - 1.0) * std::log(s) + log_mmse_[i]);
    }
    const double value = std::pow(scale_, z) * sum;
    if (!(value > 0.0) || !std::isfinite(value))
        throw numerical_error("mellin_mmse: non-finite value at z=" + std::to_string(z));
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(z, value);
    return value;
}

namespace {

// Natural cubic spline second derivatives on a uniform grid.
std::vector<double> spline_second_derivs(const std::vector<double> &y, double h) {
    const std::size_t n = y.size();
    std::vector<double> y2(n, 0.0), u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double p = 0.5 * y2[i - 1] + 2.0;
        y2[i] = -0.5 / p;
        const double d2 = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h;
        u[i] = (3.0 * d2 / h - 0.5 * u[i - 1]) / p;
    }
    for (std::size_t k = n - 1; k-- > 1;) y2[k] = y2[k] * y2[k + 1] + u[k];
    return y2;
}

std::string constellation_key(const Constellation &c) {
    std::string key = c.label + "|";
    char buf[64];
    for (std::size_t g = 0; g < c.size(); ++g) {
        std::snprintf(buf, sizeof buf, "%a,%a,%a;", c.points[g].real(), c.points[g].imag(),
                      c.probs[g]);
        key += buf;
    }
    return key;
}

} // namespace

MiTable::MiTable(const Constellation &c, unsigned workers) {
    entropy_ = entropy_bits(c);
    gamma_lo_ = 1e-8;
    gamma_hi_ = 250.0; // MI is within ~1e-27 bits of the entropy beyond this
    ln_lo_ = std::log(gamma_lo_);
    ln_hi_ = std::log(gamma_hi_);
    const std::size_t n = static_cast<std::size_t>(std::ceil((ln_hi_ - ln_lo_) / 0.004)) + 1;
    step_ = (ln_hi_ - ln_lo_) / static_cast<double>(n - 1);
    y_.resize(n);
    parallel_for(n, workers, [&](std::size_t i) {
        y_[i] = mi_awgn(c, std::exp(ln_lo_ + static_cast<double>(i) * step_));
    });
    y2_ = spline_second_derivs(y_, step_);
}

double MiTable::operator()(double gamma) const {
    if (gamma <= 0.0) return 0.0;
    if (gamma >= gamma_hi_) return entropy_;
    if (gamma <= gamma_lo_) return y_.front() * (gamma / gamma_lo_);
    const double u = (std::log(gamma) - ln_lo_) / step_;
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= y_.size()) i = y_.size() - 2;
    const double b = u - static_cast<double>(i);
    const double a = 1.0 - b;
    const double val = a * y_[i] + b * y_[i + 1] +
                       ((a * a * a - a) * y2_[i] + (b * b * b - b) * y2_[i + 1]) *
                           (step_ * step_) / 6.0;
    return std::clamp(val, 0.0, entropy_);
}

std::shared_ptr<const MiTable> MiTable::shared(const Constellation &c, unsigned workers) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const MiTable>> cache;
    const std::string key = constellation_key(c);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const MiTable>(c, workers);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::move(table));
    return it->second;
}

} // namespace keyhole
