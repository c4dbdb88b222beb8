// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "keyhole/errors.hpp"
#include "keyhole/parallel.hpp"
#include "keyhole/scalar_info.hpp"

namespace keyhole {

std::string to_string(SstScheme s) {
    switch (s) {
    case SstScheme::sst_no_csit: return "sst-no-csit";
    case SstScheme::sst_csit: return "sst-csit";
    case SstScheme::gaussian_sst_no_csit: return "gaussian-sst-no-csit";
    case SstScheme::gaussian_sst_csit: return "gaussian-sst-csit";
    }
    return "?";
}

std::vector<double> snr_grid(double lo_db, double hi_db, double step_db) {
    if (!(step_db > 0.0) || hi_db < lo_db)
        throw std::invalid_argument("snr grid: need lo <= hi and step > 0");
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((hi_db - lo_db) / step_db + 1e-9)) + 1;
    grid.reserve(n);
    for (int i = 0; i < n; ++i) grid.push_back(lo_db + i * step_db);
    return grid;
}

std::string to_string(EmiMethod m) {
    switch (m) {
    case EmiMethod::analytic_quadrature: return "analytic-quadrature";
    case EmiMethod::monte_carlo: return "monte-carlo";
    case EmiMethod::asymptotic: return "asymptotic";
    }
    return "?";
}

EmiCurve emi_sst_mc(const SimulationPlan &plan) {
    if (plan.realizations < 1000)
        throw std::invalid_argument("simulation plan: realizations must be >= 1000");
    if (plan.snr_db.empty() || !std::is_sorted(plan.snr_db.begin(), plan.snr_db.end()))
        throw std::invalid_argument("simulation plan: SNR grid must be nonempty and sorted");
    make_config(plan.cfg.n_t, plan.cfg.n_r, plan.cfg.m_t, plan.cfg.m_r);

    const bool gaussian = plan.scheme == SstScheme::gaussian_sst_no_csit ||
                          plan.scheme == SstScheme::gaussian_sst_csit;
    const bool csit = plan.scheme == SstScheme::sst_csit ||
                      plan.scheme == SstScheme::gaussian_sst_csit;
    std::shared_ptr<const MiTable> mi;
    if (!gaussian) mi = MiTable::shared(plan.constellation, plan.workers);

    const std::size_t r = static_cast<std::size_t>(plan.realizations);
    const std::size_t p = plan.snr_db.size();
    std::vector<double> gamma(p);
    for (std::size_t j = 0; j < p; ++j) gamma[j] = db_to_linear(plan.snr_db[j]);

    std::vector<double> means, errs;
    chunked_mc_stats(
        r, p, plan.workers,
        [&](std::size_t i, double *vals) {
            const ChannelSample ch = sample_channel_at(plan.cfg, plan.seed, i);
            const double s = csit ? ch.norm_r_sq() * ch.norm_t_sq()
                                  : ch.norm_r_sq() * ch.sum_t_sq() / plan.cfg.n_t;
            for (std::size_t j = 0; j < p; ++j) {
                const double geff = gamma[j] * s;
                vals[j] = gaussian ? std::log2(1.0 + geff) : (*mi)(geff);
            }
        },
        means, errs);

    EmiCurve curve;
    curve.snr_db = plan.snr_db;
    curve.method = EmiMethod::monte_carlo;
    curve.scheme = to_string(plan.scheme);
    curve.constellation_label = gaussian ? "gaussian" : plan.constellation.label;
    curve.entropy_bits = gaussian ? std::numeric_limits<double>::infinity()
                                  : entropy_bits(plan.constellation);
    curve.config = plan.cfg;
    curve.realizations = plan.realizations;
    curve.seed = plan.seed;
    curve.emi_bits = std::move(means);
    curve.stderr_bits = std::move(errs);
    return curve;
}

DiversityFit fit_diversity(const EmiCurve &curve, double entropy, double lo_db, double hi_db) {
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < curve.snr_db.size(); ++j) {
        const double db = curve.snr_db[j];
        if (db < lo_db - 1e-9 || db > hi_db + 1e-9) continue;
        const double gap = entropy - curve.emi_bits[j];
        const double se = curve.stderr_bits.empty() ? 0.0 : curve.stderr_bits[j];
        if (!(gap > 0.0) || gap <= 10.0 * se)
            throw numerical_error("fit_diversity: gap not resolvable above stderr at " +
                                  std::to_string(db) + " dB");
        xs.push_back(db / 10.0); // log10 of linear SNR
        ys.push_back(std::log10(gap));
    }
    if (xs.size() < 4)
        throw numerical_error("fit_diversity: window holds fewer than 4 grid points");

    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12)
        throw numerical_error("fit_diversity: degenerate window");
    DiversityFit fit;
    fit.points = static_cast<int>(xs.size());
    fit.lo_db = lo_db;
    fit.hi_db = hi_db;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fitted = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - fitted) * (ys[i] - fitted);
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

DiversityFit fit_diversity_deepest(const EmiCurve &curve, double entropy, double width_db) {
    if (curve.snr_db.size() < 4)
        throw numerical_error("fit_diversity_deepest: curve has fewer than 4 points");
    for (std::size_t t = curve.snr_db.size(); t >= 4; --t) {
        const double hi = curve.snr_db[t - 1];
        try {
            return fit_diversity(curve, entropy, hi - width_db, hi);
        } catch (const numerical_error &) {
            // slide down one grid point and retry
        }
    }
    throw numerical_error("fit_diversity_deepest: no resolvable window of width " +
                          std::to_string(width_db) + " dB");
}

} // namespace keyhole
