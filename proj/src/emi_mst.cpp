// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/emi_mst.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>

#include "keyhole/errors.hpp"
#include "keyhole/parallel.hpp"
#include "keyhole/rng.hpp"
#include "keyhole/specfun.hpp"

namespace keyhole {

namespace {

constexpr double kLog2e = 1.44269504088896340735992468100;
constexpr double kSqrtPi = 1.77245385090551602729816748334;

} // namespace

std::string to_string(PrecoderScheme s) {
    switch (s) {
    case PrecoderScheme::uniform: return "uniform";
    case PrecoderScheme::mrt: return "mrt";
    case PrecoderScheme::max_dmin: return "max-dmin";
    }
    return "?";
}

double Precoder::trace_ppH() const {
    double t = 0.0;
    for (const auto &v : m) t += std::norm(v);
    return t;
}

Precoder uniform_precoder(int n_t) {
    if (n_t < 1) throw std::invalid_argument("uniform_precoder: N_t must be >= 1");
    Precoder p;
    p.scheme = PrecoderScheme::uniform;
    p.n_t = n_t;
    p.streams = n_t;
    p.m.assign(static_cast<std::size_t>(n_t) * n_t, cplx(0.0, 0.0));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_t));
    for (int a = 0; a < n_t; ++a) p.m[static_cast<std::size_t>(a) * n_t + a] = scale;
    return p;
}

Precoder mrt_precoder(const ChannelSample &ch) {
    const int n_t = static_cast<int>(ch.h_t.size());
    const int n_r = static_cast<int>(ch.h_r.size());
    const double tr = ch.norm_r_sq() * ch.norm_t_sq(); // tr(H^H H) for H = h_r h_t^H
    if (!(tr > 0.0)) throw std::invalid_argument("mrt_precoder: zero channel");
    const double scale = 1.0 / std::sqrt(tr);
    Precoder p;
    p.scheme = PrecoderScheme::mrt;
    p.n_t = n_t;
    p.streams = n_r;
    p.m.resize(static_cast<std::size_t>(n_t) * n_r);
    for (int a = 0; a < n_t; ++a)
        for (int j = 0; j < n_r; ++j)
            p.m[static_cast<std::size_t>(a) * n_r + j] = scale * ch.h_t[a] * std::conj(ch.h_r[j]);
    return p;
}

Precoder max_dmin_precoder(const ChannelSample &ch, const DStarSolution &dstar) {
    const int n_t = static_cast<int>(ch.h_t.size());
    const int n = static_cast<int>(dstar.vector.size());
    const double nrm = std::sqrt(ch.norm_t_sq());
    if (!(nrm > 0.0)) throw std::invalid_argument("max_dmin_precoder: zero channel");
    Precoder p;
    p.scheme = PrecoderScheme::max_dmin;
    p.n_t = n_t;
    p.streams = n;
    p.m.resize(static_cast<std::size_t>(n_t) * n);
    for (int a = 0; a < n_t; ++a)
        for (int j = 0; j < n; ++j)
            p.m[static_cast<std::size_t>(a) * n + j] = ch.h_t[a] * std::conj(dstar.vector[j]) / nrm;
    return p;
}

namespace {

// min over ordered pairs of |x^H b_{g,g'}|.
double dstar_objective(const ProductConstellation &pc, const std::vector<cplx> &x) {
    double best = std::numeric_limits<double>::infinity();
    pc.for_each_pair([&](std::size_t, std::size_t, const cplx *b) {
        cplx s(0.0, 0.0);
        for (int j = 0; j < pc.streams; ++j) s += std::conj(x[j]) * b[j];
        best = std::min(best, std::abs(s));
    });
    return best;
}

void normalize(std::vector<cplx> &x) {
    double n = 0.0;
    for (const auto &v : x) n += std::norm(v);
    n = std::sqrt(n);
    for (auto &v : x) v /= n;
}

std::string product_key(const ProductConstellation &pc) {
    std::string key = pc.base.label + "|" + std::to_string(pc.streams) + "|";
    char buf[80];
    for (std::size_t g = 0; g < pc.base.size(); ++g) {
        std::snprintf(buf, sizeof buf, "%a,%a,%a;", pc.base.points[g].real(),
                      pc.base.points[g].imag(), pc.base.probs[g]);
        key += buf;
    }
    return key;
}

} // namespace

DStarSolution solve_d_star(const ProductConstellation &pc, std::int64_t budget,
                           std::uint64_t seed) {
    if (pc.streams > 4) throw std::invalid_argument("solve_d_star: N must be <= 4");
    if (budget < 10000) throw std::invalid_argument("solve_d_star: budget must be >= 10^4");

    static std::mutex cache_mu;
    static std::map<std::string, DStarSolution> cache;
    const std::string key =
        product_key(pc) + std::to_string(budget) + "|" + std::to_string(seed);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const int n = pc.streams;
    SplitMix64 rng(seed, 4);
    std::int64_t evals = 0;
    DStarSolution best;
    best.achieved_min = -1.0;

    auto consider = [&](const std::vector<cplx> &x) {
        const double val = dstar_objective(pc, x);
        ++evals;
        if (val > best.achieved_min) {
            best.achieved_min = val;
            best.vector = x;
        }
        return val;
    };

    // deterministic candidates first
    std::vector<cplx> x(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    consider(x);
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> e(n, cplx(0.0, 0.0));
        e[j] = 1.0;
        consider(e);
    }

    while (evals < budget) {
        for (auto &v : x) v = rng.next_cnormal();
        normalize(x);
        double cur = consider(x);
        std::vector<cplx> prop(n);
        double sigma = 0.4;
        int stall = 0;
        while (evals < budget && sigma > 1e-5) {
            for (int j = 0; j < n; ++j) prop[j] = x[j] + sigma * rng.next_cnormal();
            normalize(prop);
            const double val = consider(prop);
            if (val > cur) {
                cur = val;
                x = prop;
                stall = 0;
            } else if (++stall >= 24) {
                sigma *= 0.5;
                stall = 0;
            }
        }
    }
    best.search_budget = evals;
    if (!(best.achieved_min > 0.0))
        throw numerical_error("solve_d_star: search found no direction with positive margin");

    std::lock_guard<std::mutex> lock(cache_mu);
    cache.emplace(key, best);
    return best;
}

namespace {

// Scalars s_{g,g'} = h_t^H P b_{g,g'} for all ordered pairs, grouped by g.
struct PairTable {
    int mn = 0;                     // M^N
    std::vector<cplx> s;            // (mn-1) entries per g, g' in row order skipping g
    std::vector<double> ln_q_ratio; // ln(q_{g'}/q_g), same layout
};

PairTable build_pair_table(const ProductConstellation &pc, const ChannelSample &ch,
                           const Precoder &p) {
    const int n = pc.streams;
    const int n_t = static_cast<int>(ch.h_t.size());
    if (p.n_t != n_t || p.streams != n)
        throw std::invalid_argument("mi_mst: precoder dimensions do not match channel/alphabet");

    std::vector<cplx> row(n, cplx(0.0, 0.0)); // h_t^H P
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n_t; ++a) row[j] += std::conj(ch.h_t[a]) * p.at(a, j);

    PairTable t;
    t.mn = static_cast<int>(pc.size());
    t.s.reserve(static_cast<std::size_t>(t.mn) * (t.mn - 1));
    t.ln_q_ratio.reserve(t.s.capacity());
    std::vector<cplx> b(n);
    for (int g = 0; g < t.mn; ++g)
        for (int gp = 0; gp < t.mn; ++gp) {
            if (gp == g) continue;
            pc.diff(g, gp, b.data());
            cplx s(0.0, 0.0);
            for (int j = 0; j < n; ++j) s += row[j] * b[j];
            t.s.push_back(s);
            t.ln_q_ratio.push_back(std::log(pc.probs[gp] / pc.probs[g]));
        }
    return t;
}

} // namespace

double d_min(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p) {
    const PairTable t = build_pair_table(pc, ch, p);
    double best = std::numeric_limits<double>::infinity();
    for (const auto &s : t.s) best = std::min(best, std::abs(s));
    return std::sqrt(ch.norm_r_sq()) * best;
}

double mi_mst(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p,
              double snr, std::int64_t noise_samples, std::uint64_t seed,
              std::uint64_t stream_index, double *stderr_out) {
    if (snr < 0.0) throw std::invalid_argument("mi_mst: snr must be >= 0");
    if (noise_samples < 1000)
        throw std::invalid_argument("mi_mst: noise_samples must be >= 10^3");

    const PairTable t = build_pair_table(pc, ch, p);
    const double entropy = entropy_bits(pc);
    const double a = ch.norm_r_sq();
    const double sq_snr = std::sqrt(snr);

    double smax_sq = 0.0;
    for (const auto &s : t.s) smax_sq = std::max(smax_sq, std::norm(s));
    if (snr * smax_sq * a == 0.0) return 0.0; // nothing is conveyed, exactly

    // Exponent of pair p at noise nu: const_c[p] + Re(conj(lin[p]) nu).
    const std::size_t np = t.s.size();
    std::vector<double> const_c(np), lin_re(np), lin_im(np);
    std::vector<char> active(np);
    for (std::size_t i = 0; i < np; ++i) {
        const double ssq = std::norm(t.s[i]);
        const_c[i] = t.ln_q_ratio[i] - snr * ssq * a;
        lin_re[i] = -2.0 * sq_snr * t.s[i].real();
        lin_im[i] = -2.0 * sq_snr * t.s[i].imag();
        // 6-sigma reach of the linear term; below that the pair never
        // contributes above e^-50 against the g'=g anchor at 0.
        const double reach = 6.0 * std::sqrt(2.0 * snr * ssq * a);
        active[i] = (const_c[i] + reach > -50.0) ? 1 : 0;
    }

    const int n_r = static_cast<int>(ch.h_r.size());
    const int per_g = t.mn - 1;
    SplitMix64 rng(seed, stream_id(stream_index, 2));
    std::vector<double> sample_t(static_cast<std::size_t>(noise_samples));
    std::vector<cplx> noise(n_r);
    for (std::int64_t sidx = 0; sidx < noise_samples; ++sidx) {
        for (int i = 0; i < n_r; ++i) noise[i] = rng.next_cnormal();
        cplx nu(0.0, 0.0);
        for (int i = 0; i < n_r; ++i) nu += std::conj(ch.h_r[i]) * noise[i];
        const double nr = nu.real(), ni = nu.imag();
        double total = 0.0; // sum_g q_g log2(...)
        for (int g = 0; g < t.mn; ++g) {
            const std::size_t base = static_cast<std::size_t>(g) * per_g;
            double emax = 0.0; // the g'=g term
            for (int i = 0; i < per_g; ++i) {
                const std::size_t k = base + i;
                if (!active[k]) continue;
                const double e = const_c[k] + lin_re[k] * nr + lin_im[k] * ni;
                if (e > emax) emax = e;
            }
            double sum = std::exp(-emax);
            for (int i = 0; i < per_g; ++i) {
                const std::size_t k = base + i;
                if (!active[k]) continue;
                sum += std::exp(const_c[k] + lin_re[k] * nr + lin_im[k] * ni - emax);
            }
            total += pc.probs[g] * (emax + std::log(sum));
        }
        sample_t[static_cast<std::size_t>(sidx)] = total * kLog2e;
    }
    auto [mean, se] = mean_stderr(sample_t);
    if (stderr_out) *stderr_out = se;
    return entropy - mean;
}

EmiCurve emi_mst(const ProductConstellation &pc, const ChannelConfig &cfg, PrecoderScheme scheme,
                 std::vector<double> snr_db, std::int64_t realizations,
                 std::int64_t noise_samples, std::uint64_t seed, unsigned workers,
                 std::int64_t dstar_budget) {
    make_config(cfg.n_t, cfg.n_r, cfg.m_t, cfg.m_r);
    if (realizations < 1) throw std::invalid_argument("emi_mst: realizations must be >= 1");
    if (scheme == PrecoderScheme::uniform && pc.streams != cfg.n_t)
        throw std::invalid_argument("emi_mst: uniform precoding requires N = N_t");
    if (scheme == PrecoderScheme::mrt && pc.streams != cfg.n_r)
        throw std::invalid_argument("emi_mst: MRT precoding requires N = N_r");

    DStarSolution dstar;
    if (scheme == PrecoderScheme::max_dmin) dstar = solve_d_star(pc, dstar_budget, seed);
    const Precoder uni = uniform_precoder(cfg.n_t);

    const std::size_t r = static_cast<std::size_t>(realizations);
    const std::size_t np = snr_db.size();
    std::vector<double> gamma(np);
    for (std::size_t j = 0; j < np; ++j) gamma[j] = db_to_linear(snr_db[j]);

    std::vector<double> means, errs;
    chunked_mc_stats(
        r, np, workers,
        [&](std::size_t i, double *vals) {
            const ChannelSample ch = sample_channel_at(cfg, seed, i);
            Precoder p;
            switch (scheme) {
            case PrecoderScheme::uniform: p = uni; break;
            case PrecoderScheme::mrt: p = mrt_precoder(ch); break;
            case PrecoderScheme::max_dmin: p = max_dmin_precoder(ch, dstar); break;
            }
            for (std::size_t j = 0; j < np; ++j)
                vals[j] = mi_mst(pc, ch, p, gamma[j], noise_samples, seed, i);
        },
        means, errs);

    EmiCurve curve;
    curve.snr_db = std::move(snr_db);
    curve.method = EmiMethod::monte_carlo;
    curve.scheme = "mst-" + to_string(scheme);
    curve.constellation_label = pc.base.label + "^" + std::to_string(pc.streams);
    curve.entropy_bits = entropy_bits(pc);
    curve.config = cfg;
    curve.realizations = realizations;
    curve.noise_samples = noise_samples;
    curve.seed = seed;
    curve.emi_bits.resize(np);
    curve.stderr_bits = std::move(errs);
    for (std::size_t j = 0; j < np; ++j)
        curve.emi_bits[j] = std::clamp(means[j], 0.0, curve.entropy_bits);
    return curve;
}

double mmse_bound_fl(double x) {
    if (x < 0.0) throw std::invalid_argument("mmse_bound_fl: x must be >= 0");
    const QuadratureRule &rule = gauss_hermite(64);
    const double sq = std::sqrt(x);
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i)
        acc += rule.weights[i] * std::tanh(sq * rule.nodes[i] + 0.5 * x);
    return std::clamp(1.0 - acc / kSqrtPi, 0.0, 1.0);
}

double mmse_bound_fu(double x) {
    if (x < 0.0) throw std::invalid_argument("mmse_bound_fu: x must be >= 0");
    return 0.5 * std::erfc(0.5 * std::sqrt(x));
}

std::pair<double, double> mmse_bounds_mst(const ProductConstellation &pc,
                                          const ChannelSample &ch, const Precoder &p,
                                          double snr) {
    if (snr < 0.0) throw std::invalid_argument("mmse_bounds_mst: snr must be >= 0");
    const PairTable t = build_pair_table(pc, ch, p);
    const double a = ch.norm_r_sq();
    const double mn = static_cast<double>(t.mn);
    double lower = 0.0, upper = 0.0;
    for (const auto &s : t.s) {
        const double d = a * std::norm(s); // ||H P b||^2
        lower += d / (4.0 * mn) * mmse_bound_fl(snr * d) / (mn - 1.0);
        upper += d / mn * mmse_bound_fu(snr * d);
    }
    return {lower, upper};
}

double mmse_mst_mc(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p,
                   double snr, std::int64_t samples, std::uint64_t seed,
                   std::uint64_t stream_index, double *stderr_out) {
    if (samples < 100) throw std::invalid_argument("mmse_mst_mc: samples must be >= 100");
    const PairTable t = build_pair_table(pc, ch, p);
    const double a = ch.norm_r_sq();
    const double sq_snr = std::sqrt(snr);
    const int n_r = static_cast<int>(ch.h_r.size());
    const int per_g = t.mn - 1;

    std::vector<double> cdf(pc.size());
    double run = 0.0;
    for (std::size_t g = 0; g < pc.size(); ++g) {
        run += pc.probs[g];
        cdf[g] = run;
    }

    SplitMix64 rng(seed, stream_id(stream_index, 5));
    std::vector<double> errs(static_cast<std::size_t>(samples));
    std::vector<cplx> noise(n_r);
    std::vector<double> w(static_cast<std::size_t>(t.mn));
    for (std::int64_t sidx = 0; sidx < samples; ++sidx) {
        const double u = rng.next_double();
        std::size_t g = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        if (g >= pc.size()) g = pc.size() - 1;
        for (int i = 0; i < n_r; ++i) noise[i] = rng.next_cnormal();
        cplx nu(0.0, 0.0);
        for (int i = 0; i < n_r; ++i) nu += std::conj(ch.h_r[i]) * noise[i];

        // posterior log-weights relative to ||n||^2; the g'=g entry is ln q_g
        double emax = std::log(pc.probs[g]);
        w.assign(static_cast<std::size_t>(t.mn), 0.0);
        w[g] = emax;
        const std::size_t base = static_cast<std::size_t>(g) * per_g;
        int idx = 0;
        for (int gp = 0; gp < t.mn; ++gp) {
            if (static_cast<std::size_t>(gp) == g) continue;
            const cplx s = t.s[base + idx];
            ++idx;
            const double e = std::log(pc.probs[gp]) - 2.0 * sq_snr * (std::conj(s) * nu).real() -
                             snr * std::norm(s) * a;
            w[gp] = e;
            emax = std::max(emax, e);
        }
        // output-domain error ||H P (x - xhat)||^2 = A |sum w s_{g,g'}|^2,
        // using row (x_g - x_{g'}) = s_{g,g'}
        double den = 0.0;
        cplx proj(0.0, 0.0);
        idx = 0;
        for (int gp = 0; gp < t.mn; ++gp) {
            const double wp = std::exp(w[gp] - emax);
            den += wp;
            if (static_cast<std::size_t>(gp) == g) continue;
            proj += wp * t.s[base + idx];
            ++idx;
        }
        errs[static_cast<std::size_t>(sidx)] = a * std::norm(proj / den);
    }
    auto [mean, se] = mean_stderr(errs);
    if (stderr_out) *stderr_out = se;
    return mean;
}

MstDiversityReport mst_diversity_report(const ProductConstellation &pc, const ChannelConfig &cfg,
                                        PrecoderScheme scheme, std::vector<double> snr_db,
                                        std::int64_t realizations, std::int64_t noise_samples,
                                        std::uint64_t seed, double window_width_db,
                                        unsigned workers) {
    MstDiversityReport rep;
    rep.curve = emi_mst(pc, cfg, scheme, std::move(snr_db), realizations, noise_samples, seed,
                        workers);
    rep.fit = fit_diversity_deepest(rep.curve, rep.curve.entropy_bits, window_width_db);
    return rep;
}

} // namespace keyhole
