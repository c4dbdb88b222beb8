// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_EMI_MST_HPP
#define KEYHOLE_EMI_MST_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "keyhole/constellation.hpp"
#include "keyhole/emi_curve.hpp"
#include "keyhole/keyhole_channel.hpp"
#include "keyhole/simulate.hpp"

namespace keyhole {

enum class PrecoderScheme { uniform, mrt, max_dmin };

std::string to_string(PrecoderScheme s);

// N_t x N precoding matrix with tr(P P^H) = 1, row-major.
struct Precoder {
    PrecoderScheme scheme = PrecoderScheme::uniform;
    int n_t = 0;
    int streams = 0;
    std::vector<cplx> m;

    cplx at(int row, int col) const { return m[static_cast<std::size_t>(row) * streams + col]; }
    double trace_ppH() const;
};

Precoder uniform_precoder(int n_t);
Precoder mrt_precoder(const ChannelSample &ch);

// Best direction found for the rank-one max-d_min precoder
// P = h_t d*^H / ||h_t||.
struct DStarSolution {
    std::vector<cplx> vector;       // unit N-vector
    double achieved_min = 0.0;      // min_{g != g'} |d*^H b_{g,g'}|
    std::int64_t search_budget = 0; // objective evaluations spent
};

// Seeded multi-start random search on the complex unit sphere with local
// refinement; deterministic given the seed and cached per
// (constellation, N, budget, seed). Requires N <= 4 and budget >= 10^4.
DStarSolution solve_d_star(const ProductConstellation &pc, std::int64_t budget,
                           std::uint64_t seed);

Precoder max_dmin_precoder(const ChannelSample &ch, const DStarSolution &dstar);

// min_{g != g'} ||H P b_{g,g'}|| = ||h_r|| min |h_t^H P b_{g,g'}| for the
// keyhole factorization.
double d_min(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p);

// Conditional MI of y = sqrt(snr) H P x + n for one channel realization,
// estimated by Monte Carlo over the noise. The noise expectation is taken
// with the exponents referenced to ||n||^2, which reproduces the exact MI
// limits at snr = 0 and for a zero channel. Deterministic given
// (seed, stream_index).
double mi_mst(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p,
              double snr, std::int64_t noise_samples, std::uint64_t seed,
              std::uint64_t stream_index = 0, double *stderr_out = nullptr);

// Ergodic average of mi_mst over sampled channels; the MRT and max-d_min
// precoders are recomputed per realization; channel and noise substreams
// depend only on (seed, realization), so precoder schemes compared at the
// same seed see common random numbers.
EmiCurve emi_mst(const ProductConstellation &pc, const ChannelConfig &cfg, PrecoderScheme scheme,
                 std::vector<double> snr_db, std::int64_t realizations,
                 std::int64_t noise_samples, std::uint64_t seed, unsigned workers = 0,
                 std::int64_t dstar_budget = 20000);

// Appendix-style sandwich bounds on the MST MMSE from the pairwise distance
// spectrum d = ||H P b||^2: lower uses the tanh-Gaussian integral f_l
// (Gauss-Hermite after centering), upper uses f_u(x) = Q(sqrt(x/2)).
std::pair<double, double> mmse_bounds_mst(const ProductConstellation &pc,
                                          const ChannelSample &ch, const Precoder &p,
                                          double snr);

// The two kernel functions, exposed for the bound tests: f_l(0) = 1 and
// f_u(0) = 1/2 hold exactly.
double mmse_bound_fl(double x);
double mmse_bound_fu(double x);

// Monte Carlo estimate of the MST MMSE for one realization: the
// channel-output quantity E||H P (x - E[x|y])||^2 whose integral over the
// SNR gives the mutual information, estimated by the conditional mean over
// noise and symbol draws. (For the rank-one keyhole channel the raw input
// error E||x - xhat||^2 has an unobservable-subspace floor and is not the
// I-MMSE quantity.)
double mmse_mst_mc(const ProductConstellation &pc, const ChannelSample &ch, const Precoder &p,
                   double snr, std::int64_t samples, std::uint64_t seed,
                   std::uint64_t stream_index = 0, double *stderr_out = nullptr);

struct MstDiversityReport {
    EmiCurve curve;
    DiversityFit fit;
};

// Fits the high-SNR slope of log10(H - EMI) for the given precoder scheme
// over the deepest resolvable window of the given width.
MstDiversityReport mst_diversity_report(const ProductConstellation &pc, const ChannelConfig &cfg,
                                        PrecoderScheme scheme, std::vector<double> snr_db,
                                        std::int64_t realizations, std::int64_t noise_samples,
                                        std::uint64_t seed, double window_width_db = 8.0,
                                        unsigned workers = 0);

} // namespace keyhole

#endif
