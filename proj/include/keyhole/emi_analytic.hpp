// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_EMI_ANALYTIC_HPP
#define KEYHOLE_EMI_ANALYTIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "keyhole/constellation.hpp"
#include "keyhole/emi_curve.hpp"
#include "keyhole/keyhole_channel.hpp"
#include "keyhole/scalar_info.hpp"
#include "keyhole/simulate.hpp"

namespace keyhole {

// High-SNR law EMI ~ H - (G_a * snr)^{-G_d}.
struct AsymptoticCharacterization {
    double entropy = 0.0;        // H in bits
    double array_gain = 0.0;     // G_a
    double diversity_order = 0.0; // G_d
    std::string validity_note;
};

// Single-stream EMI without CSIT (uniform beamforming): nested Gauss-Laguerre
// over the receive-side Gamma density and the transmit-side expansion of
// f_B, with the scalar MI evaluated at 4 U snr t_k t_l / (m_r N_t).
// Requires integer m_t; V >= 8.
EmiCurve emi_sst_no_csit(const Constellation &c, const ChannelConfig &cfg,
                         std::vector<double> snr_db, int quad_order = 200,
                         unsigned workers = 0);

// Single-stream EMI with CSIT (MRT): double Gauss-Laguerre against the
// Gamma(N_r m_r) x Gamma(N_t m_t) kernels, scalar MI at snr t_k t_l/(m_r m_t).
// Any m_t, m_r >= 1/2; V >= 8.
EmiCurve emi_sst_csit(const Constellation &c, const ChannelConfig &cfg,
                      std::vector<double> snr_db, int quad_order = 200,
                      unsigned workers = 0);

// High-SNR law without CSIT: G_d = 1, array gain from the Mellin transform
// of the MMSE at z = 2. Requires integer m_t, N_r m_r > 1 and
// N_r m_r != h + 1 for every expansion power h.
AsymptoticCharacterization asymptotic_no_csit(const Constellation &c, const ChannelConfig &cfg);

// High-SNR law with CSIT: G_d = min{N_t m_t, N_r m_r}, array gain from the
// Mellin transform at z = G_d + 1. Requires N_t m_t != N_r m_r.
AsymptoticCharacterization asymptotic_csit(const Constellation &c, const ChannelConfig &cfg);

// Monte Carlo comparison of keyhole vs full-rank i.i.d. Rayleigh channels
// (m_t = m_r = 1): fitted high-SNR gap slopes for uniform beamforming and
// MRT/MRC on both channel models.
struct RankContrastReport {
    EmiCurve keyhole_csit, keyhole_no_csit, fullrank_csit, fullrank_no_csit;
    DiversityFit slope_keyhole_csit, slope_keyhole_no_csit;
    DiversityFit slope_fullrank_csit, slope_fullrank_no_csit;
    double window_lo_db = 0.0, window_hi_db = 0.0;
};

RankContrastReport rank_contrast_report(const Constellation &c, int n_t, int n_r,
                                        std::vector<double> snr_db, std::uint64_t seed,
                                        std::int64_t realizations = 100000,
                                        double window_lo_db = 10.0, double window_hi_db = 22.0,
                                        unsigned workers = 0);

} // namespace keyhole

#endif
