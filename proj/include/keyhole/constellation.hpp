// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_CONSTELLATION_HPP
#define KEYHOLE_CONSTELLATION_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace keyhole {

using cplx = std::complex<double>;

// Finite input alphabet with its distribution, normalized to unit average
// power under that distribution.
struct Constellation {
    std::vector<cplx> points;
    std::vector<double> probs;
    std::string label;

    std::size_t size() const { return points.size(); }
};

// Validates, normalizes the probabilities to sum 1 and the points to unit
// average power. Sets *rescaled when the input points needed rescaling by
// more than 1e-12 relative.
Constellation make_constellation(std::vector<cplx> points, std::vector<double> probs,
                                 std::string label, bool *rescaled = nullptr);

// Square M-QAM grid, M in {4, 16, 64, 256}; probs default to uniform.
Constellation make_qam(int m, std::optional<std::vector<double>> probs = std::nullopt);

// BPSK {-1, +1}; handy smallest alphabet.
Constellation make_bpsk();

// Input entropy -sum p log2 p in bits.
double entropy_bits(const Constellation &c);

// Exact pairwise minimum distance min_{g != g'} |x_g - x_{g'}|.
double min_distance(const Constellation &c);

// N-fold i.i.d. product alphabet of M^N vector symbols, with the pairwise
// difference vectors used by the multi-stream machinery.
struct ProductConstellation {
    Constellation base;
    int streams = 1;                // N
    std::vector<cplx> points;       // M^N rows of length N, row-major
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    const cplx *point(std::size_t g) const { return points.data() + g * streams; }

    // b_{g,g'} = x_g - x_{g'} written into out[0..N).
    void diff(std::size_t g, std::size_t gp, cplx *out) const;

    // Calls fn(g, g', b) for every ordered pair g != g'.
    template <typename F>
    void for_each_pair(F &&fn) const {
        std::vector<cplx> b(streams);
        for (std::size_t g = 0; g < size(); ++g)
            for (std::size_t gp = 0; gp < size(); ++gp) {
                if (g == gp) continue;
                diff(g, gp, b.data());
                fn(g, gp, static_cast<const cplx *>(b.data()));
            }
    }

    std::size_t pair_count() const { return size() * (size() - 1); }
};

// Guard: m^n <= 4096.
ProductConstellation product(const Constellation &c, int n);

double entropy_bits(const ProductConstellation &pc);

// Parses {"points": [[re, im], ...], "probs": [...]} (probs optional =>
// uniform); normalizes to unit power, setting *rescaled if it had to.
Constellation constellation_from_json(const std::string &json_text, bool *rescaled = nullptr);

// Named constellation: qam4 / qam16 / qam64 / qam256 / bpsk, or a path to a
// JSON file with the schema above.
Constellation constellation_from_spec(const std::string &spec, bool *rescaled = nullptr);

} // namespace keyhole

#endif
