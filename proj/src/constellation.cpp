// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace keyhole {

Constellation make_constellation(std::vector<cplx> points, std::vector<double> probs,
                                 std::string label, bool *rescaled) {
    const std::size_t m = points.size();
    if (m < 2) throw std::invalid_argument("constellation needs at least 2 points");
    if (probs.empty()) probs.assign(m, 1.0 / static_cast<double>(m));
    if (probs.size() != m)
        throw std::invalid_argument("constellation: points/probs size mismatch");

    double psum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0) || !(p < 1.0 + 1e-15))
            throw std::invalid_argument("constellation: probabilities must lie in (0, 1)");
        psum += p;
    }
    if (std::abs(psum - 1.0) > 1e-6)
        throw std::invalid_argument("constellation: probabilities must sum to 1");
    for (double &p : probs) p /= psum;

    double power = 0.0;
    for (std::size_t g = 0; g < m; ++g) power += probs[g] * std::norm(points[g]);
    if (!(power > 0.0)) throw std::invalid_argument("constellation: zero average power");
    if (rescaled) *rescaled = std::abs(power - 1.0) > 1e-12;
    const double scale = 1.0 / std::sqrt(power);
    for (auto &x : points) x *= scale;

    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t h = g + 1; h < m; ++h)
            if (std::abs(points[g] - points[h]) < 1e-12)
                throw std::invalid_argument("constellation: points must be distinct");

    return Constellation{std::move(points), std::move(probs), std::move(label)};
}

Constellation make_qam(int m, std::optional<std::vector<double>> probs) {
    if (m != 4 && m != 16 && m != 64 && m != 256)
        throw std::invalid_argument("make_qam: M must be one of {4, 16, 64, 256}");
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    std::vector<cplx> pts;
    pts.reserve(m);
    for (int i = 0; i < side; ++i)
        for (int q = 0; q < side; ++q)
            pts.emplace_back(static_cast<double>(2 * i - side + 1),
                             static_cast<double>(2 * q - side + 1));
    return make_constellation(std::move(pts), probs.value_or(std::vector<double>{}),
                              std::to_string(m) + "-QAM");
}

Constellation make_bpsk() {
    return make_constellation({cplx(-1.0, 0.0), cplx(1.0, 0.0)}, {}, "BPSK");
}

double entropy_bits(const Constellation &c) {
    double h = 0.0;
    for (double p : c.probs) h -= p * std::log2(p);
    return h;
}

double min_distance(const Constellation &c) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < c.size(); ++g)
        for (std::size_t h = g + 1; h < c.size(); ++h)
            dmin = std::min(dmin, std::abs(c.points[g] - c.points[h]));
    return dmin;
}

double entropy_bits(const ProductConstellation &pc) {
    double h = 0.0;
    for (double p : pc.probs) h -= p * std::log2(p);
    return h;
}

void ProductConstellation::diff(std::size_t g, std::size_t gp, cplx *out) const {
    const cplx *a = point(g);
    const cplx *b = point(gp);
    for (int i = 0; i < streams; ++i) out[i] = a[i] - b[i];
}

ProductConstellation product(const Constellation &c, int n) {
    if (n < 1) throw std::invalid_argument("product: stream count must be >= 1");
    double total = 1.0;
    for (int i = 0; i < n; ++i) total *= static_cast<double>(c.size());
    if (total > 4096.0)
        throw std::invalid_argument("product: M^N exceeds the 4096-point guard");
    const std::size_t mn = static_cast<std::size_t>(total);

    ProductConstellation pc;
    pc.base = c;
    pc.streams = n;
    pc.points.resize(mn * static_cast<std::size_t>(n));
    pc.probs.assign(mn, 1.0);
    for (std::size_t g = 0; g < mn; ++g) {
        std::size_t rem = g;
        for (int i = 0; i < n; ++i) {
            const std::size_t digit = rem % c.size();
            rem /= c.size();
            pc.points[g * n + i] = c.points[digit];
            pc.probs[g] *= c.probs[digit];
        }
    }
    return pc;
}

Constellation constellation_from_json(const std::string &json_text, bool *rescaled) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("points") || !j["points"].is_array())
        throw std::invalid_argument("constellation JSON: missing \"points\" array");
    std::vector<cplx> pts;
    for (const auto &p : j["points"]) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("constellation JSON: each point must be [re, im]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    std::vector<double> probs;
    if (j.contains("probs")) probs = j["probs"].get<std::vector<double>>();
    std::string label = j.value("label", "custom");
    return make_constellation(std::move(pts), std::move(probs), std::move(label), rescaled);
}

Constellation constellation_from_spec(const std::string &spec, bool *rescaled) {
    if (rescaled) *rescaled = false;
    if (spec == "qam4") return make_qam(4);
    if (spec == "qam16") return make_qam(16);
    if (spec == "qam64") return make_qam(64);
    if (spec == "qam256") return make_qam(256);
    if (spec == "bpsk") return make_bpsk();
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("constellation spec '" + spec +
                                         "' is neither a known name nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    return constellation_from_json(ss.str(), rescaled);
}

} // namespace keyhole
