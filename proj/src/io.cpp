// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "keyhole/io.hpp"

#include <cstdio>
#include <sstream>

namespace keyhole {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json curve_meta(const EmiCurve &curve, const std::string &command_line,
                          unsigned workers) {
    nlohmann::json meta;
    meta["tool"] = kToolVersion;
    meta["rng"] = kRngName;
    meta["command"] = command_line;
    meta["scheme"] = curve.scheme;
    meta["method"] = to_string(curve.method);
    meta["constellation"] = curve.constellation_label;
    meta["entropy_bits"] = curve.entropy_bits;
    meta["nt"] = curve.config.n_t;
    meta["nr"] = curve.config.n_r;
    meta["mt"] = curve.config.m_t;
    meta["mr"] = curve.config.m_r;
    meta["V"] = curve.quad_order;
    meta["realizations"] = curve.realizations;
    meta["noise_samples"] = curve.noise_samples;
    meta["seed"] = curve.seed;
    meta["workers"] = workers;
    return meta;
}

std::string curve_to_csv(const EmiCurve &curve, const std::string &command_line,
                         unsigned workers) {
    const nlohmann::json meta = curve_meta(curve, command_line, workers);
    std::ostringstream out;
    for (auto it = meta.begin(); it != meta.end(); ++it)
        out << "# " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump())
            << "\n";
    out << "snr_db,emi_bits,method,stderr\n";
    const bool mc = curve.method == EmiMethod::monte_carlo;
    for (std::size_t j = 0; j < curve.snr_db.size(); ++j) {
        out << format_double(curve.snr_db[j]) << "," << format_double(curve.emi_bits[j]) << ","
            << to_string(curve.method) << ",";
        if (mc && j < curve.stderr_bits.size()) out << format_double(curve.stderr_bits[j]);
        out << "\n";
    }
    return out.str();
}

nlohmann::json curve_to_json(const EmiCurve &curve, const std::string &command_line,
                             unsigned workers) {
    nlohmann::json j;
    j["meta"] = curve_meta(curve, command_line, workers);
    nlohmann::json rows = nlohmann::json::array();
    const bool mc = curve.method == EmiMethod::monte_carlo;
    for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
        nlohmann::json row;
        row["snr_db"] = curve.snr_db[i];
        row["emi_bits"] = curve.emi_bits[i];
        row["method"] = to_string(curve.method);
        if (mc && i < curve.stderr_bits.size()) row["stderr"] = curve.stderr_bits[i];
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

} // namespace keyhole
