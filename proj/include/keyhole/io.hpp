// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_IO_HPP
#define KEYHOLE_IO_HPP

#include <string>

#include <json.hpp>

#include "keyhole/emi_curve.hpp"

namespace keyhole {

inline constexpr const char *kToolVersion = "keyhole-emi 0.1.0";
inline constexpr const char *kRngName = "splitmix64-counter";

// Provenance block embedded in every emitted file; enough to re-run the
// exact command.
nlohmann::json curve_meta(const EmiCurve &curve, const std::string &command_line,
                          unsigned workers);

// CSV: leading '#'-prefixed provenance lines, a header row, then one row per
// SNR point with 17-significant-digit doubles; stderr is blank for analytic
// curves. JSON: {"meta": ..., "rows": [...]} with the same values.
std::string curve_to_csv(const EmiCurve &curve, const std::string &command_line,
                         unsigned workers);
nlohmann::json curve_to_json(const EmiCurve &curve, const std::string &command_line,
                             unsigned workers);

// Full-precision decimal form that round-trips to the same double.
std::string format_double(double v);

} // namespace keyhole

#endif
