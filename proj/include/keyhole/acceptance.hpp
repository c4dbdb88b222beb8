// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_ACCEPTANCE_HPP
#define KEYHOLE_ACCEPTANCE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace keyhole {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Validation suite over the reference configuration (N_t = N_r = 2,
// m_t = 2, m_r = 3, 4-QAM, uniform inputs). `full` runs the desk-scale
// sample counts; quick scale shrinks the Monte Carlo sizes only — every
// tolerance stays the same.
struct AcceptanceOptions {
    bool full = true;
    unsigned workers = 0;
    std::uint64_t seed = 20240901;
};

// Runs all criteria, printing one pass/fail line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &opt, std::ostream &log);

inline bool all_passed(const std::vector<CriterionResult> &rs) {
    for (const auto &r : rs)
        if (!r.pass) return false;
    return true;
}

} // namespace keyhole

#endif
