// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cstring>
#include <iostream>
#include <string>

#include "keyhole/acceptance.hpp"

int main(int argc, char **argv) {
    keyhole::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") opt.full = false;
        else if (arg == "--full") opt.full = true;
        else if (arg == "--seed" && i + 1 < argc) opt.seed = std::stoull(argv[++i]);
        else if (arg == "--workers" && i + 1 < argc)
            opt.workers = static_cast<unsigned>(std::stoul(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--quick|--full] [--seed N] [--workers N]\n";
            return 2;
        }
    }
    const auto results = keyhole::run_acceptance(opt, std::cout);
    int failed = 0;
    for (const auto &r : results)
        if (!r.pass) ++failed;
    std::cout << (failed == 0 ? "all criteria passed"
                              : std::to_string(failed) + " criteria FAILED")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
