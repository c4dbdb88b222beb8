// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_ERRORS_HPP
#define KEYHOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace keyhole {

// Raised when a computation degrades numerically (cancellation blowup,
// overflow in a special-function recurrence, unresolvable fit window).
// Precondition violations use std::invalid_argument instead.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string &what) : std::runtime_error(what) {}
};

} // namespace keyhole

#endif
