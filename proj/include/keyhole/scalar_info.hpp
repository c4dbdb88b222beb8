// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_SCALAR_INFO_HPP
#define KEYHOLE_SCALAR_INFO_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "keyhole/constellation.hpp"
#include "keyhole/specfun.hpp"

namespace keyhole {

// Mutual information in bits of Y = sqrt(gamma) X + Z, Z ~ CN(0,1), X drawn
// from c. The complex-plane integral is evaluated as a tensor-product
// Gauss-Hermite rule; the order starts at hermite_order and doubles (up to
// 160 or 4x the start) until two successive orders agree within 1e-9 bits.
double mi_awgn(const Constellation &c, double gamma, int hermite_order = 40);

// Single fixed-order evaluation (used by the self-convergence tests).
double mi_awgn_fixed(const Constellation &c, double gamma, int hermite_order);

// MMSE of estimating X from Y = sqrt(t) X + Z, computed directly from the
// conditional mean E{|X - E[X|Y]|^2} by Gauss-Hermite quadrature over Y.
// Independent of the mi_awgn evaluation path.
double mmse_awgn(const Constellation &c, double t);

// Mellin transform M[mmse(t); z] = int_0^inf t^{z-1} mmse(t) dt, evaluated
// by Gauss-Laguerre after rescaling t so that the integrand decay matches
// the e^{-t} weight; weights are combined in the log domain. Evaluations
// are cached per z; the cache is thread-safe and transparent.
class MmseMellinEvaluator {
  public:
    explicit MmseMellinEvaluator(Constellation c, int laguerre_order = 200);

    double operator()(double z) const;
    const Constellation &constellation() const { return c_; }

  private:
    Constellation c_;
    const QuadratureRule *rule_;
    double scale_;                    // substitution t = scale * s
    std::vector<double> log_mmse_;    // ln mmse(scale * s_i), -inf if 0
    mutable std::mutex mu_;
    mutable std::map<double, double> cache_;
};

inline double mellin_mmse(const MmseMellinEvaluator &ev, double z) { return ev(z); }

// Cubic-spline table of mi_awgn on a log-SNR grid, shared by the quadrature
// and Monte Carlo EMI paths. Interpolation error is ~1e-12 bits, below every
// tolerance in the acceptance suite. Outside the grid the MI is pinned to
// its exact limits (linear in gamma at the bottom, the entropy at the top).
class MiTable {
  public:
    explicit MiTable(const Constellation &c, unsigned workers = 0);

    double operator()(double gamma) const;
    double entropy() const { return entropy_; }

    // Process-wide table cache keyed by constellation content.
    static std::shared_ptr<const MiTable> shared(const Constellation &c, unsigned workers = 0);

  private:
    double entropy_;
    double ln_lo_, ln_hi_, step_;
    double gamma_lo_, gamma_hi_;
    std::vector<double> y_;   // MI at grid points
    std::vector<double> y2_;  // spline second derivatives
};

} // namespace keyhole

#endif
