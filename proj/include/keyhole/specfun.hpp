// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_SPECFUN_HPP
#define KEYHOLE_SPECFUN_HPP

#include <vector>

namespace keyhole {

enum class QuadratureKind { laguerre, hermite };

// Nodes/weights of a Gaussian quadrature rule. log_weights stay finite at
// orders where the raw weights underflow (Laguerre beyond V ~ 180).
struct QuadratureRule {
    QuadratureKind kind;
    int order;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

// Gauss-Laguerre rule for weight e^{-x} on [0, inf), 1 <= order <= 256.
// Generated by the Golub-Welsch eigenvalue method on the symmetric Jacobi
// matrix; exact for polynomials of degree <= 2*order - 1.
const QuadratureRule &gauss_laguerre(int order);

// Gauss-Hermite rule (physicists' weight e^{-x^2} on R), 1 <= order <= 256.
// Nodes are symmetrized about 0 after the eigenvalue solve.
const QuadratureRule &gauss_hermite(int order);

// Modified Bessel function of the second kind K_nu(z) for real order,
// |nu| <= 60, z > 0. Uses K_nu = K_{-nu}; Temme's series for z <= 2 and
// Steed's continued fraction CF2 for z > 2, then upward recurrence in the
// order. Throws numerical_error if the result overflows a double.
double bessel_k(double nu, double z);

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Pochhammer symbol (z)_n evaluated as the product z (z+1) ... (z+n-1),
// which stays valid at the nonpositive arguments where the Gamma-ratio
// form is singular.
double pochhammer(double z, int n);

} // namespace keyhole

#endif
