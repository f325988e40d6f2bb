#pragma once

// Right-angled polygon trigonometry for pants and one-holed tori.

#include <cmath>

#include "orthospec/errors.hpp"

namespace orthospec {

// Hypotenuse-like fifth side of a right-angled pentagon with non-adjacent
// sides a, b: cosh c = sinh a sinh b.  Requires sinh a sinh b > 1 (else no
// such pentagon exists).
inline double pentagon_side(double a, double b) {
    if (a <= 0 || b <= 0)
        throw domain_error("pentagon_side: sides must be positive");
    const double p = std::sinh(a) * std::sinh(b);
    if (p <= 1.0)
        throw domain_error("pentagon_side: sinh(a) sinh(b) <= 1, degenerate");
    return std::acosh(p);
}

// Length of the arc tau' obtained from an arc tau of length t crossing a
// closed geodesic of length a once: cosh(t'/2) = 2 cosh(a/2) cosh(t/2).
inline double tau_prime_from_tau(double a, double t) {
    if (a <= 0) throw domain_error("tau_prime_from_tau: a must be positive");
    if (t < 0) throw domain_error("tau_prime_from_tau: t must be >= 0");
    return 2.0 * std::acosh(2.0 * std::cosh(a / 2.0) * std::cosh(t / 2.0));
}

// Upper bound for the cord of alpha across the gamma-pants:
// sinh(bound/2) = cosh(l_alpha/2) / sinh(l_gamma/4).
inline double cord_upper_bound(double l_alpha, double l_gamma) {
    if (l_alpha <= 0 || l_gamma <= 0)
        throw domain_error("cord_upper_bound: lengths must be positive");
    return 2.0 * std::asinh(std::cosh(l_alpha / 2.0) /
                            std::sinh(l_gamma / 4.0));
}

// Distance between the boundary geodesics of lengths l1 and l2 on
// pants(l1, l2, l3); right-angled hexagon relation in half-lengths:
//
//   cosh d = (cosh(l3/2) + cosh(l1/2) cosh(l2/2)) / (sinh(l1/2) sinh(l2/2)).
//
// Strictly increasing in l3; -> the pentagon degenerate case as l3 -> 0.
inline double pants_boundary_distance(double l1, double l2, double l3) {
    if (l1 <= 0 || l2 <= 0 || l3 <= 0)
        throw domain_error("pants_boundary_distance: lengths must be positive");
    const double num =
        std::cosh(l3 / 2.0) + std::cosh(l1 / 2.0) * std::cosh(l2 / 2.0);
    return std::acosh(num / (std::sinh(l1 / 2.0) * std::sinh(l2 / 2.0)));
}

// The simple ortho geodesic of the one-holed torus determines alpha:
// cosh(l_alpha/2) = sinh(t/2) sinh(l_gamma/4), where t is the shortest
// (non-crossing) ortho geodesic of the boundary gamma.
inline double alpha_from_simple_ortho(double t, double l_gamma) {
    if (t <= 0 || l_gamma <= 0)
        throw domain_error("alpha_from_simple_ortho: lengths must be positive");
    const double c = std::sinh(t / 2.0) * std::sinh(l_gamma / 4.0);
    if (c <= 1.0)
        throw insufficient_data_error(
            "alpha_from_simple_ortho: sinh(t/2) sinh(l_gamma/4) <= 1, "
            "inconsistent torus data");
    return 2.0 * std::acosh(c);
}

}  // namespace orthospec
