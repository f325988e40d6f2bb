#pragma once

// Ideal boundary points and geodesics of the upper half-plane.
//
// Boundary points are kept in homogeneous coordinates (u : v), x = u/v with
// infinity = (1 : 0).  Mobius actions become plain matrix-vector products and
// every formula below is a polynomial in the homogeneous coordinates, so no
// code path ever special-cases infinity or divides by a vanishing
// denominator.  The basic pairing is
//
//     D(p, q) := u_p v_q - u_q v_p,
//
// which scales bilinearly under rescaling of either point and picks up a
// factor det(g) = 1 when both points are moved by the same matrix.

#include <cmath>
#include <utility>

#include "orthospec/errors.hpp"
#include "orthospec/mat2.hpp"

namespace orthospec {

struct boundary_point {
    double u{0}, v{1};

    static boundary_point from_real(double x) { return normalized(x, 1.0); }
    static boundary_point infinity() { return {1.0, 0.0}; }

    bool is_infinity(double tol = 1e-15) const { return std::abs(v) <= tol; }

    // Affine coordinate; +-inf for the point at infinity.
    double value() const { return u / v; }

    // Scale to u^2 + v^2 = 1 with canonical sign (v > 0, or v == 0, u > 0).
    static boundary_point normalized(double u, double v) {
        double s = std::hypot(u, v);
        if (v < 0 || (v == 0 && u < 0)) s = -s;
        return {u / s, v / s};
    }
};

inline double D(const boundary_point& p, const boundary_point& q) {
    return p.u * q.v - q.u * p.v;
}

inline boundary_point apply(const mat2& g, const boundary_point& p) {
    return boundary_point::normalized(g.a * p.u + g.b * p.v,
                                      g.c * p.u + g.d * p.v);
}

// Cross ratio ((a-c)(b-d)) / ((a-d)(b-c)); homogeneous form
// D(a,c) D(b,d) / (D(a,d) D(b,c)) -- the v-factors cancel identically,
// so points at infinity need no special case.
inline double cross_ratio(const boundary_point& a, const boundary_point& b,
                          const boundary_point& c, const boundary_point& d) {
    const double den = D(a, d) * D(b, c);
    if (den == 0.0)
        throw domain_error("cross_ratio: degenerate quadruple (coincident points)");
    return (D(a, c) * D(b, d)) / den;
}

// Oriented geodesic with ideal endpoints p -> q.  For an axis, p is the
// repelling and q the attracting fixed point, so the orientation agrees
// with the translation direction of the isometry.
struct geodesic {
    boundary_point p, q;

    geodesic() = default;
    geodesic(boundary_point p_, boundary_point q_) : p(p_), q(q_) {}
    geodesic(double x, double y)
        : p(boundary_point::from_real(x)), q(boundary_point::from_real(y)) {}

    geodesic reversed() const { return {q, p}; }
};

inline geodesic apply(const mat2& g, const geodesic& a) {
    return {apply(g, a.p), apply(g, a.q)};
}

// Configuration invariant of two geodesics a = (p,q), b = (P,Q):
//
//     N = [D(p,Q)^2 D(q,P)^2 - D(p,P)^2 D(q,Q)^2] / [D(p,q)^2 D(P,Q)^2].
//
// |N| > 1: disjoint closures, |N| = cosh of the distance between them;
// |N| < 1: the geodesics cross;  |N| = 1: shared endpoint (asymptotic).
// Scale factors of all four homogeneous points cancel between numerator
// and denominator, and a joint Mobius move multiplies every D by det = 1.
inline double perp_invariant(const geodesic& a, const geodesic& b) {
    const double pQ = D(a.p, b.q), qP = D(a.q, b.p);
    const double pP = D(a.p, b.p), qQ = D(a.q, b.q);
    const double num = (pQ * qP) * (pQ * qP) - (pP * qQ) * (pP * qQ);
    const double den = D(a.p, a.q) * D(b.p, b.q);
    return num / (den * den);
}

enum class geodesic_relation { disjoint, crossing, asymptotic };

inline geodesic_relation relate(const geodesic& a, const geodesic& b,
                                double tol = 1e-12) {
    const double n = std::abs(perp_invariant(a, b));
    if (n > 1.0 + tol) return geodesic_relation::disjoint;
    if (n < 1.0 - tol) return geodesic_relation::crossing;
    return geodesic_relation::asymptotic;
}

// Distance between disjoint geodesics (length of the common perpendicular).
// Shared endpoints and crossings are distinct error conditions, not 0.
inline double geodesic_distance(const geodesic& a, const geodesic& b,
                                double tol = 1e-12) {
    const double n = std::abs(perp_invariant(a, b));
    if (n <= 1.0 - tol)
        throw intersecting_error("geodesic_distance: geodesics cross");
    if (n <= 1.0 + tol)
        throw asymptotic_error(
            "geodesic_distance: geodesics share an endpoint");
    return std::acosh(n);
}

// Unit-determinant matrix taking a.p -> 0 and a.q -> infinity (orientation
// preserving), so the geodesic becomes the upward-oriented imaginary axis.
// Rows (v_p, -u_p) and sigma (v_q, -u_q) kill p and q respectively; the
// sign sigma = sign D(p,q) and the 1/sqrt|D| scale make the determinant 1.
inline mat2 normalizer_to_std(const geodesic& a) {
    const double dpq = D(a.p, a.q);
    if (dpq == 0.0)
        throw domain_error("normalizer_to_std: endpoints coincide");
    const double s = 1.0 / std::sqrt(std::abs(dpq));
    const double sigma = std::copysign(1.0, dpq);
    return {a.p.v * s, -a.p.u * s, sigma * a.q.v * s, -sigma * a.q.u * s};
}

// Axis of a hyperbolic isometry, oriented repelling -> attracting.
// Eigenvectors of the positive-trace representative: the attracting fixed
// point is the eigenvector of the larger eigenvalue.
inline geodesic axis(const mat2& g_in) {
    const mat2 g = g_in.trace() < 0 ? g_in.negated() : g_in;
    const double tr = g.trace();
    if (tr <= 2.0)
        throw domain_error("axis: isometry is not hyperbolic");
    const double disc = std::sqrt(tr * tr - 4.0);
    const double lam_att = (tr + disc) / 2.0;  // > 1
    const double lam_rep = (tr - disc) / 2.0;  // < 1
    // Eigenvector for lambda: (b, lambda - a) or (lambda - d, c); pick the
    // better conditioned of the two rows.
    auto evec = [&](double lam) {
        const double n1 = std::hypot(g.b, lam - g.a);
        const double n2 = std::hypot(lam - g.d, g.c);
        if (n1 >= n2) return boundary_point::normalized(g.b, lam - g.a);
        return boundary_point::normalized(lam - g.d, g.c);
    };
    return {evec(lam_rep), evec(lam_att)};
}

}  // namespace orthospec
