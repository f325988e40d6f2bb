#pragma once

// Hyperboloid (Minkowski) model glue, signature (+, +, -).
//
// Points of the upper half-plane lift to the upper sheet <X,X> = -1, x3 > 0;
// ideal points lift to lightlike rays; a geodesic is the zero set of a
// spacelike "polar" covector.  Everything the Dirichlet-domain code needs
// (bisectors, sides, vertices, circumcenters, feet of perpendiculars) is
// linear algebra here, and the Klein projection k = (x1/x3, x2/x3) turns
// halfplanes into literal Euclidean halfplane clips.

#include <array>
#include <cmath>
#include <optional>

#include "orthospec/errors.hpp"
#include "orthospec/geodesic.hpp"

namespace orthospec {

struct vec3 {
    double x{0}, y{0}, z{0};

    friend vec3 operator+(const vec3& a, const vec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend vec3 operator-(const vec3& a, const vec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend vec3 operator*(double s, const vec3& a) {
        return {s * a.x, s * a.y, s * a.z};
    }
};

inline double mdot(const vec3& a, const vec3& b) {
    return a.x * b.x + a.y * b.y - a.z * b.z;
}

// Minkowski cross product: <mcross(a,b), a> = <mcross(a,b), b> = 0.
inline vec3 mcross(const vec3& a, const vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
            -(a.x * b.y - a.y * b.x)};
}

// Point of the upper half-plane as (x, y), y > 0.
struct hpoint {
    double x{0}, y{1};
};

inline hpoint apply(const mat2& g, const hpoint& z) {
    // (a z + b) / (c z + d) on z = x + i y.
    const double nx = g.a * z.x + g.b, ny = g.a * z.y;
    const double dx = g.c * z.x + g.d, dy = g.c * z.y;
    const double den = dx * dx + dy * dy;
    return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

inline double dist(const hpoint& a, const hpoint& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * a.y * b.y));
}

inline vec3 lift(const hpoint& z) {
    const double r2 = z.x * z.x + z.y * z.y;
    return {z.x / z.y, (r2 - 1.0) / (2.0 * z.y), (r2 + 1.0) / (2.0 * z.y)};
}

// Back from the upper sheet: y = 1/(x3 - x2), x = x1 y.
inline hpoint unlift(const vec3& P) {
    const double y = 1.0 / (P.z - P.y);
    return {P.x * y, y};
}

// Lightlike lift of an ideal point (u : v); even in the sign of (u, v).
inline vec3 light(const boundary_point& p) {
    return {p.u * p.v, (p.u * p.u - p.v * p.v) / 2.0,
            (p.u * p.u + p.v * p.v) / 2.0};
}

inline double cosh_dist(const vec3& P, const vec3& Q) { return -mdot(P, Q); }

// Spacelike unit polar of an oriented geodesic; <Z, polar> = sinh of the
// signed distance from Z to the geodesic, positive on its left.
inline vec3 polar(const geodesic& g) {
    const vec3 w = mcross(light(g.p), light(g.q));
    const double n2 = mdot(w, w);
    if (!(n2 > 0.0))
        throw domain_error("polar: endpoints coincide");
    return (1.0 / std::sqrt(n2)) * w;
}

inline double signed_sinh_dist(const vec3& lifted_point, const vec3& pol) {
    return mdot(lifted_point, pol);
}

inline double dist_point_geodesic(const hpoint& z, const geodesic& g) {
    return std::asinh(std::abs(signed_sinh_dist(lift(z), polar(g))));
}

// Normalize a timelike vector onto the upper sheet.
inline std::optional<vec3> to_upper_sheet(const vec3& X) {
    const double n2 = mdot(X, X);
    if (!(n2 < 0.0)) return std::nullopt;
    vec3 P = (1.0 / std::sqrt(-n2)) * X;
    if (P.z < 0) P = -1.0 * P;
    return P;
}

inline hpoint midpoint(const hpoint& a, const hpoint& b) {
    const auto P = to_upper_sheet(lift(a) + lift(b));
    if (!P) throw construction_error("midpoint: degenerate pair");
    return unlift(*P);
}

// Circumcenter of three points (equidistant point), if the three lifts'
// difference plane has timelike complement; collinear configurations fail.
inline std::optional<hpoint> circumcenter(const hpoint& a, const hpoint& b,
                                          const hpoint& c) {
    const vec3 A = lift(a), B = lift(b), C = lift(c);
    const auto P = to_upper_sheet(mcross(A - B, B - C));
    if (!P) return std::nullopt;
    return unlift(*P);
}

// Foot on `axis` of the common perpendicular from `other` to `axis`.
// The perpendicular's polar spans the Minkowski complement of the two
// polars; the foot is the intersection point of perpendicular and axis.
inline hpoint perp_foot_on(const geodesic& axis_g, const geodesic& other) {
    const vec3 wa = polar(axis_g), wo = polar(other);
    const vec3 wp = mcross(wa, wo);  // polar of the common perpendicular
    const auto F = to_upper_sheet(mcross(wa, wp));
    if (!F)
        throw domain_error(
            "perp_foot_on: geodesics are not disjoint (no perpendicular)");
    return unlift(*F);
}

}  // namespace orthospec
