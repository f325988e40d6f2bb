#include "orthospec/surface.hpp"

#include <cmath>
#include <sstream>

#include "orthospec/ball.hpp"
#include "orthospec/errors.hpp"

namespace orthospec {

boundary_component make_boundary_component(const fuchsian_surface& s,
                                           const word& w,
                                           double spec_length) {
    boundary_component bc;
    bc.bword = w;
    bc.spec_length = spec_length;
    bc.holonomy = s.evaluate(w).canonical();
    if (classify(bc.holonomy) != isometry_kind::hyperbolic)
        throw construction_error(
            "boundary word does not evaluate to a hyperbolic isometry");
    bc.length = translation_length(bc.holonomy);
    bc.axis_g = axis(bc.holonomy);
    bc.to_std = normalizer_to_std(bc.axis_g);
    const hpoint z = apply(bc.to_std, s.base);
    bc.foot_origin = 0.5 * std::log(z.x * z.x + z.y * z.y);
    return bc;
}

std::optional<foot_info> foot_on_boundary(const boundary_component& bc,
                                          const geodesic& other) {
    // Map the component's axis to the imaginary axis; a geodesic disjoint
    // from it lands with both endpoints finite, nonzero and of equal sign.
    const boundary_point pu = apply(bc.to_std, other.p);
    const boundary_point qu = apply(bc.to_std, other.q);
    // u = pu.u/pu.v, v = qu.u/qu.v; need u v > 0 (same side).
    const double prod_num = pu.u * qu.u;
    const double prod_den = pu.v * qu.v;
    if (!(prod_num * prod_den > 0.0)) return std::nullopt;
    // Foot of the perpendicular from geodesic (u, v) to the imaginary axis
    // sits at height sqrt(u v); its axis coordinate is log of that.
    const double pos =
        0.5 * (std::log(std::abs(prod_num)) - std::log(std::abs(prod_den)));
    const double raw = pos - bc.foot_origin;
    const double turns = std::floor(raw / bc.length);
    double coord = raw - turns * bc.length;
    if (coord < 0) coord += bc.length;
    if (coord >= bc.length) coord = 0.0;  // floor boundary rounding
    // Side: sign of u + v = sign((pu.u qu.v + qu.u pu.v) / (pu.v qu.v)).
    const double side_num = pu.u * qu.v + qu.u * pu.v;
    const int side = (side_num * prod_den > 0) ? 1 : -1;
    return foot_info{coord, side,
                     static_cast<long>(std::llround(turns))};
}

double boundary_reach(const fuchsian_surface& s, int i) {
    const auto& bc = s.boundary[static_cast<size_t>(i)];
    return dist_point_geodesic(s.base, bc.axis_g) + bc.length / 2.0;
}

validation_report validate_surface(const fuchsian_surface& s,
                                   double probe_radius) {
    validation_report rep;
    auto fail = [&rep](const std::string& msg, double magnitude) {
        rep.pass = false;
        rep.failures.push_back(msg);
        if (magnitude > rep.worst_violation) rep.worst_violation = magnitude;
    };

    // Boundary words must be hyperbolic with the lengths the spec demands.
    for (size_t i = 0; i < s.boundary.size(); ++i) {
        const auto& bc = s.boundary[i];
        const mat2 h = s.evaluate(bc.bword);
        if (classify(h) != isometry_kind::hyperbolic) {
            fail("boundary word " + std::to_string(i) + " not hyperbolic",
                 1.0);
            continue;
        }
        const double err = std::abs(translation_length(h) - bc.spec_length);
        rep.worst_boundary_length_error =
            std::max(rep.worst_boundary_length_error, err);
        if (err > 1e-8)
            fail("boundary length mismatch on component " + std::to_string(i),
                 err);
    }
    if (!rep.pass) return rep;

    // Probe ball over the construction alphabet: no elliptics, and all
    // boundary-axis lifts pairwise disjoint (convex-core sides).
    const ball_t ball =
        raw_ball(s.alphabet, s.base, 2.0 * probe_radius, 400'000);
    std::vector<geodesic> lifts;
    for (std::size_t k = 0; k < ball.size(); ++k) {
        const mat2 g = ball.original(k);
        if (!g.is_identity(1e-9)) {
            const auto kind = classify(g, 1e-7);
            if (kind == isometry_kind::elliptic)
                fail("elliptic element in group ball (non-discrete?)",
                     std::abs(g.trace()));
        }
        if (ball.disp[k] <= std::cosh(probe_radius))
            for (const auto& bc : s.boundary)
                lifts.push_back(apply(g, bc.axis_g));
    }
    for (size_t x = 0; x < lifts.size(); ++x)
        for (size_t y = x + 1; y < lifts.size(); ++y) {
            const double n = std::abs(perp_invariant(lifts[x], lifts[y]));
            if (n < 1.0 - 1e-9)
                fail("boundary lifts cross (invariant " + std::to_string(n) +
                         ")",
                     1.0 - n);
        }
    return rep;
}

}  // namespace orthospec
