#pragma once

// Dirichlet domain certification at the basepoint.
//
// In basepoint-centered Klein coordinates every bisector and every boundary
// -axis lift is a straight chord, so the Dirichlet polygon intersected with
// the convex core is computed by convex halfplane clipping.  The face set
// consists of the group elements whose bisectors support edges; rho is the
// distance from the basepoint to the farthest vertex, which is exactly the
// covering radius the enumeration prune radii need.

#include "orthospec/surface.hpp"

namespace orthospec {

struct dirichlet_options {
    double initial_radius{0};      // 0: derive from the construction data
    int max_rounds{10};            // growth rounds before giving up
    std::size_t max_elements{4'000'000};
};

// Computes the certified face pairings and covering radius and stores them
// on the surface.  Throws certification_error if the polygon cannot be
// closed and stabilized within the option limits.
dirichlet_cert certify_dirichlet(fuchsian_surface& s,
                                 const dirichlet_options& opts = {});

// Contract operation: face pairings derived at the given probe radius with
// the +25% stability certificate.  Surface is not modified.
std::vector<mat2> dirichlet_face_pairings(const fuchsian_surface& s,
                                          double probe_radius);

}  // namespace orthospec
