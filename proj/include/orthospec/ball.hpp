#pragma once

// Group balls.  raw_ball is a pruned BFS over an arbitrary alphabet with no
// completeness claim of its own; group_ball and tube_ball are the certified
// operations built on top of the Dirichlet face pairings.
//
//   group_ball(R):  every g with d(o, g o) <= R.  Complete because BFS over
//     face pairings pruned at R + rho reaches every tile the geodesic from
//     o to g o crosses (each intermediate tile h D contains a point x of
//     that geodesic with x in the convex core, so d(o, h o) <= R + rho).
//
//   tube_ball(i, T): one representative of every coset <h_i> g with
//     d(axis_i, g o) <= T, where h_i is the boundary holonomy.  The prune
//     quantity d(axis_i, g o) is <h_i>-invariant, the tube around the axis
//     is convex, and a path from o to any admitted tile can be routed
//     perpendicular-to-axis / along-axis / axis-to-o, staying within
//     max(T, d(o, axis_i)) of the axis and inside the convex core; pruning
//     at that value + rho keeps every tile such a path crosses.  Working in
//     the boundary component's standard coordinates makes the slide
//     normalization an exact row scaling and keeps matrix entries bounded.
//
// Matrices are stored structure-of-arrays in basepoint-centered coordinates
// (o conjugated to i) so the displacement kernel applies directly; the
// accessors convert back to original coordinates.

#include <cstdint>
#include <vector>

#include "orthospec/kernels.hpp"
#include "orthospec/surface.hpp"

namespace orthospec {

struct ball_t {
    // Matrices in o-centered coordinates.
    std::vector<double> a, b, c, d;
    std::vector<double> disp;     // cosh d(o, g o)
    std::vector<int32_t> parent;  // BFS tree (index -1 at the root)
    std::vector<int16_t> let;     // alphabet letter applied to the parent
    mat2 conj, conj_inv;          // g_original = conj_inv * g_centered * conj
    bool truncated{false};        // element cap hit: results heuristic

    std::size_t size() const { return a.size(); }

    mat2 centered(std::size_t k) const {
        return {a[k], b[k], c[k], d[k]};
    }
    mat2 original(std::size_t k) const {
        return conj_inv * centered(k) * conj;
    }

    // Letter path from the root (reversed parent walk).
    word letters_of(std::size_t k) const;

    // Word over the construction alphabet: letter path with each letter
    // substituted by its expression, freely reduced.
    word word_of(std::size_t k, const std::vector<word>& letter_words) const;
};

// Pruned BFS; keeps every product whose displacement cosh is <= cosh(R)
// (NaN-safe: overflowing candidates are discarded, never retained).
ball_t raw_ball(const std::vector<mat2>& alphabet, const hpoint& base,
                double radius, std::size_t max_elements = 12'000'000);

// Certified ball of radius R (requires s.dirichlet); sorted canonically by
// (displacement, matrix entries of the sign-normalized original matrix).
// Throws insufficient_data_error if the element cap is hit.
struct group_ball_result {
    std::vector<mat2> elements;  // original coordinates, canonical sign
    std::vector<word> words;     // over the construction alphabet
};
group_ball_result group_ball(const fuchsian_surface& s, double R,
                             std::size_t max_elements = 12'000'000);

// Certified coset ball around boundary axis i (requires s.dirichlet): one
// slide-normalized representative of every coset <h_i> g whose tile center
// g o lies within distance T of the axis, sorted by (sinh of that distance,
// matrix entries).  sinh_dist[k] matches elements[k], so a prefix search
// gives all cosets within a smaller tube.  Throws insufficient_data_error
// if the element cap is hit.
struct tube_ball_result {
    std::vector<mat2> elements;  // original coordinates, canonical sign
    std::vector<double> sinh_dist;
};
tube_ball_result tube_ball(const fuchsian_surface& s, int i, double T,
                           std::size_t max_elements = 12'000'000);

// All distinct boundary-axis lifts g axis_i with g in the certified ball of
// radius R, deduplicated by unordered endpoint pairs (tol 1e-10).
struct boundary_lift {
    geodesic axis_g;
    int component;
    mat2 coset_rep;
};
std::vector<boundary_lift> boundary_lifts(const fuchsian_surface& s,
                                          double R);

}  // namespace orthospec
