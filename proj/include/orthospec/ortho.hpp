#pragma once

// Certified spectrum enumeration.
//
// Ortho spectrum.  Entries are indexed by double cosets <h_i> g <h_j> of
// boundary stabilizers (ordered pair (i, j); the identity coset is excluded
// when i = j), one entry per coset with perpendicular length <= L between
// axis(h_i) and g axis(h_j) g^-1.  The ORDERED convention is the one under
// which the Basmajian partial sums converge to the full perimeter and the
// per-boundary sums (grouped by the first index) converge to the component
// lengths; an unordered count converges to half of those.  Each unoriented
// arc therefore appears twice, as (i, j) and as (j, i) with the feet
// swapped.
//
// Canonical double-coset representative: the unique g in the coset whose
// feet lie in the fundamental windows [0, len_i) x [0, len_j) of both
// boundary components (sliding by h_i^a shifts the i-foot by a len_i and
// fixes the arc; likewise h_j^b on the right), i.e.
// g_canon = h_i^{-turns_i} g h_j^{+turns_j} for the turns reported by
// foot_on_boundary.
//
// Completeness certificate: lifts of axis_j at perpendicular distance <= L
// from axis_i, slid so the i-foot lies within a half-period of the
// basepoint's own foot, stay within
//     T = L + max(2 max_i d(o, axis_i), max_i [d(o, axis_i) + len_i / 2])
// of the basepoint; tube_ball(j, T) is certified complete for that set, and
// T dominates the coarse bound L + 2 max d(o, axis_i) the certificate
// quotes.

#include <cstdint>
#include <vector>

#include "orthospec/ball.hpp"
#include "orthospec/surface.hpp"

namespace orthospec {

struct ortho_entry {
    double length{0};
    int i{0}, j{0};       // ordered boundary component pair
    double foot_i{0};     // arc-length foot positions, in [0, len)
    double foot_j{0};
    mat2 representative;  // canonical double-coset representative
};

struct spectrum_certificate {
    bool certified{false};
    double ball_radius{0};  // tube radius T used by the enumeration
};

struct ortho_spectrum_t {
    std::vector<ortho_entry> entries;  // sorted by (length, i, j, foot_i)
    double cutoff{0};
    spectrum_certificate certificate;
    std::string fingerprint;  // hash of the originating surface spec

    std::size_t size() const { return entries.size(); }
};

struct ortho_options {
    // Tolerances for recognizing two candidate lifts as the same double
    // coset: equal length, equal i-foot (circularly), equal side.
    double length_tol{1e-8};
    double foot_tol{1e-6};
    std::size_t max_elements{12'000'000};
    // When the certified tube radius would exceed the element cap, fail
    // (default) rather than return a heuristic, unless allowed here.
    bool allow_heuristic{false};
};

// Surface fingerprint: FNV-1a of the canonical spec JSON, hex-encoded.
std::string surface_fingerprint(const fuchsian_surface& s);

ortho_spectrum_t ortho_spectrum(const fuchsian_surface& s, double L,
                                const ortho_options& opts = {});

// Closed geodesics: one entry per conjugacy class of hyperbolic elements
// with translation length <= L.  Words over the construction alphabet are
// exact (the group is free), so conjugacy deduplication is exact: cyclic
// reduction + minimal rotation, identifying a class with its inverse.
struct closed_geodesic {
    double length{0};
    bool primitive{true};
    word cls;  // conjugacy canonical form
};

std::vector<closed_geodesic> closed_geodesics(
    const fuchsian_surface& s, double L,
    std::size_t max_elements = 12'000'000);

// Shortest closed geodesic: minimum of closed_geodesics(s, L) for the
// smallest L <= L_max (over a fixed growth schedule) with a nonempty
// result.  Throws insufficient_data_error if empty up to L_max.
double systole(const fuchsian_surface& s, double L_max);

}  // namespace orthospec
