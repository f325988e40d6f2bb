#pragma once

// Spectrum post-processing: gap statistics, growth exponents, packing
// radii, inverse problems.

#include <cstddef>
#include <string>
#include <vector>

#include "orthospec/ortho.hpp"
#include "orthospec/surface.hpp"

namespace orthospec {

// Smallest ratio cosh(y/2) / cosh(x/2) over pairs x < y of distinct values
// (tolerance 1e-9) at most `cutoff`.  Returns +infinity when fewer than
// two distinct values survive.  The all-pairs infimum equals the minimum
// over consecutive distinct values; `consecutive` selects that explicit
// variant.
double granulosity(const std::vector<double>& lengths, double cutoff,
                   bool consecutive = false);

// Partial Poincare series: sum of exp(-h l) over the entries.
double poincare_partial(const std::vector<double>& lengths, double h);

struct exponent_fit {
    double estimate{0};
    double amplitude{0};  // e^intercept: N ~ amplitude * e^(estimate * x)
    double window_lo{0};
    double window_hi{0};
    double residual{0};   // max |log count - fit| over the window
    std::string method;
};

// Growth exponent of the ortho counting function, fitted as the slope of
// log N(L) against L over the largest trailing window of integer cutoffs
// whose local slopes agree within 10%.  Requires at least four usable
// cutoffs (counts >= 5); throws insufficient_data_error otherwise.
exponent_fit ortho_exponent(const ortho_spectrum_t& sp);

// Independent estimate: the abscissa h at which the increments of the
// partial Poincare series over the last two unit windows balance.
exponent_fit divergence_exponent(const ortho_spectrum_t& sp);

// Boundary-lift intervals seen from the first boundary component: map its
// axis to the geodesic (-1, 1); every other lift of a boundary axis within
// ball radius R lands (after at most one global flip) as a geodesic over
// an interval of [-1, 1].  radius = half the interval, perp_length = the
// distance from the reference axis to the lift.
struct interval_radius {
    double center{0};
    double radius{0};
    double perp_length{0};
    int component{0};
};

std::vector<interval_radius> boundary_interval_radii(
    const fuchsian_surface& s, double R);

// Packing exponent: slope of log(count of radii >= r) against -log r over
// the largest coherent window, same windowing as ortho_exponent.  Requires
// >= 50 radii and a genuinely decaying radius distribution; throws
// insufficient_data_error otherwise.
exponent_fit packing_exponent(const std::vector<interval_radius>& radii);
exponent_fit packing_exponent(std::vector<double> radii);

// Ortho-isospectrality comparison at the common cutoff.  Entries within
// `tol` of the common cutoff are ignored so cutoff-boundary jitter cannot
// flip the count comparison.
struct spectra_comparison {
    bool isospectral{false};
    double common_cutoff{0};
    std::size_t count_a{0}, count_b{0};
    double max_discrepancy{0};    // only meaningful when counts match
    std::ptrdiff_t first_index{-1};  // first sorted index past tol, or -1
    double first_a{0}, first_b{0};
};

spectra_comparison compare_spectra(const ortho_spectrum_t& a,
                                   const ortho_spectrum_t& b, double tol);

// One-holed torus parameters recovered from an ortho spectrum.
struct torus_params {
    double l_gamma{0};
    double l_alpha{0};
    double twist_abs{0};  // in [0, l_alpha / 2]
};

// Inverse problem: Fenchel-Nielsen data of a one-holed torus from its
// ortho spectrum.  Initial estimates: boundary length from the Basmajian
// partial sum plus the fitted tail, alpha from the shortest entry
// (non-crossing simple orthogeodesic), twist by bisection against the
// shortest alpha-crossing entry, then a Gauss-Newton polish on the lowest
// entries and a full-cutoff consistency check.  The twist is determined
// up to sign and Dehn twists, so its folded absolute value is returned.
torus_params reconstruct_torus(const ortho_spectrum_t& sp);

// Certified-style lower bound for the systole from the spectrum alone:
// the minimum of per-boundary Basmajian partial sums (a lower bound for
// the shortest boundary curve) and interior-curve candidates
// 2 arccosh(r / 2) from entry pairs with cosh(y/2)/cosh(x/2) = r > 2
// inside the induction window.  The window uses a pants-length cap B
// (default 4 pi (2g - 2 + b) + sum of boundary underestimates, a
// documented heuristic; pass a certified cap for rigorous use) and is
// truncated at the spectrum cutoff when shorter, which the result flags.
struct mckean_result {
    double bound{0};
    bool window_truncated{false};
    double cap_used{0};
    double window_used{0};
};

mckean_result mckean_systole_bound(const ortho_spectrum_t& sp, int genus,
                                   int nboundary,
                                   double pants_length_cap = 0.0);

}  // namespace orthospec
