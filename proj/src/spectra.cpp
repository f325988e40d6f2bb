#include "orthospec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "orthospec/build.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/geodesic.hpp"
#include "orthospec/identities.hpp"
#include "orthospec/trig.hpp"

namespace orthospec {

namespace {

constexpr double distinct_tol = 1e-9;

std::vector<double> sorted_lengths(const ortho_spectrum_t& sp) {
    std::vector<double> out;
    out.reserve(sp.entries.size());
    for (const auto& e : sp.entries) out.push_back(e.length);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> distinct_values(const std::vector<double>& lengths,
                                    double cutoff) {
    std::vector<double> v;
    for (const double l : lengths) {
        if (l > cutoff) continue;
        if (v.empty() || l - v.back() > distinct_tol) v.push_back(l);
    }
    return v;
}

// Largest trailing window of >= min_pts points whose local slopes agree
// with the window mean within 10%, then least squares over the window.
exponent_fit fit_log_slope(const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           std::size_t min_pts, const char* method) {
    const std::size_t n = xs.size();
    if (n < min_pts)
        throw insufficient_data_error(std::string(method) +
                                      ": too few points for a slope fit");
    auto window_ok = [&](std::size_t a, std::size_t b) {
        // slopes of consecutive chords within the candidate window
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t t = a; t + 1 <= b; ++t) {
            const double s = (ys[t + 1] - ys[t]) / (xs[t + 1] - xs[t]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const double mid = (lo + hi) / 2.0;
        return mid > 0 && (hi - lo) <= 0.10 * mid;
    };
    // Prefer the widest admissible window; break ties towards the tail.
    std::size_t best_a = 0, best_b = 0;
    bool found = false;
    for (std::size_t w = n; w >= min_pts; --w) {
        for (std::size_t a = n - w + 1; a-- > 0;) {
            const std::size_t b = a + w - 1;
            if (window_ok(a, b)) {
                best_a = a;
                best_b = b;
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found)
        throw insufficient_data_error(
            std::string(method) +
            ": no window with coherent growth (local slopes spread more "
            "than 10%)");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(best_b - best_a + 1);
    for (std::size_t t = best_a; t <= best_b; ++t) {
        sx += xs[t];
        sy += ys[t];
        sxx += xs[t] * xs[t];
        sxy += xs[t] * ys[t];
    }
    exponent_fit fit;
    fit.estimate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - fit.estimate * sx) / m;
    fit.amplitude = std::exp(intercept);
    fit.window_lo = xs[best_a];
    fit.window_hi = xs[best_b];
    for (std::size_t t = best_a; t <= best_b; ++t)
        fit.residual = std::max(
            fit.residual,
            std::abs(ys[t] - (intercept + fit.estimate * xs[t])));
    fit.method = method;
    return fit;
}

}  // namespace

double granulosity(const std::vector<double>& lengths, double cutoff,
                   bool consecutive) {
    std::vector<double> sorted = lengths;
    std::sort(sorted.begin(), sorted.end());
    const auto v = distinct_values(sorted, cutoff);
    if (v.size() < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    if (consecutive) {
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
            best = std::min(best, std::cosh(v[k + 1] / 2.0) /
                                      std::cosh(v[k] / 2.0));
    } else {
        for (std::size_t a = 0; a < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b)
                best = std::min(best, std::cosh(v[b] / 2.0) /
                                          std::cosh(v[a] / 2.0));
    }
    return best;
}

double poincare_partial(const std::vector<double>& lengths, double h) {
    std::vector<double> terms;
    terms.reserve(lengths.size());
    for (const double l : lengths) terms.push_back(std::exp(-h * l));
    return pairwise_sum(terms);
}

exponent_fit ortho_exponent(const ortho_spectrum_t& sp) {
    const auto lens = sorted_lengths(sp);
    std::vector<double> xs, ys;
    for (double k = 1.0; k <= std::floor(sp.cutoff); k += 1.0) {
        const auto n = static_cast<std::size_t>(
            std::upper_bound(lens.begin(), lens.end(), k) - lens.begin());
        if (n < 5) continue;
        xs.push_back(k);
        ys.push_back(std::log(static_cast<double>(n)));
    }
    return fit_log_slope(xs, ys, 4, "counting-slope");
}

exponent_fit divergence_exponent(const ortho_spectrum_t& sp) {
    const auto lens = sorted_lengths(sp);
    const double K = std::floor(sp.cutoff);
    std::vector<double> w1, w2;  // (K-2, K-1] and (K-1, K]
    for (const double l : lens) {
        if (l > K - 2.0 && l <= K - 1.0) w1.push_back(l);
        if (l > K - 1.0 && l <= K) w2.push_back(l);
    }
    if (w1.size() < 5 || w2.size() < 5)
        throw insufficient_data_error(
            "partial-sum-divergence: trailing unit windows too sparse");
    // Window sums W(h) scale like e^((delta - h) K); their ratio crosses 1
    // at h = delta, monotonically in h.
    const auto log_ratio = [&](double h) {
        return std::log(poincare_partial(w2, h) / poincare_partial(w1, h));
    };
    double lo = 0.01, hi = 2.0;
    if (log_ratio(lo) < 0 || log_ratio(hi) > 0)
        throw insufficient_data_error(
            "partial-sum-divergence: window ratio does not bracket 1");
    for (int it = 0; it < 80; ++it) {
        const double mid = (lo + hi) / 2.0;
        (log_ratio(mid) > 0 ? lo : hi) = mid;
    }
    exponent_fit fit;
    fit.estimate = (lo + hi) / 2.0;
    fit.window_lo = K - 2.0;
    fit.window_hi = K;
    fit.method = "partial-sum-divergence";
    return fit;
}

std::vector<interval_radius> boundary_interval_radii(
    const fuchsian_surface& s, double R) {
    if (s.boundary.empty())
        throw spec_error("boundary_interval_radii: no boundary components");
    const auto lifts = boundary_lifts(s, R);
    const geodesic& ref = s.boundary[0].axis_g;

    // (z - 1) / (z + 1) maps the reference axis endpoints to -1 and 1.
    const double rt = std::sqrt(0.5);
    mat2 W = mat2{rt, -rt, rt, rt} * s.boundary[0].to_std;
    const mat2 flip{0.0, -1.0, 1.0, 0.0};  // swaps the two sides of (-1,1)

    // Decide the global flip from the first non-reference lift.
    bool oriented = false;
    std::vector<interval_radius> out;
    const auto is_reference = [&](const geodesic& g) {
        const auto close = [](const boundary_point& x,
                              const boundary_point& y) {
            return std::abs(x.u - y.u) <= 1e-9 &&
                   std::abs(x.v - y.v) <= 1e-9;
        };
        return (close(g.p, ref.p) && close(g.q, ref.q)) ||
               (close(g.p, ref.q) && close(g.q, ref.p));
    };
    for (const auto& bl : lifts) {
        const double n = std::abs(perp_invariant(ref, bl.axis_g));
        if (!(n > 1.0 + 1e-11)) {
            if (is_reference(bl.axis_g)) continue;
            throw certification_error(
                "boundary_interval_radii: crossing boundary lifts");
        }
        const auto ends = [&](const mat2& V) {
            double a = apply(V, bl.axis_g.p).value();
            double b = apply(V, bl.axis_g.q).value();
            if (a > b) std::swap(a, b);
            return std::pair<double, double>{a, b};
        };
        if (!oriented) {
            const auto [a, b] = ends(W);
            if (!(a >= -1.0 && b <= 1.0)) W = flip * W;
            oriented = true;
        }
        const auto [a, b] = ends(W);
        if (!(a >= -1.0 - 1e-9 && b <= 1.0 + 1e-9))
            throw certification_error(
                "boundary_interval_radii: lift escapes the reference "
                "interval after normalization");
        out.push_back({(a + b) / 2.0, (b - a) / 2.0, std::acosh(n),
                       bl.component});
    }
    std::sort(out.begin(), out.end(),
              [](const interval_radius& x, const interval_radius& y) {
                  if (x.radius != y.radius) return x.radius > y.radius;
                  if (x.center != y.center) return x.center < y.center;
                  return x.component < y.component;
              });
    return out;
}

exponent_fit packing_exponent(const std::vector<interval_radius>& radii) {
    std::vector<double> r;
    r.reserve(radii.size());
    for (const auto& iv : radii) r.push_back(iv.radius);
    return packing_exponent(std::move(r));
}

exponent_fit packing_exponent(std::vector<double> radii) {
    if (radii.size() < 50)
        throw insufficient_data_error(
            "packing_exponent: fewer than 50 radii");
    std::sort(radii.begin(), radii.end(), std::greater<>());
    if (!(radii.back() > 0))
        throw insufficient_data_error(
            "packing_exponent: nonpositive radius present");
    // Counting curve sampled on a geometric grid of thresholds between the
    // 5th largest radius and the smallest.
    const double r_hi = radii[4], r_lo = radii.back();
    if (!(r_hi > r_lo * 1.5))
        throw insufficient_data_error(
            "packing_exponent: degenerate radius decay (all radii nearly "
            "equal); enlarge the lift ball");
    const int grid = 24;
    std::vector<double> xs, ys;
    for (int t = 0; t <= grid; ++t) {
        const double r = r_hi * std::pow(r_lo / r_hi,
                                         static_cast<double>(t) / grid);
        const auto cnt = static_cast<std::size_t>(
            std::upper_bound(radii.begin(), radii.end(), r,
                             std::greater<>()) -
            radii.begin());
        if (cnt < 5) continue;
        xs.push_back(-std::log(r));
        ys.push_back(std::log(static_cast<double>(cnt)));
    }
    auto fit = fit_log_slope(xs, ys, 4, "interval-packing");
    if (fit.estimate <= 0.05)
        throw insufficient_data_error(
            "packing_exponent: fitted exponent is degenerate (~0); the "
            "radius list does not resolve a power law");
    return fit;
}

spectra_comparison compare_spectra(const ortho_spectrum_t& a,
                                   const ortho_spectrum_t& b, double tol) {
    spectra_comparison cmp;
    cmp.common_cutoff = std::min(a.cutoff, b.cutoff);
    const double window = cmp.common_cutoff - tol;
    auto clipped = [&](const ortho_spectrum_t& sp) {
        std::vector<double> v;
        for (const auto& e : sp.entries)
            if (e.length <= window) v.push_back(e.length);
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto va = clipped(a), vb = clipped(b);
    cmp.count_a = va.size();
    cmp.count_b = vb.size();
    if (va.size() != vb.size()) {
        cmp.isospectral = false;
        const std::size_t n = std::min(va.size(), vb.size());
        cmp.first_index = static_cast<std::ptrdiff_t>(n);
        return cmp;
    }
    cmp.isospectral = true;
    for (std::size_t k = 0; k < va.size(); ++k) {
        const double d = std::abs(va[k] - vb[k]);
        cmp.max_discrepancy = std::max(cmp.max_discrepancy, d);
        if (d > tol && cmp.first_index < 0) {
            cmp.first_index = static_cast<std::ptrdiff_t>(k);
            cmp.first_a = va[k];
            cmp.first_b = vb[k];
            cmp.isospectral = false;
        }
    }
    return cmp;
}

namespace {

// Entries of `sp` (as sorted lengths <= cutoff) not matched, greedily in
// order, by the reference multiset within `tol`.
std::vector<double> tolerant_difference(const std::vector<double>& lens,
                                        const std::vector<double>& ref,
                                        double tol) {
    std::vector<double> out;
    std::vector<char> used(ref.size(), 0);
    std::size_t lo = 0;
    for (const double l : lens) {
        while (lo < ref.size() && ref[lo] < l - tol) ++lo;
        bool matched = false;
        for (std::size_t t = lo; t < ref.size() && ref[t] <= l + tol; ++t) {
            if (!used[t]) {
                used[t] = 1;
                matched = true;
                break;
            }
        }
        if (!matched) out.push_back(l);
    }
    return out;
}

// Sorted gamma-gamma entry lengths of pants(l_alpha, l_alpha, l_gamma)
// up to `cutoff`: the non-crossing (alpha-avoiding) part of the torus
// spectrum, twist-independent.
std::vector<double> pants_reference(double l_alpha, double l_gamma,
                                    double cutoff) {
    const fuchsian_surface p = build_pants(l_alpha, l_alpha, l_gamma);
    const auto sp = ortho_spectrum(p, cutoff);
    std::vector<double> out;
    for (const auto& e : sp.entries)
        if (e.i == 2 && e.j == 2) out.push_back(e.length);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> torus_lengths(double l_gamma, double l_alpha,
                                  double twist, double cutoff) {
    const fuchsian_surface t =
        build_one_holed_torus(l_alpha, twist, l_gamma);
    return sorted_lengths(ortho_spectrum(t, cutoff));
}

constexpr double match_tol = 0.05;  // set-difference matching tolerance

double shortest_crossing(const std::vector<double>& lens,
                         const std::vector<double>& ref) {
    const auto diff = tolerant_difference(lens, ref, match_tol);
    if (diff.empty()) return std::numeric_limits<double>::infinity();
    return diff.front();
}

}  // namespace

torus_params reconstruct_torus(const ortho_spectrum_t& sp) {
    for (const auto& e : sp.entries)
        if (e.i != 0 || e.j != 0)
            throw spec_error(
                "reconstruct_torus: spectrum has several boundary "
                "components; not a one-holed torus");
    if (sp.entries.size() < 4)
        throw insufficient_data_error(
            "reconstruct_torus: need at least four entries");

    const auto obs = sorted_lengths(sp);

    // Boundary length: Basmajian partial plus the fitted tail estimate.
    std::vector<double> terms;
    for (const double l : obs) terms.push_back(basmajian_term(l));
    const auto fit = fit_count_growth(obs, sp.cutoff);
    double l_gamma = pairwise_sum(terms) +
                     basmajian_tail_estimate(fit, sp.cutoff);

    // Alpha from the shortest (simple, non-crossing) entry.
    double l_alpha = alpha_from_simple_ortho(obs.front(), l_gamma);

    // Twist from the shortest alpha-crossing entry, by bisection: at fixed
    // (l_alpha, l_gamma) its length is even and increasing in the twist
    // over [0, l_alpha / 2] (the fundamental domain modulo Dehn twists).
    double twist = 0.0;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const auto ref =
            pants_reference(l_alpha, l_gamma, sp.cutoff);
        const double c0 = shortest_crossing(obs, ref);
        if (std::isfinite(c0)) {
            const double probe_cut = c0 + 0.5;
            const auto ref_probe = pants_reference(l_alpha, l_gamma,
                                                   probe_cut);
            const auto first_crossing = [&](double tw) {
                return shortest_crossing(
                    torus_lengths(l_gamma, l_alpha, tw, probe_cut),
                    ref_probe);
            };
            double lo = 0.0, hi = l_alpha / 2.0;
            const double f_lo = first_crossing(lo);
            const double f_hi = first_crossing(hi);
            if (c0 <= f_lo)
                twist = 0.0;
            else if (c0 >= f_hi)
                twist = hi;
            else {
                for (int it = 0; it < 60; ++it) {
                    const double mid = (lo + hi) / 2.0;
                    (first_crossing(mid) < c0 ? lo : hi) = mid;
                }
                twist = (lo + hi) / 2.0;
            }
        }

        // Gauss-Newton polish on the lowest entries.
        const std::size_t K = std::min<std::size_t>(8, obs.size());
        const double gn_cut = obs[K - 1] + 0.3;
        const auto model = [&](double lg, double la,
                               double tw) -> std::vector<double> {
            auto lens = torus_lengths(lg, la, tw, gn_cut);
            if (lens.size() < K) {
                auto more = torus_lengths(lg, la, tw, gn_cut + 0.7);
                lens = std::move(more);
            }
            return lens;
        };
        double theta[3] = {l_gamma, l_alpha, twist};
        for (int it = 0; it < 30; ++it) {
            const auto m0 = model(theta[0], theta[1], theta[2]);
            if (m0.size() < K)
                throw insufficient_data_error(
                    "reconstruct_torus: candidate surface has too few "
                    "entries");
            double r[8];
            for (std::size_t k = 0; k < K; ++k) r[k] = m0[k] - obs[k];
            double J[8][3];
            for (int p = 0; p < 3; ++p) {
                const double h =
                    1e-6 * std::max(1.0, std::abs(theta[p]));
                double th[3] = {theta[0], theta[1], theta[2]};
                th[p] += h;
                const auto mp = model(th[0], th[1], th[2]);
                if (mp.size() < K)
                    throw insufficient_data_error(
                        "reconstruct_torus: perturbed surface has too few "
                        "entries");
                for (std::size_t k = 0; k < K; ++k)
                    J[k][p] = (mp[k] - m0[k]) / h;
            }
            // Normal equations, 3x3 Gaussian elimination.
            double A[3][4] = {};
            for (int p = 0; p < 3; ++p) {
                for (int q = 0; q < 3; ++q)
                    for (std::size_t k = 0; k < K; ++k)
                        A[p][q] += J[k][p] * J[k][q];
                for (std::size_t k = 0; k < K; ++k)
                    A[p][3] += J[k][p] * r[k];
                A[p][p] += 1e-12;  // Levenberg guard
            }
            for (int p = 0; p < 3; ++p) {
                int piv = p;
                for (int q = p + 1; q < 3; ++q)
                    if (std::abs(A[q][p]) > std::abs(A[piv][p])) piv = q;
                std::swap(A[p], A[piv]);
                for (int q = p + 1; q < 3; ++q) {
                    const double f = A[q][p] / A[p][p];
                    for (int c = p; c < 4; ++c) A[q][c] -= f * A[p][c];
                }
            }
            double step[3];
            for (int p = 2; p >= 0; --p) {
                double v = A[p][3];
                for (int q = p + 1; q < 3; ++q) v -= A[p][q] * step[q];
                step[p] = v / A[p][p];
            }
            double norm = 0.0;
            for (int p = 0; p < 3; ++p) {
                theta[p] -= 0.5 * step[p];
                norm = std::max(norm, std::abs(step[p]));
            }
            theta[0] = std::max(theta[0], 0.05);
            theta[1] = std::max(theta[1], 0.05);
            if (norm < 1e-11) break;
        }
        l_gamma = theta[0];
        l_alpha = theta[1];
        // Fold the twist into [0, l_alpha / 2].
        twist = std::abs(std::remainder(theta[2], l_alpha));
        if (twist > l_alpha / 2.0) twist = l_alpha - twist;

        // Full-cutoff consistency; on failure refresh the crossing split
        // from the polished parameters and retry once.
        const auto rebuilt = torus_lengths(l_gamma, l_alpha, twist,
                                           sp.cutoff);
        const double margin = 1e-6;
        bool ok = true;
        // Compare multisets away from the cutoff edge.
        std::vector<double> oc, rc;
        for (const double l : obs)
            if (l <= sp.cutoff - 1e-4) oc.push_back(l);
        for (const double l : rebuilt)
            if (l <= sp.cutoff - 1e-4) rc.push_back(l);
        if (oc.size() != rc.size()) {
            ok = false;
        } else {
            for (std::size_t t = 0; t < oc.size(); ++t)
                if (std::abs(oc[t] - rc[t]) > margin) {
                    ok = false;
                    break;
                }
        }
        if (ok) return {l_gamma, l_alpha, twist};
    }
    throw certification_error(
        "reconstruct_torus: polished parameters do not reproduce the "
        "observed spectrum");
}

mckean_result mckean_systole_bound(const ortho_spectrum_t& sp, int genus,
                                   int nboundary,
                                   double pants_length_cap) {
    if (nboundary < 1)
        throw spec_error("mckean_systole_bound: need a boundary component");
    mckean_result res;

    // Per-component Basmajian partial sums underestimate the component
    // lengths, so their minimum underestimates the shortest boundary
    // curve.
    std::vector<std::vector<double>> terms(
        static_cast<std::size_t>(nboundary));
    for (const auto& e : sp.entries) {
        if (e.i < 0 || e.i >= nboundary)
            throw spec_error(
                "mckean_systole_bound: entry component out of range");
        terms[static_cast<std::size_t>(e.i)].push_back(
            basmajian_term(e.length));
    }
    double boundary_floor = std::numeric_limits<double>::infinity();
    double hat_sum = 0.0, hat_max = 0.0;
    for (auto& t : terms) {
        const double hat = pairwise_sum(t);
        boundary_floor = std::min(boundary_floor, hat);
        hat_sum += hat;
        hat_max = std::max(hat_max, hat);
    }

    const int K = 2 * genus - 2 + nboundary;
    if (K < 1)
        throw spec_error(
            "mckean_systole_bound: Euler characteristic must be negative");
    const int interior_curves = (3 * K - nboundary) / 2;
    if (interior_curves == 0 || boundary_floor <= 0.0) {
        res.bound = std::max(boundary_floor, 0.0);
        res.cap_used = pants_length_cap;
        res.window_used = 0.0;
        return res;
    }

    // Induction window: any interior curve of a bounded pants
    // decomposition admits a returning boundary arc that crosses it, of
    // length controlled by the cap; entry pairs (tau, tau') inside the
    // window then witness the curve.
    const double B = pants_length_cap > 0.0
                         ? pants_length_cap
                         : 4.0 * std::numbers::pi * K + hat_sum;
    res.cap_used = B;
    const double U0 = cord_upper_bound(B, std::max(hat_max, 1e-6));
    double W = tau_prime_from_tau(B, U0);
    if (K >= 2) {
        const double mb = std::min(boundary_floor, B);
        const double P = pants_boundary_distance(mb, mb, B);
        for (int d = 2; d <= K; ++d)
            W = std::max(W, tau_prime_from_tau(
                                B, 2.0 * d * (P + B) + U0));
    }
    res.window_used = std::min(W, sp.cutoff);
    res.window_truncated = sp.cutoff < W;

    // Candidate curves: pairs of distinct entry values inside the window
    // with cosh(y/2) / cosh(x/2) = r > 2 yield 2 arccosh(r/2); a curve of
    // length l crossed by an arc tau realizes r = 2 cosh(l/2) exactly, and
    // accidental pairs only lower the minimum.
    const auto lens = sorted_lengths(sp);
    const auto v = distinct_values(lens, res.window_used);
    double interior = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            const double r =
                std::cosh(v[b] / 2.0) / std::cosh(v[a] / 2.0);
            if (r > 2.0)
                interior = std::min(interior,
                                    2.0 * std::acosh(r / 2.0));
        }
    res.bound = std::min(boundary_floor, interior);
    return res;
}

}  // namespace orthospec
