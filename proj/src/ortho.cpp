// Certified ortho-spectrum and length-spectrum enumeration.
//
// Ortho spectrum strategy, per ordered pair (i, j): tube_ball(j, T) yields
// one slide-normalized representative e per left coset <h_j> e, i.e. one
// lift g axis_j (g = e^-1) per right coset g <h_j>, covering every lift
// within distance T of the basepoint.  Each double coset <h_i> g <h_j>
// with perpendicular length <= L owns a lift whose i-foot sits within a
// half-period of the basepoint's own foot on axis_i, hence within
// L + reach_i <= T of the basepoint, so the tube sees every double coset
// at least once (possibly several times, via h_i-translates).  Candidates
// are then reduced to the canonical double-coset representative - the one
// whose feet both lie in the fundamental windows [0, len) - and duplicates
// collapse exactly there.

#include "orthospec/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "orthospec/errors.hpp"
#include "orthospec/geodesic.hpp"
#include "orthospec/hyperboloid.hpp"
#include "orthospec/kernels.hpp"
#include "orthospec/word.hpp"

namespace orthospec {

namespace {

// h_i^p computed through the axis frame: C^-1 diag(e^{p l/2}, e^{-p l/2}) C
// with C = to_std.  Exact powers (no repeated matrix products), stable for
// the few dozen turns the windows ever require.
mat2 boundary_power(const boundary_component& bc, long p) {
    if (p == 0) return mat2::identity();
    const double h = 0.5 * static_cast<double>(p) * bc.length;
    const double u = std::exp(h), v = std::exp(-h);
    const mat2& C = bc.to_std;
    const mat2 Ci = C.inverse();
    const mat2 D{u, 0.0, 0.0, v};
    return (Ci * D * C).canonical();
}

bool same_oriented_geodesic(const geodesic& a, const geodesic& b,
                            double tol) {
    return std::abs(a.p.u - b.p.u) <= tol && std::abs(a.p.v - b.p.v) <= tol &&
           std::abs(a.q.u - b.q.u) <= tol && std::abs(a.q.v - b.q.v) <= tol;
}

// Circular distance between arc coordinates on a component of length len.
double circ_gap(double x, double y, double len) {
    double d = std::abs(x - y);
    if (d > len / 2.0) d = len - d;
    return d;
}

struct candidate {
    double length;
    int i, j;
    double foot_i, foot_j;
    int side_i;
    mat2 rep;
};

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (const unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace

std::string surface_fingerprint(const fuchsian_surface& s) {
    return fnv1a_hex(s.spec_json);
}

ortho_spectrum_t ortho_spectrum(const fuchsian_surface& s, double L,
                                const ortho_options& opts) {
    if (s.boundary.empty())
        throw spec_error("ortho_spectrum: surface has no boundary");
    if (!(L > 0))
        throw domain_error("ortho_spectrum: cutoff must be positive");
    if (!s.dirichlet)
        throw certification_error(
            "ortho_spectrum: surface carries no Dirichlet certificate");

    const int nb = static_cast<int>(s.boundary.size());
    double max_d = 0.0, max_reach = 0.0;
    for (int i = 0; i < nb; ++i) {
        const auto& bc = s.boundary[static_cast<size_t>(i)];
        max_d = std::max(max_d, dist_point_geodesic(s.base, bc.axis_g));
        max_reach = std::max(max_reach, boundary_reach(s, i));
    }
    const double T_full = L + std::max(2.0 * max_d, max_reach);

    ortho_spectrum_t out;
    out.cutoff = L;
    out.fingerprint = surface_fingerprint(s);
    out.certificate.certified = true;
    out.certificate.ball_radius = T_full;

    const double keep_cosh = std::cosh(L) * (1.0 + 1e-12) + 1e-12;
    const auto& fns = kernels::active();
    std::vector<candidate> cands;

    for (int j = 0; j < nb; ++j) {
        const auto& bcj = s.boundary[static_cast<size_t>(j)];

        // Certified tube; optionally back off (flagging the certificate)
        // when the certified radius is not affordable.
        tube_ball_result tube;
        double T = T_full;
        for (;;) {
            try {
                tube = tube_ball(s, j, T, opts.max_elements);
                break;
            } catch (const insufficient_data_error&) {
                if (!opts.allow_heuristic || T - 1.0 <= L) throw;
                T -= 1.0;
                out.certificate.certified = false;
                out.certificate.ball_radius =
                    std::min(out.certificate.ball_radius, T);
            }
        }

        // Lifts are g axis_j with g = e^-1; SoA of the inverses.
        const std::size_t m = tube.elements.size();
        std::vector<double> ia(m), ib(m), ic(m), id(m), nval(m);
        for (std::size_t k = 0; k < m; ++k) {
            const mat2& e = tube.elements[k];
            ia[k] = e.d;
            ib[k] = -e.b;
            ic[k] = -e.c;
            id[k] = e.a;
        }
        const double axj4[4] = {bcj.axis_g.p.u, bcj.axis_g.p.v,
                                bcj.axis_g.q.u, bcj.axis_g.q.v};

        for (int i = 0; i < nb; ++i) {
            const auto& bci = s.boundary[static_cast<size_t>(i)];
            const double axi4[4] = {bci.axis_g.p.u, bci.axis_g.p.v,
                                    bci.axis_g.q.u, bci.axis_g.q.v};
            fns.perp_batch(ia.data(), ib.data(), ic.data(), id.data(), m,
                           axi4, axj4, nval.data());
            for (std::size_t k = 0; k < m; ++k) {
                const double N = std::abs(nval[k]);
                if (!(N > 1.0 + 1e-11)) {
                    const mat2 g{ia[k], ib[k], ic[k], id[k]};
                    const geodesic lift = apply(g, bcj.axis_g);
                    if (i == j &&
                        same_oriented_geodesic(lift, bcj.axis_g, 1e-9))
                        continue;  // trivial double coset <h_j> id <h_j>
                    throw certification_error(
                        "ortho_spectrum: crossing or asymptotic boundary "
                        "lift; the surface data is not a discrete "
                        "boundary-geodesic group");
                }
                if (N > keep_cosh) continue;
                const double len = std::acosh(N);

                const mat2 g{ia[k], ib[k], ic[k], id[k]};
                const geodesic lift = apply(g, bcj.axis_g);
                const auto fi = foot_on_boundary(bci, lift);
                // j-side foot: move the configuration by g^-1 = e, which
                // carries the lift back to axis_j and axis_i to a lift.
                const auto fj =
                    foot_on_boundary(bcj, apply(tube.elements[k], bci.axis_g));
                if (!fi || !fj)
                    throw certification_error(
                        "ortho_spectrum: foot projection failed on a "
                        "disjoint lift");

                // Canonical double-coset representative: both feet in the
                // fundamental windows.
                const mat2 rep = (boundary_power(bci, -fi->turns) * g *
                                  boundary_power(bcj, fj->turns))
                                     .canonical();
                const geodesic rlift = apply(rep, bcj.axis_g);
                const double n2 = std::abs(perp_invariant(bci.axis_g, rlift));
                if (!(n2 > 1.0) ||
                    std::abs(std::acosh(n2) - len) >
                        1e-9 * std::max(1.0, len))
                    throw certification_error(
                        "ortho_spectrum: canonical representative fails the "
                        "length recheck");
                const auto rfi = foot_on_boundary(bci, rlift);
                const auto rfj = foot_on_boundary(
                    bcj, apply(rep.inverse(), bci.axis_g));
                if (!rfi || !rfj || rfi->turns != 0 || rfj->turns != 0 ||
                    circ_gap(rfi->coord, fi->coord, bci.length) >
                        opts.foot_tol ||
                    circ_gap(rfj->coord, fj->coord, bcj.length) >
                        opts.foot_tol)
                    throw certification_error(
                        "ortho_spectrum: canonical representative fails the "
                        "foot-window recheck");

                cands.push_back({len, i, j, rfi->coord, rfj->coord, rfi->side,
                                 rep});
            }
        }
    }

    // Collapse duplicates: one double coset can enter through several
    // h_i-translated lifts; all of them reduced to the same canonical
    // representative, so they agree in (i, j, length, foot_i, side_i) to
    // tolerance.  (foot_i, side_i, length) already pin the arc, so a
    // foot_j disagreement inside a matching group is a numerical fault,
    // not a new coset.
    std::sort(cands.begin(), cands.end(),
              [](const candidate& x, const candidate& y) {
                  if (x.i != y.i) return x.i < y.i;
                  if (x.j != y.j) return x.j < y.j;
                  if (x.length != y.length) return x.length < y.length;
                  if (x.foot_i != y.foot_i) return x.foot_i < y.foot_i;
                  return x.foot_j < y.foot_j;
              });

    std::vector<candidate> unique;
    const double ltol = opts.length_tol * std::max(1.0, L);
    std::size_t group_begin = 0;
    std::vector<std::size_t> kept_in_group;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        const auto& c = cands[k];
        if (k == group_begin ||
            c.i != cands[group_begin].i || c.j != cands[group_begin].j) {
            group_begin = k;
            kept_in_group.clear();
        }
        // Drop entries of the (i, j) group that fell out of length range.
        while (!kept_in_group.empty() &&
               c.length - unique[kept_in_group.front()].length > ltol)
            kept_in_group.erase(kept_in_group.begin());
        bool dup = false;
        const double leni = s.boundary[static_cast<size_t>(c.i)].length;
        const double lenj = s.boundary[static_cast<size_t>(c.j)].length;
        for (const std::size_t u : kept_in_group) {
            const auto& p = unique[u];
            if (p.side_i != c.side_i) continue;
            if (circ_gap(p.foot_i, c.foot_i, leni) > opts.foot_tol) continue;
            if (circ_gap(p.foot_j, c.foot_j, lenj) > opts.foot_tol)
                throw certification_error(
                    "ortho_spectrum: two lifts agree in length and first "
                    "foot but not in second foot");
            dup = true;
            break;
        }
        if (!dup) {
            kept_in_group.push_back(unique.size());
            unique.push_back(c);
        }
    }

    std::sort(unique.begin(), unique.end(),
              [](const candidate& x, const candidate& y) {
                  if (x.length != y.length) return x.length < y.length;
                  if (x.i != y.i) return x.i < y.i;
                  if (x.j != y.j) return x.j < y.j;
                  if (x.foot_i != y.foot_i) return x.foot_i < y.foot_i;
                  return x.foot_j < y.foot_j;
              });
    out.entries.reserve(unique.size());
    for (const auto& c : unique)
        out.entries.push_back(
            {c.length, c.i, c.j, c.foot_i, c.foot_j, c.rep});
    return out;
}

std::vector<closed_geodesic> closed_geodesics(const fuchsian_surface& s,
                                              double L,
                                              std::size_t max_elements) {
    if (!(L > 0))
        throw domain_error("closed_geodesics: cutoff must be positive");
    if (!s.dirichlet)
        throw certification_error(
            "closed_geodesics: surface carries no Dirichlet certificate");

    // Every class of translation length l <= L has a conjugate whose axis
    // passes within rho of the basepoint (its geodesic lies in the convex
    // core, which the Dirichlet domain covers within rho), and that
    // conjugate displaces the basepoint by at most l + 2 rho.
    const double R = L + 2.0 * s.dirichlet->rho;
    const auto ball = group_ball(s, R, max_elements);

    const double keep = L * (1.0 + 1e-12) + 1e-12;
    std::map<word, std::pair<double, bool>> classes;
    for (std::size_t k = 0; k < ball.elements.size(); ++k) {
        const word& w = ball.words[k];
        if (w.empty()) continue;  // identity
        const mat2& g = ball.elements[k];
        if (classify(g) != isometry_kind::hyperbolic)
            throw certification_error(
                "closed_geodesics: non-hyperbolic nontrivial element; the "
                "group is not purely hyperbolic");
        const double len = translation_length(g);
        if (len > keep) continue;
        const word cls = conjugacy_canonical(w);
        const auto [it, fresh] =
            classes.try_emplace(cls, len, is_primitive(cls));
        if (!fresh && std::abs(it->second.first - len) >
                          1e-9 * std::max(1.0, len))
            throw certification_error(
                "closed_geodesics: conjugate elements disagree on length");
    }

    std::vector<closed_geodesic> out;
    out.reserve(classes.size());
    for (const auto& [cls, data] : classes)
        out.push_back({data.first, data.second, cls});
    std::sort(out.begin(), out.end(),
              [](const closed_geodesic& x, const closed_geodesic& y) {
                  if (x.length != y.length) return x.length < y.length;
                  return x.cls < y.cls;
              });
    return out;
}

double systole(const fuchsian_surface& s, double L_max) {
    if (!(L_max > 0))
        throw domain_error("systole: cutoff must be positive");
    for (double L = std::min(0.5, L_max);; L = std::min(L * 1.6, L_max)) {
        const auto closed = closed_geodesics(s, L);
        if (!closed.empty()) return closed.front().length;
        if (L >= L_max)
            throw insufficient_data_error(
                "systole: no closed geodesic up to the cutoff");
    }
}

}  // namespace orthospec
