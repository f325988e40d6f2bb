// Dirichlet domain certification by convex clipping in basepoint-centered
// Klein coordinates.
//
// The polygon starts as a 64-gon inscribed in the Klein circle of the probe
// ball and is clipped by (a) the perpendicular bisector halfplane of every
// ball element and (b) the core-side halfplane of every boundary-axis lift
// by a ball element.  Both are straight chords in the Klein disk.  Each
// surviving edge remembers which halfplane cut it.
//
// The result is accepted as the Dirichlet polygon intersected with the
// convex core when (1) no edge of the initial circle survives, (2) every
// vertex lies at distance <= R - 0.5 from the basepoint, and (3) R >= 2 rho
// + 0.5.  Condition (3) is what makes the face list trustworthy: any true
// face pairing g satisfies d(o, g o) <= 2 rho, so all of them were present
// as clip candidates.  Missing *core* lifts at small R only enlarge the
// polygon, inflating rho and possibly adding spurious faces -- both safe
// directions (larger prune radii, extra BFS letters) -- and the +25% probe
// re-run must reproduce the essential face set before anything is stored.

#include "orthospec/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "orthospec/ball.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/hyperboloid.hpp"

namespace orthospec {

namespace {

struct polygon {
    std::vector<double> x, y;
    std::vector<int64_t> tag;  // tag[k]: edge from vertex k to vertex k+1
    std::size_t size() const { return x.size(); }
    bool empty() const { return x.empty(); }
};

// Sutherland-Hodgman clip by {w1 x + w2 y - w3 >= 0}; edges created along
// the clip line receive tag t.
void clip_halfplane(polygon& P, double w1, double w2, double w3, int64_t t) {
    const std::size_t n = P.size();
    if (n == 0) return;
    std::vector<double> f(n);
    bool all_in = true, any_in = false;
    for (std::size_t k = 0; k < n; ++k) {
        f[k] = w1 * P.x[k] + w2 * P.y[k] - w3;
        const bool in = f[k] >= 0.0;
        all_in = all_in && in;
        any_in = any_in || in;
    }
    if (all_in) return;
    if (!any_in) {
        P.x.clear();
        P.y.clear();
        P.tag.clear();
        return;
    }
    polygon out;
    out.x.reserve(n + 2);
    out.y.reserve(n + 2);
    out.tag.reserve(n + 2);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t kn = (k + 1) % n;
        const bool ain = f[k] >= 0.0, bin = f[kn] >= 0.0;
        if (ain) {
            out.x.push_back(P.x[k]);
            out.y.push_back(P.y[k]);
            out.tag.push_back(P.tag[k]);
        }
        if (ain != bin) {
            const double s = f[k] / (f[k] - f[kn]);
            out.x.push_back(P.x[k] + s * (P.x[kn] - P.x[k]));
            out.y.push_back(P.y[k] + s * (P.y[kn] - P.y[k]));
            out.tag.push_back(ain ? t : P.tag[k]);
        }
    }
    P = std::move(out);
}

struct face_item {
    word w;
    mat2 g;
};

struct polygon_result {
    bool closed{false};
    double rho{0};
    std::vector<face_item> essential;  // faces with an edge longer than 1e-9
    std::vector<face_item> marginal;   // tangential contacts (tiny edges)
};

// One probe: ball of radius R, clip, classify.
polygon_result polygon_at(const fuchsian_surface& s, double R,
                          std::size_t max_elements) {
    const ball_t ball = raw_ball(s.alphabet, s.base, R, max_elements);
    if (ball.truncated)
        throw certification_error(
            "dirichlet: element cap hit at probe radius " +
            std::to_string(R));

    polygon P;
    const double r_klein = std::tanh(R);
    for (int j = 0; j < 64; ++j) {
        const double ang = 2.0 * M_PI * j / 64.0;
        P.x.push_back(r_klein * std::cos(ang));
        P.y.push_back(r_klein * std::sin(ang));
        P.tag.push_back(-1);
    }

    // Bisector halfplanes {d(X, o) <= d(X, g o)}: w = P_o - lift(g o).
    for (std::size_t k = 1; k < ball.size() && !P.empty(); ++k) {
        const mat2 m = ball.centered(k);
        const double den = m.c * m.c + m.d * m.d;
        const vec3 X = lift({(m.a * m.c + m.b * m.d) / den, m.det() / den});
        clip_halfplane(P, -X.x, -X.y, 1.0 - X.z, static_cast<int64_t>(k));
    }

    // Core-side halfplanes of boundary-axis lifts (skipped when the lift
    // provably misses the probe disk: sinh d(o, lift) = |<P_o, w>|).
    std::vector<geodesic> axes_c;
    axes_c.reserve(s.boundary.size());
    for (const auto& bc : s.boundary)
        axes_c.push_back(apply(ball.conj, bc.axis_g));
    const double sinh_R = std::sinh(R);
    for (std::size_t k = 0; k < ball.size() && !P.empty(); ++k) {
        const mat2 h = ball.centered(k);
        for (std::size_t i = 0; i < axes_c.size(); ++i) {
            const geodesic lg = apply(h, axes_c[i]);
            vec3 w = mcross(light(lg.p), light(lg.q));
            const double n2 = mdot(w, w);
            if (!(n2 > 0.0)) continue;  // endpoints collapsed: too deep
            w = (1.0 / std::sqrt(n2)) * w;
            if (-w.z < 0.0) w = -1.0 * w;
            if (std::abs(w.z) >= sinh_R) continue;
            const int64_t t =
                -2 - static_cast<int64_t>(k * axes_c.size() + i);
            clip_halfplane(P, w.x, w.y, w.z, t);
        }
    }

    polygon_result res;
    if (P.empty()) return res;

    std::map<int64_t, double> face_len;  // bisector tag -> longest edge
    bool open_edge = false;
    const std::size_t n = P.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double rk = std::hypot(P.x[k], P.y[k]);
        res.rho = std::max(res.rho, std::atanh(std::min(rk, 1.0 - 1e-15)));
        const std::size_t kn = (k + 1) % n;
        const double len = std::hypot(P.x[kn] - P.x[k], P.y[kn] - P.y[k]);
        if (len <= 1e-12) continue;
        if (P.tag[k] == -1) {
            open_edge = true;
        } else if (P.tag[k] >= 1) {
            double& m = face_len[P.tag[k]];
            m = std::max(m, len);
        }
    }
    res.closed = !open_edge && res.rho <= R - 0.5 && R >= 2.0 * res.rho + 0.5;

    std::vector<word> letters(s.alphabet.size());
    for (std::size_t k = 0; k < letters.size(); ++k)
        letters[k] = {static_cast<int32_t>(k)};
    for (const auto& [tag, len] : face_len) {
        const auto k = static_cast<std::size_t>(tag);
        face_item fi{ball.word_of(k, letters), ball.original(k).canonical()};
        (len > 1e-9 ? res.essential : res.marginal).push_back(std::move(fi));
    }
    return res;
}

std::vector<word> sorted_words(const std::vector<face_item>& v) {
    std::vector<word> ws;
    ws.reserve(v.size());
    for (const auto& fi : v) ws.push_back(fi.w);
    std::sort(ws.begin(), ws.end());
    return ws;
}

mat2 centering(const hpoint& base) {
    const double sy = std::sqrt(base.y);
    return {1.0 / sy, -base.x / sy, 0.0, sy};
}

// Deterministic union of the face lists, closed under inverse.
std::map<word, mat2> collect_faces(
    std::initializer_list<const std::vector<face_item>*> lists) {
    std::map<word, mat2> fa;
    for (const auto* lst : lists)
        for (const auto& fi : *lst) fa.emplace(fi.w, fi.g);
    std::map<word, mat2> closed = fa;
    for (const auto& [w, g] : fa)
        closed.emplace(word_inverse(w), g.inverse().canonical());
    return closed;
}

void check_generation(const fuchsian_surface& s, const dirichlet_cert& cert,
                      std::size_t max_elements) {
    std::vector<mat2> fmats;
    fmats.reserve(cert.faces.size());
    for (const auto& f : cert.faces) fmats.push_back(f.g);
    const mat2 conj = centering(s.base);
    const mat2 conj_inv = conj.inverse();
    double need = 0.0;
    for (const auto& g : s.alphabet)
        need = std::max(
            need, std::acosh((conj * g * conj_inv).displacement_cosh()));
    const ball_t gb =
        raw_ball(fmats, s.base, need + cert.rho + 0.5, max_elements);
    if (gb.truncated)
        throw certification_error(
            "dirichlet: generation check exceeded the element cap");
    for (std::size_t k = 0; k < s.alphabet.size(); k += 2) {
        const mat2 target = s.alphabet[k].canonical();
        const double tol =
            1e-8 * std::max({1.0, std::abs(target.a), std::abs(target.b),
                             std::abs(target.c), std::abs(target.d)});
        bool found = false;
        for (std::size_t j = 0; j < gb.size() && !found; ++j)
            found = same_isometry(gb.original(j), target, tol);
        if (!found)
            throw certification_error(
                "dirichlet: face pairings fail to reach generator " +
                s.gen_names[k / 2]);
    }
}

}  // namespace

dirichlet_cert certify_dirichlet(fuchsian_surface& s,
                                 const dirichlet_options& opts) {
    if (s.alphabet.empty())
        throw construction_error("certify_dirichlet: surface has no generators");

    double R = opts.initial_radius;
    if (!(R > 0.0)) {
        const mat2 conj = centering(s.base);
        const mat2 conj_inv = conj.inverse();
        R = 3.0;
        for (const auto& g : s.alphabet)
            R = std::max(R, std::acosh((conj * g * conj_inv)
                                           .displacement_cosh()) +
                                1.0);
    }

    for (int round = 0; round < opts.max_rounds; ++round) {
        const polygon_result p1 = polygon_at(s, R, opts.max_elements);
        if (!p1.closed) {
            R += 2.0;
            continue;
        }
        const polygon_result p2 = polygon_at(s, 1.25 * R, opts.max_elements);
        if (p2.closed &&
            sorted_words(p1.essential) == sorted_words(p2.essential) &&
            std::abs(p1.rho - p2.rho) <= 1e-9) {
            const auto fa = collect_faces(
                {&p1.essential, &p1.marginal, &p2.essential, &p2.marginal});
            dirichlet_cert cert;
            cert.rho = std::max(p1.rho, p2.rho);
            cert.probe_radius = R;
            cert.stable = true;
            const mat2 conj = centering(s.base);
            const mat2 conj_inv = conj.inverse();
            for (const auto& [w, g] : fa)
                cert.faces.push_back(
                    {g, w, (conj * g * conj_inv).displacement_cosh()});
            check_generation(s, cert, opts.max_elements);
            s.dirichlet = cert;
            return cert;
        }
        R *= 1.25;  // adopt the larger probe and try again
    }
    throw certification_error(
        "certify_dirichlet: polygon failed to close and stabilize within " +
        std::to_string(opts.max_rounds) + " rounds");
}

std::vector<mat2> dirichlet_face_pairings(const fuchsian_surface& s,
                                          double probe_radius) {
    if (!(probe_radius > 0.0))
        throw domain_error("dirichlet_face_pairings: probe radius must be positive");
    const std::size_t cap = 4'000'000;
    const polygon_result p1 = polygon_at(s, probe_radius, cap);
    const polygon_result p2 = polygon_at(s, 1.25 * probe_radius, cap);
    if (!p1.closed || !p2.closed)
        throw certification_error(
            "dirichlet_face_pairings: polygon not closed at probe radius " +
            std::to_string(probe_radius));
    if (sorted_words(p1.essential) != sorted_words(p2.essential))
        throw certification_error(
            "dirichlet_face_pairings: face set unstable under +25% probe");
    const auto fa = collect_faces(
        {&p1.essential, &p1.marginal, &p2.essential, &p2.marginal});
    std::vector<mat2> out;
    out.reserve(fa.size());
    for (const auto& [w, g] : fa) out.push_back(g);
    return out;
}

}  // namespace orthospec
