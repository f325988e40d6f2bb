// Pruned BFS group balls with noise-tolerant exact deduplication.
//
// Deduplication keys are the four matrix entries quantized on a grid of
// 2^-26 relative to a power-of-two ceiling of the largest entry.  Rounding
// noise on recomputed group elements is ~1e-13 relative - five orders of
// magnitude below the grid - so a candidate and a stored duplicate can only
// disagree on a cell when the scaled value sits within 1e-3 of a cell wall,
// and those candidates probe both neighboring cells.  Membership is always
// confirmed entrywise inside the probed chains, so hash or cell collisions
// between distinct elements are harmless.  A missed merge (both straddle
// checks fail, possible only for adversarially aligned values) keeps a
// duplicate coset representative, which downstream tolerant spectrum
// deduplication absorbs; it never drops an element.

#include "orthospec/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "orthospec/errors.hpp"

namespace orthospec {

namespace {

uint64_t hash4(const int64_t k[4]) {
    uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < 4; ++i) {
        h ^= static_cast<uint64_t>(k[i]);
        h *= 1099511628211ull;
    }
    return h;
}

// Find-or-insert set of 4-double tuples tolerant to reconstruction noise.
// In relative mode the grid and the confirm tolerance scale with the tuple;
// in absolute mode (entries of magnitude <= 1) they are fixed.
class quad_set {
  public:
    quad_set(bool relative, double tol) : relative_(relative), tol_(tol) {}

    std::size_t size() const { return next_.size(); }

    // Index of a confirmed-equal stored tuple, or -1 after inserting the
    // candidate (whose index is then size() - 1).
    int64_t find_or_insert(const double m[4]) {
        double tol = tol_;
        double quantum = 0x1p-26;
        if (relative_) {
            double scale =
                std::max(std::max(std::abs(m[0]), std::abs(m[1])),
                         std::max(std::abs(m[2]), std::abs(m[3])));
            if (!(scale > 0)) scale = 1.0;
            int e = 0;
            std::frexp(scale, &e);
            const double pot = std::ldexp(1.0, e);  // power-of-two ceiling
            quantum = pot * 0x1p-26;
            tol = tol_ * pot;
        }
        int64_t cell[4];
        int amb_idx[4];
        int64_t amb_alt[4];
        int na = 0;
        for (int i = 0; i < 4; ++i) {
            const double r = m[i] / quantum;
            const long long k = std::llround(r);
            cell[i] = k;
            const double frac = r - static_cast<double>(k);
            if (std::abs(frac) > 0.5 - 1e-3) {
                amb_idx[na] = i;
                amb_alt[na] = k + (frac > 0 ? 1 : -1);
                ++na;
            }
        }
        int64_t probe[4];
        for (int mask = 0; mask < (1 << na); ++mask) {
            for (int i = 0; i < 4; ++i) probe[i] = cell[i];
            for (int t = 0; t < na; ++t)
                if ((mask >> t) & 1) probe[amb_idx[t]] = amb_alt[t];
            const auto it = head_.find(hash4(probe));
            if (it == head_.end()) continue;
            for (int32_t idx = it->second; idx >= 0; idx = next_[idx]) {
                const double* s = &vals_[4 * static_cast<size_t>(idx)];
                if (std::abs(s[0] - m[0]) <= tol &&
                    std::abs(s[1] - m[1]) <= tol &&
                    std::abs(s[2] - m[2]) <= tol &&
                    std::abs(s[3] - m[3]) <= tol)
                    return idx;
            }
        }
        const auto idx = static_cast<int32_t>(size());
        vals_.insert(vals_.end(), m, m + 4);
        auto [it, fresh] = head_.try_emplace(hash4(cell), idx);
        if (fresh) {
            next_.push_back(-1);
        } else {
            next_.push_back(it->second);
            it->second = idx;
        }
        return -1;
    }

  private:
    bool relative_;
    double tol_;
    std::vector<double> vals_;
    std::vector<int32_t> next_;
    std::unordered_map<uint64_t, int32_t> head_;
};

// Deterministic total order on (key, matrix) pairs.
struct keyed_mat {
    double key;
    mat2 m;
    std::size_t idx;
};

bool keyed_less(const keyed_mat& x, const keyed_mat& y) {
    if (x.key != y.key) return x.key < y.key;
    if (x.m.a != y.m.a) return x.m.a < y.m.a;
    if (x.m.b != y.m.b) return x.m.b < y.m.b;
    if (x.m.c != y.m.c) return x.m.c < y.m.c;
    return x.m.d < y.m.d;
}

}  // namespace

word ball_t::letters_of(std::size_t k) const {
    word path;
    auto cur = static_cast<int32_t>(k);
    while (parent[static_cast<size_t>(cur)] >= 0) {
        path.push_back(let[static_cast<size_t>(cur)]);
        cur = parent[static_cast<size_t>(cur)];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

word ball_t::word_of(std::size_t k,
                     const std::vector<word>& letter_words) const {
    word w;
    for (const int32_t x : letters_of(k))
        w = concat_reduce(w, letter_words[static_cast<size_t>(x)]);
    return w;
}

ball_t raw_ball(const std::vector<mat2>& alphabet, const hpoint& base,
                double radius, std::size_t max_elements) {
    ball_t ball;
    const double sy = std::sqrt(base.y);
    ball.conj = {1.0 / sy, -base.x / sy, 0.0, sy};
    ball.conj_inv = ball.conj.inverse();

    const std::size_t n = alphabet.size();
    std::vector<double> ga(n), gb(n), gc(n), gd(n);
    for (std::size_t k = 0; k < n; ++k) {
        const mat2 g = (ball.conj * alphabet[k] * ball.conj_inv).canonical();
        ga[k] = g.a;
        gb[k] = g.b;
        gc[k] = g.c;
        gd[k] = g.d;
    }

    const double cosh_r = std::cosh(radius);
    quad_set seen(true, 3e-12);
    {
        const double root[4] = {1.0, 0.0, 0.0, 1.0};
        seen.find_or_insert(root);
    }
    ball.a.push_back(1.0);
    ball.b.push_back(0.0);
    ball.c.push_back(0.0);
    ball.d.push_back(1.0);
    ball.disp.push_back(1.0);
    ball.parent.push_back(-1);
    ball.let.push_back(-1);

    const auto& fns = kernels::active();
    std::vector<double> oa(n), ob(n), oc(n), od(n), och(n);

    for (std::size_t cur = 0; cur < ball.size() && !ball.truncated; ++cur) {
        const double parent_m[4] = {ball.a[cur], ball.b[cur], ball.c[cur],
                                    ball.d[cur]};
        fns.mul_disp(parent_m, ga.data(), gb.data(), gc.data(), gd.data(), n,
                     oa.data(), ob.data(), oc.data(), od.data(), och.data());
        for (std::size_t k = 0; k < n; ++k) {
            if (!(och[k] <= cosh_r)) continue;  // NaN-safe prune
            const mat2 m = mat2{oa[k], ob[k], oc[k], od[k]}.canonical();
            const double tup[4] = {m.a, m.b, m.c, m.d};
            if (ball.size() >= max_elements) {
                ball.truncated = true;
                break;
            }
            if (seen.find_or_insert(tup) >= 0) continue;
            ball.a.push_back(m.a);
            ball.b.push_back(m.b);
            ball.c.push_back(m.c);
            ball.d.push_back(m.d);
            ball.disp.push_back(och[k]);
            ball.parent.push_back(static_cast<int32_t>(cur));
            ball.let.push_back(static_cast<int16_t>(k));
        }
    }
    return ball;
}

group_ball_result group_ball(const fuchsian_surface& s, double R,
                             std::size_t max_elements) {
    if (!s.dirichlet)
        throw certification_error(
            "group_ball: surface carries no Dirichlet certificate");
    const auto& cert = *s.dirichlet;

    std::vector<mat2> alphabet;
    std::vector<word> letter_words;
    alphabet.reserve(cert.faces.size());
    letter_words.reserve(cert.faces.size());
    for (const auto& f : cert.faces) {
        alphabet.push_back(f.g);
        letter_words.push_back(f.w);
    }

    const double prune = R + cert.rho + 0.5;
    const ball_t ball = raw_ball(alphabet, s.base, prune, max_elements);
    if (ball.truncated)
        throw insufficient_data_error(
            "group_ball: element cap " + std::to_string(max_elements) +
            " exceeded at BFS radius " + std::to_string(prune));

    const double keep = std::cosh(R) * (1.0 + 1e-12) + 1e-12;
    std::vector<keyed_mat> kept;
    for (std::size_t k = 0; k < ball.size(); ++k) {
        if (ball.disp[k] > keep) continue;
        kept.push_back({ball.disp[k], ball.original(k).canonical(), k});
    }
    std::sort(kept.begin(), kept.end(), keyed_less);

    group_ball_result out;
    out.elements.reserve(kept.size());
    out.words.reserve(kept.size());
    for (const auto& km : kept) {
        out.elements.push_back(km.m);
        out.words.push_back(ball.word_of(km.idx, letter_words));
    }
    return out;
}

tube_ball_result tube_ball(const fuchsian_surface& s, int i, double T,
                           std::size_t max_elements) {
    if (!s.dirichlet)
        throw certification_error(
            "tube_ball: surface carries no Dirichlet certificate");
    if (i < 0 || static_cast<size_t>(i) >= s.boundary.size())
        throw domain_error("tube_ball: boundary index out of range");
    const auto& cert = *s.dirichlet;
    const auto& bc = s.boundary[static_cast<size_t>(i)];
    const double ell = bc.length;
    const double half = ell / 2.0;

    // Standard coordinates of the axis: alphabet, basepoint, slide map.
    const mat2 C = bc.to_std;
    const mat2 Cinv = C.inverse();
    const std::size_t n = cert.faces.size();
    std::vector<double> ga(n), gb(n), gc(n), gd(n);
    for (std::size_t k = 0; k < n; ++k) {
        const mat2 g = (C * cert.faces[k].g * Cinv).canonical();
        ga[k] = g.a;
        gb[k] = g.b;
        gc[k] = g.c;
        gd[k] = g.d;
    }
    const hpoint o_std = apply(C, s.base);
    const double ox = o_std.x, oy = o_std.y;

    const double d_o_axis = std::asinh(std::abs(ox) / oy);
    const double t_prune = std::max(T, d_o_axis) + cert.rho + 0.5;
    const double sinh_tp = std::sinh(t_prune);

    std::vector<double> va, vb, vc, vd, vsd;
    quad_set seen(true, 3e-12);
    bool truncated = false;

    // Slide-normalize m (std coordinates) given z = m applied to o_std;
    // returns false if the candidate is pruned or already present.
    auto admit = [&](double a, double b, double c, double d) {
        const double e = c * ox + d;
        const double f = c * oy;
        const double den = e * e + f * f;
        const double det = a * d - b * c;
        const double x = ((a * ox + b) * e + a * c * oy * oy) / den;
        const double y = det * oy / den;
        if (!(y > 0.0)) return;
        const double ax = std::abs(x);
        if (!(ax <= y * sinh_tp)) return;  // NaN-safe tube prune
        const double sd = ax / y;
        // Slide by the exact row scaling of h_std^-k, k = floor(t / ell).
        const double t = 0.5 * std::log(x * x + y * y);
        const double k = std::floor(t / ell);
        const double u = std::exp(-k * half);
        mat2 m{a * u, b * u, c / u, d / u};
        m = m.canonical();
        const double tup[4] = {m.a, m.b, m.c, m.d};
        if (va.size() >= max_elements) {
            truncated = true;
            return;
        }
        if (seen.find_or_insert(tup) >= 0) return;
        va.push_back(m.a);
        vb.push_back(m.b);
        vc.push_back(m.c);
        vd.push_back(m.d);
        vsd.push_back(sd);
    };

    admit(1.0, 0.0, 0.0, 1.0);

    const auto& fns = kernels::active();
    std::vector<double> oa(n), ob(n), oc(n), od(n), och(n);
    for (std::size_t cur = 0; cur < va.size() && !truncated; ++cur) {
        const double parent_m[4] = {va[cur], vb[cur], vc[cur], vd[cur]};
        fns.mul_disp(parent_m, ga.data(), gb.data(), gc.data(), gd.data(), n,
                     oa.data(), ob.data(), oc.data(), od.data(), och.data());
        for (std::size_t k = 0; k < n && !truncated; ++k)
            admit(oa[k], ob[k], oc[k], od[k]);
    }
    if (truncated)
        throw insufficient_data_error(
            "tube_ball: element cap " + std::to_string(max_elements) +
            " exceeded at tube radius " + std::to_string(t_prune));

    const double keep = std::sinh(T) * (1.0 + 1e-12) + 1e-12;
    std::vector<keyed_mat> kept;
    for (std::size_t k = 0; k < va.size(); ++k) {
        if (vsd[k] > keep) continue;
        const mat2 m_std{va[k], vb[k], vc[k], vd[k]};
        kept.push_back({vsd[k], (Cinv * m_std * C).canonical(), k});
    }
    std::sort(kept.begin(), kept.end(), keyed_less);

    tube_ball_result out;
    out.elements.reserve(kept.size());
    out.sinh_dist.reserve(kept.size());
    for (const auto& km : kept) {
        out.elements.push_back(km.m);
        out.sinh_dist.push_back(km.key);
    }
    return out;
}

std::vector<boundary_lift> boundary_lifts(const fuchsian_surface& s,
                                          double R) {
    const auto ball = group_ball(s, R);
    std::vector<boundary_lift> out;
    // Endpoints are unit-normalized, so fixed-scale keys apply; distinct
    // lifts inside the radii this is used at are separated by far more than
    // the 1e-10 confirm tolerance.
    quad_set seen(false, 1e-10);
    for (const mat2& g : ball.elements) {
        for (std::size_t i = 0; i < s.boundary.size(); ++i) {
            const geodesic lift = apply(g, s.boundary[i].axis_g);
            const auto& p = lift.p;
            const auto& q = lift.q;
            const bool p_first = p.u < q.u || (p.u == q.u && p.v <= q.v);
            const double key[4] = {p_first ? p.u : q.u, p_first ? p.v : q.v,
                                   p_first ? q.u : p.u, p_first ? q.v : p.v};
            if (seen.find_or_insert(key) < 0)
                out.push_back({lift, static_cast<int>(i), g});
        }
    }
    return out;
}

}  // namespace orthospec
