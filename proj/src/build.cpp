// Fenchel-Nielsen constructors.
//
// Pants are built in a standard position: generator a translates along the
// imaginary axis by l1; generator b is the conjugate of a downward l2
// translation by the seam translation between cuffs 0 and 1, which makes
// tr(ab) = -2 cosh(l3/2) exact.  The one-holed torus glues cuffs 0 and 1 of
// pants(l_a, l_a, l_g) by B = twist * seam^-1, so the commutator boundary
// trace is exact as well.  Pants graphs position each pants by a gluing
// isometry along a spanning tree, add one stable letter per non-tree
// gluing, and reduce the redundant generating set to a free basis by
// solving each gluing relation for one pants generator (Tietze
// elimination); every relation is verified to evaluate to the identity
// matrix before it is consumed.

#include "orthospec/build.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <queue>
#include <string>

#include "orthospec/dirichlet.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/geodesic.hpp"
#include "orthospec/hyperboloid.hpp"
#include "orthospec/trig.hpp"
#include "orthospec/word.hpp"

namespace orthospec {

namespace {

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_length(double l, const char* what) {
    if (!(l > 0.0) || !std::isfinite(l))
        throw spec_error(std::string(what) + " must be positive and finite");
}

// A pants group in standard position, with the per-cuff data gluing needs.
struct std_pants {
    mat2 a, b;
    std::array<word, 3> cuff_words;   // over local letters (a=0, b=2)
    std::array<mat2, 3> cuff_mats;
    std::array<geodesic, 3> cuff_axes;
    std::array<mat2, 3> to_std;       // cuff axis -> (0, infinity)
    std::array<double, 3> mark;       // marked-point coordinate per cuff
    hpoint base;
};

std_pants make_std_pants(double l1, double l2, double l3) {
    std_pants P;
    P.a = mat2::axis_translation(l1);
    const mat2 T = mat2::seam_translation(pants_boundary_distance(l1, l2, l3));
    P.b = T * mat2::axis_translation(-l2) * T.inverse();
    P.cuff_words = {word{0}, word{2}, word{3, 1}};
    P.cuff_mats = {P.a, P.b, (P.a * P.b).inverse()};
    for (int c = 0; c < 3; ++c) {
        P.cuff_axes[c] = axis(P.cuff_mats[c]);
        P.to_std[c] = normalizer_to_std(P.cuff_axes[c]);
    }
    // Marked point on cuff c: foot of the seam towards cuff c+1.
    for (int c = 0; c < 3; ++c) {
        const hpoint f =
            perp_foot_on(P.cuff_axes[c], P.cuff_axes[(c + 1) % 3]);
        const hpoint fs = apply(P.to_std[c], f);
        P.mark[c] = 0.5 * std::log(fs.x * fs.x + fs.y * fs.y);
    }
    // Basepoint: circumcenter of the three seam midpoints (falls back to
    // the cuff-0/1 seam midpoint for degenerate configurations).
    std::array<hpoint, 3> mid;
    for (int c = 0; c < 3; ++c) {
        const int cn = (c + 1) % 3;
        const hpoint f1 = perp_foot_on(P.cuff_axes[c], P.cuff_axes[cn]);
        const hpoint f2 = perp_foot_on(P.cuff_axes[cn], P.cuff_axes[c]);
        mid[c] = midpoint(f1, f2);
    }
    const auto cc = circumcenter(mid[0], mid[1], mid[2]);
    P.base = cc ? *cc : mid[0];
    return P;
}

void finalize(fuchsian_surface& s) {
    certify_dirichlet(s);
    const auto rep = validate_surface(s);
    if (!rep.pass)
        throw construction_error("surface validation failed: " +
                                 (rep.failures.empty() ? std::string("?")
                                                       : rep.failures[0]));
}

}  // namespace

fuchsian_surface build_pants(double l1, double l2, double l3) {
    require_length(l1, "pants boundary length");
    require_length(l2, "pants boundary length");
    require_length(l3, "pants boundary length");
    const std_pants P = make_std_pants(l1, l2, l3);

    fuchsian_surface s;
    s.kind = "pants";
    s.spec_json = "{\"kind\":\"pants\",\"boundary_lengths\":[" + fmt_g(l1) +
                  "," + fmt_g(l2) + "," + fmt_g(l3) + "]}";
    s.alphabet = {P.a, P.a.inverse(), P.b, P.b.inverse()};
    s.gen_names = {"a", "b"};
    s.genus = 0;
    s.base = P.base;
    const double lens[3] = {l1, l2, l3};
    for (int c = 0; c < 3; ++c)
        s.boundary.push_back(
            make_boundary_component(s, P.cuff_words[c], lens[c]));
    finalize(s);
    return s;
}

fuchsian_surface build_one_holed_torus(double l_alpha, double twist,
                                       double l_gamma) {
    require_length(l_alpha, "interior curve length");
    require_length(l_gamma, "boundary length");
    if (!std::isfinite(twist)) throw spec_error("twist must be finite");

    const mat2 A = mat2::axis_translation(l_alpha);
    const double s_seam = pants_boundary_distance(l_alpha, l_alpha, l_gamma);
    const mat2 B0 = mat2::seam_translation(-s_seam);  // = seam^-1
    const mat2 B = twist_along(A, twist) * B0;

    fuchsian_surface s;
    s.kind = "one_holed_torus";
    s.spec_json =
        "{\"kind\":\"one_holed_torus\",\"boundary_lengths\":[" +
        fmt_g(l_gamma) + "],\"interior_curves\":[{\"length\":" +
        fmt_g(l_alpha) + ",\"twist\":" + fmt_g(twist) + "}]}";
    s.alphabet = {A, A.inverse(), B, B.inverse()};
    s.gen_names = {"a", "b"};
    s.genus = 1;
    s.base = {0.0, std::exp(l_alpha / 2.0)};  // midpoint of [i, A i]
    s.boundary.push_back(
        make_boundary_component(s, word{0, 2, 1, 3}, l_gamma));
    finalize(s);
    return s;
}

namespace {

// ---- pants graph machinery ----

struct glue_side {
    int pants, cuff;
};

struct edge_info {
    glue_side p, q;   // p is the tree-parent / already-positioned side
    double length, twist;
    bool tree{false};
    int stable{-1};   // index among stable letters (non-tree edges)
};

// Word over the combined alphabet: pants p local letter x -> 4p + x,
// stable letter j -> 4K + 2j (+1 for the inverse).
word combined(const word& local, int p) {
    word w = local;
    for (auto& x : w) x += 4 * p;
    return w;
}

struct eliminator {
    int num_gens;
    std::vector<std::optional<word>> expr;  // per gen, over combined letters

    explicit eliminator(int n) : num_gens(n), expr(n) {}

    bool resolved(int32_t letter) const {
        return expr[static_cast<size_t>(letter / 2)].has_value();
    }

    // Substitute resolved generators until none remain.  Terminates since
    // every expression only references generators resolved later (or
    // never), so each pass strictly advances the resolution time.
    word resolve(word w) const {
        for (;;) {
            bool changed = false;
            word out;
            for (const int32_t x : w) {
                const auto& e = expr[static_cast<size_t>(x / 2)];
                if (!e) {
                    out = concat_reduce(out, {x});
                } else {
                    changed = true;
                    out = concat_reduce(out,
                                        (x & 1) ? word_inverse(*e) : *e);
                }
            }
            w = std::move(out);
            if (!changed) return w;
        }
    }

    // Solve relation R = 1 for one unresolved generator occurring exactly
    // once; `penalty(gen)` breaks ties (prefer generators the remaining
    // relations do not need).  Returns false when no candidate exists.
    bool consume(const word& relation,
                 const std::vector<int>& penalty) {
        const word R = resolve(relation);
        std::vector<int> count(static_cast<size_t>(num_gens), 0);
        for (const int32_t x : R) ++count[static_cast<size_t>(x / 2)];
        int best = -1;
        for (int g = 0; g < num_gens; ++g) {
            if (expr[static_cast<size_t>(g)] || count[static_cast<size_t>(g)] != 1)
                continue;
            if (best < 0 ||
                penalty[static_cast<size_t>(g)] < penalty[static_cast<size_t>(best)])
                best = g;
        }
        if (best < 0) return false;
        std::size_t pos = 0;
        while (R[pos] / 2 != best) ++pos;
        const word u(R.begin(), R.begin() + static_cast<long>(pos));
        const word v(R.begin() + static_cast<long>(pos) + 1, R.end());
        // u x v = 1 -> x = u^-1 v^-1;   u x^-1 v = 1 -> x = v u.
        const word e = (R[pos] & 1) ? concat_reduce(v, u)
                                    : concat_reduce(word_inverse(u),
                                                    word_inverse(v));
        expr[static_cast<size_t>(best)] = free_reduce(e);
        return true;
    }
};

}  // namespace

fuchsian_surface build_from_pants_graph(const pants_graph_spec& spec) {
    const int K = spec.pants;
    if (K < 1 || K > 4)
        throw spec_error("pants graph: pants count must be in [1, 4]");
    if (spec.legs.empty())
        throw spec_error(
            "pants graph: at least one leg (free boundary) is required");

    // Cuff bookkeeping: every (pants, cuff) used exactly once.
    std::array<std::array<int, 3>, 4> use{};  // 0 free, 1 glued, 2 leg
    std::array<std::array<double, 3>, 4> len{};
    auto claim = [&](int p, int c, int what, double l, const char* ctx) {
        if (p < 0 || p >= K || c < 0 || c > 2)
            throw spec_error(std::string("pants graph: bad cuff reference in ") + ctx);
        if (use[static_cast<size_t>(p)][static_cast<size_t>(c)] != 0)
            throw spec_error(std::string("pants graph: cuff used twice in ") + ctx);
        require_length(l, "pants graph curve length");
        use[static_cast<size_t>(p)][static_cast<size_t>(c)] = what;
        len[static_cast<size_t>(p)][static_cast<size_t>(c)] = l;
    };
    for (const auto& g : spec.gluings) {
        if (g.pants_a == g.pants_b && g.cuff_a == g.cuff_b)
            throw spec_error("pants graph: cuff glued to itself");
        if (!std::isfinite(g.twist))
            throw spec_error("pants graph: twist must be finite");
        claim(g.pants_a, g.cuff_a, 1, g.length, "gluing");
        claim(g.pants_b, g.cuff_b, 1, g.length, "gluing");
    }
    for (const auto& l : spec.legs) claim(l.pants, l.cuff, 2, l.length, "leg");
    for (int p = 0; p < K; ++p)
        for (int c = 0; c < 3; ++c)
            if (use[static_cast<size_t>(p)][static_cast<size_t>(c)] == 0)
                throw spec_error("pants graph: unused cuff on pants " +
                                 std::to_string(p));

    // Standard pants and spanning-tree positioning from pants 0.
    std::vector<std_pants> sp;
    sp.reserve(static_cast<size_t>(K));
    for (int p = 0; p < K; ++p)
        sp.push_back(make_std_pants(len[static_cast<size_t>(p)][0],
                                    len[static_cast<size_t>(p)][1],
                                    len[static_cast<size_t>(p)][2]));

    const mat2 flip{0.0, -1.0, 1.0, 0.0};  // z -> -1/z, reverses (0, inf)
    auto gluer = [&](const glue_side& a, const glue_side& b, double twist) {
        // Maps b's standard coordinates so that cuff b lands on cuff a of
        // the pants already in standard coordinates, orientation reversed,
        // marked points offset by the twist.
        const auto& A = sp[static_cast<size_t>(a.pants)];
        const auto& B = sp[static_cast<size_t>(b.pants)];
        return A.to_std[static_cast<size_t>(a.cuff)].inverse() *
               mat2::axis_translation(A.mark[static_cast<size_t>(a.cuff)] + twist) *
               flip *
               mat2::axis_translation(-B.mark[static_cast<size_t>(b.cuff)]) *
               B.to_std[static_cast<size_t>(b.cuff)];
    };

    std::vector<std::optional<mat2>> pos(static_cast<size_t>(K));
    pos[0] = mat2::identity();
    std::vector<edge_info> edges;
    std::vector<char> used_edge(spec.gluings.size(), 0);
    // BFS tree in gluing-list order.
    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
        const int p = bfs.front();
        bfs.pop();
        for (std::size_t e = 0; e < spec.gluings.size(); ++e) {
            if (used_edge[e]) continue;
            const auto& g = spec.gluings[e];
            glue_side known{g.pants_a, g.cuff_a}, fresh{g.pants_b, g.cuff_b};
            if (known.pants != p) std::swap(known, fresh);
            if (known.pants != p || pos[static_cast<size_t>(fresh.pants)])
                continue;
            used_edge[e] = 1;
            pos[static_cast<size_t>(fresh.pants)] =
                *pos[static_cast<size_t>(p)] * gluer(known, fresh, g.twist);
            edges.push_back({known, fresh, g.length, g.twist, true, -1});
            bfs.push(fresh.pants);
        }
    }
    for (int p = 0; p < K; ++p)
        if (!pos[static_cast<size_t>(p)])
            throw spec_error("pants graph is disconnected");
    int stables = 0;
    for (std::size_t e = 0; e < spec.gluings.size(); ++e) {
        if (used_edge[e]) continue;
        const auto& g = spec.gluings[e];
        edges.push_back({{g.pants_a, g.cuff_a},
                         {g.pants_b, g.cuff_b},
                         g.length,
                         g.twist,
                         false,
                         stables++});
    }

    // Combined generating set: a_p, b_p per pants, then stable letters.
    const int num_gens = 2 * K + stables;
    std::vector<mat2> gen_mat(static_cast<size_t>(num_gens));
    for (int p = 0; p < K; ++p) {
        const mat2& M = *pos[static_cast<size_t>(p)];
        gen_mat[static_cast<size_t>(2 * p)] = M * sp[static_cast<size_t>(p)].a * M.inverse();
        gen_mat[static_cast<size_t>(2 * p + 1)] = M * sp[static_cast<size_t>(p)].b * M.inverse();
    }
    for (const auto& e : edges) {
        if (e.tree) continue;
        gen_mat[static_cast<size_t>(2 * K + e.stable)] =
            *pos[static_cast<size_t>(e.p.pants)] * gluer(e.p, e.q, e.twist) *
            pos[static_cast<size_t>(e.q.pants)]->inverse();
    }
    auto eval_combined = [&](const word& w) {
        mat2 m = mat2::identity();
        for (const int32_t x : w) {
            const mat2& g = gen_mat[static_cast<size_t>(x / 2)];
            m = m * ((x & 1) ? g.inverse() : g);
        }
        return m;
    };

    // Relations t w_q t^-1 w_p = 1 (t empty on tree edges), verified as
    // matrices, then consumed by elimination.
    eliminator el(num_gens);
    std::vector<word> relations;
    for (const auto& e : edges) {
        const word wp = combined(
            sp[static_cast<size_t>(e.p.pants)].cuff_words[static_cast<size_t>(e.p.cuff)],
            e.p.pants);
        const word wq = combined(
            sp[static_cast<size_t>(e.q.pants)].cuff_words[static_cast<size_t>(e.q.cuff)],
            e.q.pants);
        word r;
        if (!e.tree) r.push_back(2 * (2 * K + e.stable));
        r = concat_reduce(r, wq);
        if (!e.tree) r.push_back(2 * (2 * K + e.stable) + 1);
        r = concat_reduce(r, wp);
        const mat2 check = eval_combined(r);
        if (!same_isometry(check.canonical(), mat2::identity(), 1e-8))
            throw construction_error(
                "pants graph: gluing relation does not close");
        relations.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < relations.size(); ++i) {
        // Prefer eliminating generators the later relations never mention.
        std::vector<int> penalty(static_cast<size_t>(num_gens), 0);
        for (std::size_t j = i + 1; j < relations.size(); ++j)
            for (const int32_t x : relations[j])
                ++penalty[static_cast<size_t>(x / 2)];
        if (!el.consume(relations[i], penalty))
            throw construction_error(
                "pants graph: failed to reduce to a free basis");
    }

    // Free basis = unresolved generators, in combined order.
    std::vector<int> basis;
    for (int g = 0; g < num_gens; ++g)
        if (!el.expr[static_cast<size_t>(g)]) basis.push_back(g);
    const int expected_rank = 1 + K;
    if (static_cast<int>(basis.size()) != expected_rank)
        throw construction_error("pants graph: basis rank " +
                                 std::to_string(basis.size()) + " != " +
                                 std::to_string(expected_rank));
    std::vector<int> basis_pos(static_cast<size_t>(num_gens), -1);
    for (std::size_t j = 0; j < basis.size(); ++j)
        basis_pos[static_cast<size_t>(basis[j])] = static_cast<int>(j);
    auto reindex = [&](const word& w) {
        word out;
        out.reserve(w.size());
        for (const int32_t x : w) {
            const int bp = basis_pos[static_cast<size_t>(x / 2)];
            out.push_back(2 * bp + (x & 1));
        }
        return out;
    };

    fuchsian_surface s;
    s.kind = "pants_graph";
    {
        std::string j = "{\"kind\":\"pants_graph\",\"pants\":" +
                        std::to_string(K) + ",\"gluings\":[";
        for (std::size_t e = 0; e < spec.gluings.size(); ++e) {
            const auto& g = spec.gluings[e];
            if (e) j += ",";
            j += "{\"pants_a\":" + std::to_string(g.pants_a) +
                 ",\"cuff_a\":" + std::to_string(g.cuff_a) +
                 ",\"pants_b\":" + std::to_string(g.pants_b) +
                 ",\"cuff_b\":" + std::to_string(g.cuff_b) +
                 ",\"length\":" + fmt_g(g.length) +
                 ",\"twist\":" + fmt_g(g.twist) + "}";
        }
        j += "],\"legs\":[";
        for (std::size_t e = 0; e < spec.legs.size(); ++e) {
            const auto& l = spec.legs[e];
            if (e) j += ",";
            j += "{\"pants\":" + std::to_string(l.pants) +
                 ",\"cuff\":" + std::to_string(l.cuff) +
                 ",\"length\":" + fmt_g(l.length) + "}";
        }
        j += "]}";
        s.spec_json = std::move(j);
    }
    for (const int g : basis) {
        const mat2& m = gen_mat[static_cast<size_t>(g)];
        s.alphabet.push_back(m);
        s.alphabet.push_back(m.inverse());
        if (g < 2 * K)
            s.gen_names.push_back("p" + std::to_string(g / 2) +
                                  (g % 2 ? ".b" : ".a"));
        else
            s.gen_names.push_back("t" + std::to_string(g - 2 * K));
    }
    s.genus = 1 + static_cast<int>(spec.gluings.size()) - K;
    s.base = sp[0].base;  // pants 0 is positioned at the identity

    for (const auto& l : spec.legs) {
        const word local =
            sp[static_cast<size_t>(l.pants)].cuff_words[static_cast<size_t>(l.cuff)];
        const word w = reindex(el.resolve(combined(local, l.pants)));
        const mat2 direct = eval_combined(combined(local, l.pants));
        s.boundary.push_back(make_boundary_component(s, w, l.length));
        if (!same_isometry(s.boundary.back().holonomy, direct.canonical(),
                           1e-8 * std::max(1.0, std::abs(direct.a) +
                                                    std::abs(direct.d))))
            throw construction_error(
                "pants graph: boundary word disagrees with positioning");
    }
    finalize(s);
    return s;
}

fuchsian_surface build_from_spec(const surface_spec& spec) {
    if (spec.kind == "pants") {
        if (spec.boundary_lengths.size() != 3 ||
            !spec.interior_curves.empty())
            throw spec_error(
                "pants spec needs exactly 3 boundary lengths and no "
                "interior curves");
        return build_pants(spec.boundary_lengths[0], spec.boundary_lengths[1],
                           spec.boundary_lengths[2]);
    }
    if (spec.kind == "one_holed_torus") {
        if (spec.boundary_lengths.size() != 1 ||
            spec.interior_curves.size() != 1)
            throw spec_error(
                "one_holed_torus spec needs exactly 1 boundary length and 1 "
                "interior curve");
        return build_one_holed_torus(spec.interior_curves[0].length,
                                     spec.interior_curves[0].twist,
                                     spec.boundary_lengths[0]);
    }
    if (spec.kind == "pants_graph") {
        if (!spec.boundary_lengths.empty() || !spec.interior_curves.empty())
            throw spec_error(
                "pants_graph spec carries its data in the graph object");
        return build_from_pants_graph(spec.graph);
    }
    throw spec_error("unknown surface kind '" + spec.kind + "'");
}

}  // namespace orthospec
