#include "orthospec/covers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "orthospec/build.hpp"
#include "orthospec/dirichlet.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/mat2.hpp"

namespace orthospec {

namespace {

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int letter_image(const coset_table& ct, int32_t x) {
    const int q = ct.images[static_cast<size_t>(x / 2)];
    return (x & 1) ? (ct.modulus - q) % ct.modulus : q;
}

}  // namespace

coset_table subgroup_from_cyclic_hom(int num_generators,
                                     const std::vector<int>& images,
                                     int modulus) {
    if (num_generators < 1)
        throw spec_error("cyclic cover: generator count must be positive");
    if (modulus < 1)
        throw spec_error("cyclic cover: modulus must be positive");
    if (static_cast<int>(images.size()) != num_generators)
        throw spec_error(
            "cyclic cover: one generator image per generator required");

    coset_table ct;
    ct.modulus = modulus;
    ct.images.reserve(images.size());
    int g = modulus;
    for (const int q : images) {
        const int qn = ((q % modulus) + modulus) % modulus;
        ct.images.push_back(qn);
        g = std::gcd(g, qn);
    }
    if (g != 1)
        throw construction_error(
            "cyclic cover: generator images do not generate Z/" +
            std::to_string(modulus) + " (the cover would be disconnected)");

    const int n = modulus;
    const int r = num_generators;

    // Shortlex BFS transversal; tree edges recorded as (coset, generator).
    ct.transversal.assign(static_cast<size_t>(n), word{});
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::vector<std::vector<char>> is_tree(
        static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(r), 0));
    seen[0] = 1;
    std::vector<int> order{0};
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int c = order[head];
        for (int32_t x = 0; x < 2 * r; ++x) {
            const int cc = (c + letter_image(ct, x)) % n;
            if (seen[static_cast<size_t>(cc)]) continue;
            seen[static_cast<size_t>(cc)] = 1;
            ct.transversal[static_cast<size_t>(cc)] =
                concat_reduce(ct.transversal[static_cast<size_t>(c)], {x});
            // A tree edge silences s_{c,t} (generator letter) or
            // s_{cc,t} (inverse letter: t_cc x_t = t_c).
            if ((x & 1) == 0)
                is_tree[static_cast<size_t>(c)][static_cast<size_t>(x / 2)] = 1;
            else
                is_tree[static_cast<size_t>(cc)][static_cast<size_t>(x / 2)] = 1;
            order.push_back(cc);
        }
    }

    ct.gen_index.assign(static_cast<size_t>(n),
                        std::vector<int>(static_cast<size_t>(r), -1));
    for (int c = 0; c < n; ++c) {
        for (int t = 0; t < r; ++t) {
            if (is_tree[static_cast<size_t>(c)][static_cast<size_t>(t)])
                continue;
            const int cc = (c + ct.images[static_cast<size_t>(t)]) % n;
            word s = concat_reduce(ct.transversal[static_cast<size_t>(c)],
                                   {2 * t});
            s = concat_reduce(
                s, word_inverse(ct.transversal[static_cast<size_t>(cc)]));
            if (s.empty())
                throw construction_error(
                    "cyclic cover: non-tree Schreier generator collapsed");
            ct.gen_index[static_cast<size_t>(c)][static_cast<size_t>(t)] =
                static_cast<int>(ct.cover_gen.size());
            ct.cover_gen.emplace_back(c, t);
            ct.schreier_words.push_back(std::move(s));
        }
    }
    const int expected = n * (r - 1) + 1;
    if (static_cast<int>(ct.cover_gen.size()) != expected)
        throw construction_error(
            "cyclic cover: Schreier basis rank " +
            std::to_string(ct.cover_gen.size()) + " != " +
            std::to_string(expected));
    return ct;
}

word rewrite_in_cover(const coset_table& ct, const word& base_word) {
    const int n = ct.modulus;
    word out;
    int c = 0;
    for (const int32_t x : base_word) {
        const int t = x / 2;
        if ((x & 1) == 0) {
            const int m = ct.gen_index[static_cast<size_t>(c)]
                                      [static_cast<size_t>(t)];
            if (m >= 0) out = concat_reduce(out, {2 * m});
            c = (c + letter_image(ct, x)) % n;
        } else {
            c = (c + letter_image(ct, x)) % n;
            const int m = ct.gen_index[static_cast<size_t>(c)]
                                      [static_cast<size_t>(t)];
            if (m >= 0) out = concat_reduce(out, {2 * m + 1});
        }
    }
    if (c != 0)
        throw construction_error(
            "cyclic cover: word to rewrite is not in the kernel");
    return out;
}

fuchsian_surface cyclic_cover(const fuchsian_surface& base,
                              const std::vector<int>& images, int modulus) {
    if (modulus == 1) return base;
    const auto ct =
        subgroup_from_cyclic_hom(base.num_generators(), images, modulus);
    const int n = modulus;

    fuchsian_surface s;
    s.kind = "cyclic_cover";
    {
        std::string j = "{\"kind\":\"cyclic_cover\",\"base\":" +
                        base.spec_json + ",\"images\":[";
        for (std::size_t t = 0; t < ct.images.size(); ++t) {
            if (t) j += ",";
            j += std::to_string(ct.images[t]);
        }
        j += "],\"modulus\":" + std::to_string(n) + "}";
        s.spec_json = std::move(j);
    }
    s.base = base.base;
    for (std::size_t m = 0; m < ct.cover_gen.size(); ++m) {
        const mat2 g = base.evaluate(ct.schreier_words[m]).canonical();
        s.alphabet.push_back(g);
        s.alphabet.push_back(g.inverse());
        const auto [c, t] = ct.cover_gen[m];
        s.gen_names.push_back(base.gen_names[static_cast<size_t>(t)] + "." +
                              std::to_string(c));
    }

    // Boundary circles: orbits of c -> c + phi(w), smallest coset first.
    int circles = 0;
    for (const auto& bc : base.boundary) {
        int q = 0;
        for (const int32_t x : bc.bword) q = (q + letter_image(ct, x)) % n;
        const int d = std::gcd(q == 0 ? n : q, n);
        const int ord = n / d;
        word w_ord;
        for (int rep = 0; rep < ord; ++rep)
            w_ord = concat_reduce(w_ord, bc.bword);
        for (int c = 0; c < d; ++c) {
            // The orbit of c under +q consists of the cosets congruent to
            // c mod d; its smallest member is c itself.
            word u = concat_reduce(ct.transversal[static_cast<size_t>(c)],
                                   w_ord);
            u = concat_reduce(
                u, word_inverse(ct.transversal[static_cast<size_t>(c)]));
            const word w_cover = rewrite_in_cover(ct, u);
            s.boundary.push_back(make_boundary_component(
                s, w_cover, bc.spec_length * ord));
            ++circles;
        }
    }

    // chi multiplies by the degree; solve for the genus.
    const int chi = n * base.euler_characteristic();
    const int genus2 = 2 - circles - chi;
    if (genus2 < 0 || genus2 % 2 != 0)
        throw construction_error("cyclic cover: impossible Euler data");
    s.genus = genus2 / 2;

    certify_dirichlet(s);
    const auto rep = validate_surface(s);
    if (!rep.pass)
        throw construction_error(
            "cyclic cover: validation failed: " +
            (rep.failures.empty() ? std::string("?") : rep.failures[0]));
    return s;
}

fuchsian_surface build_special_X(int n, double l_gamma) {
    if (n < 1) throw spec_error("special X: n must be positive");
    if (!(l_gamma > 0) || !std::isfinite(l_gamma))
        throw spec_error("special X: boundary length must be positive");
    const double l_alpha = std::acosh(1.5) / static_cast<double>(n);
    fuchsian_surface s = build_one_holed_torus(l_alpha, 0.0, l_gamma);
    s.kind = "special_x";
    s.spec_json = "{\"kind\":\"special_x\",\"n\":" + std::to_string(n) +
                  ",\"l_gamma\":" + fmt_g(l_gamma) + "}";
    return s;
}

fuchsian_surface cover_family(const fuchsian_surface& base, int k, int m) {
    if (k < 0 || m < 0 || m > k)
        throw spec_error("cover family: need 0 <= m <= k");
    if (base.kind != "special_x")
        throw spec_error("cover family: base must be a special X surface");
    const int n = 1 << k;
    // The base records its pinching parameter in the spec; re-derive it
    // from the interior curve length and cross-check against 2^k.
    const double l_alpha = translation_length(base.letter(0));
    const int n_base = static_cast<int>(
        std::llround(std::acosh(1.5) / l_alpha));
    if (n_base != n)
        throw spec_error("cover family: base is X(" +
                         std::to_string(n_base) + "), expected X(" +
                         std::to_string(n) + ")");

    fuchsian_surface s =
        cyclic_cover(base, {(1 << m) % n, 1 % n}, n);
    s.kind = "cover_family";
    s.spec_json = "{\"kind\":\"cover_family\",\"base\":" + base.spec_json +
                  ",\"k\":" + std::to_string(k) +
                  ",\"m\":" + std::to_string(m) + "}";
    return s;
}

}  // namespace orthospec
