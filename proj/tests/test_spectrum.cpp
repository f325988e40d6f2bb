#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "orthospec/build.hpp"
#include "orthospec/covers.hpp"
#include "orthospec/identities.hpp"
#include "orthospec/ortho.hpp"
#include "orthospec/surface.hpp"

#include "oracles.hpp"

using namespace orthospec;

namespace {

// Distinct lengths with multiplicities, grouped at the given tolerance.
std::vector<std::pair<double, int>> grouped(const ortho_spectrum_t& sp,
                                            double tol = 1e-6) {
    std::vector<std::pair<double, int>> out;
    for (const auto& e : sp.entries) {
        if (out.empty() || e.length - out.back().first > tol)
            out.push_back({e.length, 1});
        else
            ++out.back().second;
    }
    return out;
}

// Lengths for one ordered boundary pair, sorted.
std::vector<double> pair_lengths(const ortho_spectrum_t& sp, int i, int j) {
    std::vector<double> v;
    for (const auto& e : sp.entries)
        if (e.i == i && e.j == j) v.push_back(e.length);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<double> pair_lengths(const std::vector<oracle::brute_entry>& es,
                                 int i, int j) {
    std::vector<double> v;
    for (const auto& e : es)
        if (e.i == i && e.j == j) v.push_back(e.length);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("ortho spectrum matches exact double-coset enumeration") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const double L = 5.0;

    // The word-algebra oracle must be internally stable under a larger
    // letter budget before it is allowed to judge the implementation.
    const auto brute6 = oracle::brute_orthos(s, 6, L);
    const auto brute7 = oracle::brute_orthos(s, 7, L);
    REQUIRE(brute6.size() == brute7.size());
    for (size_t k = 0; k < brute6.size(); ++k)
        CHECK(std::abs(brute6[k].length - brute7[k].length) <= 1e-12);

    const ortho_spectrum_t sp = ortho_spectrum(s, L);
    CHECK(sp.certificate.certified);
    REQUIRE(sp.size() == brute6.size());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto a = pair_lengths(sp, i, j);
            const auto b = pair_lengths(brute6, i, j);
            REQUIRE(a.size() == b.size());
            for (size_t k = 0; k < a.size(); ++k)
                CHECK(std::abs(a[k] - b[k]) <= 1e-9);
        }

    // Shape of the low spectrum: 6 boundary-to-boundary perpendiculars,
    // 6 around-the-cuff arcs, 12 at the next level.
    const auto g = grouped(sp);
    REQUIRE(g.size() == 3);
    CHECK(g[0].second == 6);
    CHECK(g[1].second == 6);
    CHECK(g[2].second == 12);
}

TEST_CASE("pants(2,2,2) spectrum at cutoff 10: frozen table") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const ortho_spectrum_t sp = ortho_spectrum(s, 10.0);
    CHECK(sp.certificate.certified);

    const auto g = grouped(sp);
    REQUIRE(g.size() == 16);
    for (size_t r = 0; r < 16; ++r) {
        CHECK(std::abs(g[r].first - oracle::p222_table_10[r].length) <=
              1e-5);
        CHECK(g[r].second == oracle::p222_table_10[r].mult);
    }

    // Basmajian partial sums, total and per boundary component.
    const identity_report rep = basmajian_check(s, sp);
    CHECK(std::abs(rep.partial_sum - oracle::p222_basm_10) <= 1e-9);
    REQUIRE(rep.per_boundary.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(rep.per_boundary[static_cast<size_t>(i)] -
                       oracle::p222_per_boundary_10[i]) <= 1e-9);
}

TEST_CASE("pants(2,2,2) at cutoff 12: count, Basmajian, Bridgeman") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const ortho_spectrum_t sp = ortho_spectrum(s, 12.0);
    CHECK(sp.size() == oracle::p222_count_12);

    const identity_report basm = basmajian_check(s, sp);
    CHECK(std::abs(basm.partial_sum - oracle::p222_basm_12) <= 1e-9);
    CHECK(basm.verdict);
    CHECK(std::abs(basm.target - 6.0) <= 1e-12);
    CHECK(basm.partial_sum < basm.target);
    CHECK(std::abs(basm.target - basm.partial_sum) <= basm.tail_bound);

    const identity_report brid = bridgeman_check(s, sp);
    CHECK(brid.verdict);
    // Target 2 pi |chi|; partial Rogers sum scaled by 2/pi.
    CHECK(std::abs(brid.target - 2.0 * 3.14159265358979323846) <= 1e-12);
    CHECK(std::abs(brid.partial_sum -
                   bridgeman_constant * oracle::p222_rogers_12) <= 1e-5);
    CHECK(std::abs(brid.target - brid.partial_sum) <= brid.tail_bound);

    // Too small a cutoff cannot support the tail fit: honest failure.
    const identity_report small = basmajian_check(s, ortho_spectrum(s, 3.0));
    CHECK_FALSE(small.verdict);
}

TEST_CASE("pants(1,2,3): per-boundary sums and lowest entries") {
    const fuchsian_surface s = build_pants(1.0, 2.0, 3.0);
    const identity_report rep = basmajian_check(s, ortho_spectrum(s, 12.0));
    REQUIRE(rep.per_boundary.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(rep.per_boundary[static_cast<size_t>(i)] -
                       oracle::p123_per_boundary_12[i]) <= 1e-5);
        CHECK(std::abs(rep.per_boundary_target[static_cast<size_t>(i)] -
                       static_cast<double>(i + 1)) <= 1e-12);
        CHECK(rep.per_boundary[static_cast<size_t>(i)] <
              rep.per_boundary_target[static_cast<size_t>(i)]);
    }

    const ortho_spectrum_t sp = ortho_spectrum(s, 4.0);
    const auto g = grouped(sp);
    REQUIRE(g.size() >= 3);
    CHECK(std::abs(g[0].first - oracle::p123_lowest[0]) <= 1e-9);
    CHECK(std::abs(g[1].first - oracle::p123_lowest[1]) <= 1e-5);
    CHECK(std::abs(g[2].first - oracle::p123_lowest[2]) <= 1e-5);
    // Oriented convention: each unoriented arc appears twice.
    CHECK(g[0].second == 2);
    CHECK(g[1].second == 2);
}

TEST_CASE("pants(1,1,1): counting function along integer cutoffs") {
    const fuchsian_surface s = build_pants(1.0, 1.0, 1.0);
    for (int L = 4; L <= 11; ++L) {
        const ortho_spectrum_t sp = ortho_spectrum(s, L);
        CHECK(sp.size() == oracle::p111_counts_4_to_11[L - 4]);
    }
    const identity_report rep = basmajian_check(s, ortho_spectrum(s, 11.0));
    CHECK(std::abs(rep.partial_sum - oracle::p111_basm_11) <= 1e-9);
    CHECK(std::abs(rep.target - 3.0) <= 1e-12);
}

TEST_CASE("one-holed torus: lowest entries and twist-sign symmetry") {
    const fuchsian_surface s = build_one_holed_torus(1.0, 0.3, 2.5);
    const ortho_spectrum_t sp = ortho_spectrum(s, 4.6);
    const auto g = grouped(sp);
    REQUIRE(g.size() >= 4);
    for (int r = 0; r < 4; ++r) {
        CHECK(std::abs(g[static_cast<size_t>(r)].first -
                       oracle::torus_lowest[r]) <= 1e-5);
        CHECK(g[static_cast<size_t>(r)].second == 2);
    }

    const fuchsian_surface m = build_one_holed_torus(1.0, -0.3, 2.5);
    const ortho_spectrum_t spm = ortho_spectrum(m, 8.0);
    const ortho_spectrum_t spp = ortho_spectrum(s, 8.0);
    const spectra_comparison cmp = compare_spectra(spp, spm, 1e-8);
    CHECK(cmp.isospectral);
    CHECK(cmp.count_a == cmp.count_b);
    CHECK(cmp.max_discrepancy <= 1e-8);
}

TEST_CASE("enumeration is bitwise deterministic") {
    const fuchsian_surface s = build_pants(1.3, 2.2, 3.1);
    const ortho_spectrum_t a = ortho_spectrum(s, 8.0);
    const ortho_spectrum_t b = ortho_spectrum(s, 8.0);
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a.entries[k].length == b.entries[k].length);
        CHECK(a.entries[k].foot_i == b.entries[k].foot_i);
        CHECK(a.entries[k].foot_j == b.entries[k].foot_j);
        CHECK(a.entries[k].i == b.entries[k].i);
        CHECK(a.entries[k].j == b.entries[k].j);
    }
}

TEST_CASE("entries carry verifiable canonical representatives") {
    const fuchsian_surface s = build_pants(1.3, 2.2, 3.1);
    const ortho_spectrum_t sp = ortho_spectrum(s, 6.0);
    REQUIRE(sp.size() > 0);
    size_t step = std::max<size_t>(1, sp.size() / 25);
    for (size_t k = 0; k < sp.size(); k += step) {
        const auto& e = sp.entries[k];
        const auto& bi = s.boundary[static_cast<size_t>(e.i)];
        const auto& bj = s.boundary[static_cast<size_t>(e.j)];
        CHECK(e.foot_i >= 0.0);
        CHECK(e.foot_i < bi.length);
        CHECK(e.foot_j >= 0.0);
        CHECK(e.foot_j < bj.length);

        // The representative reproduces the length...
        const geodesic lift = apply(e.representative, bj.axis_g);
        CHECK(std::abs(geodesic_distance(bi.axis_g, lift) - e.length) <=
              1e-9);
        // ...and both feet, with zero turns (canonical window).
        const auto fi = foot_on_boundary(bi, lift);
        REQUIRE(fi.has_value());
        CHECK(std::abs(fi->coord - e.foot_i) <= 1e-6);
        CHECK(fi->turns == 0);
        const auto fj = foot_on_boundary(
            bj, apply(e.representative.inverse(), bi.axis_g));
        REQUIRE(fj.has_value());
        CHECK(std::abs(fj->coord - e.foot_j) <= 1e-6);
        CHECK(fj->turns == 0);
    }
}

TEST_CASE("degenerate cutoffs and caps") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);

    const ortho_spectrum_t tiny = ortho_spectrum(s, 0.01);
    CHECK(tiny.size() == 0);
    CHECK(tiny.certificate.certified);

    CHECK_THROWS_AS(ortho_spectrum(s, -1.0), domain_error);

    ortho_options strangled;
    strangled.max_elements = 10;
    CHECK_THROWS_AS(ortho_spectrum(s, 4.0, strangled),
                    insufficient_data_error);
    strangled.allow_heuristic = true;
    CHECK_THROWS_AS(ortho_spectrum(s, 4.0, strangled),
                    insufficient_data_error);
}

TEST_CASE("heuristic fallback flags its certificate") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const double L = 4.0;

    // Smallest element cap under which the heuristic call succeeds: the
    // certified radius then still exceeds the cap, so the certificate must
    // be withdrawn.
    size_t lo = 8, hi = 4'000'000;
    ortho_options opt;
    opt.allow_heuristic = true;
    const auto succeeds = [&](size_t cap) {
        ortho_options o = opt;
        o.max_elements = cap;
        try {
            (void)ortho_spectrum(s, L, o);
            return true;
        } catch (const insufficient_data_error&) {
            return false;
        }
    };
    REQUIRE(succeeds(hi));
    REQUIRE_FALSE(succeeds(lo));
    while (hi - lo > 1) {
        const size_t mid = lo + (hi - lo) / 2;
        (succeeds(mid) ? hi : lo) = mid;
    }
    ortho_options at_threshold = opt;
    at_threshold.max_elements = hi;
    const ortho_spectrum_t sp = ortho_spectrum(s, L, at_threshold);
    CHECK_FALSE(sp.certificate.certified);
    CHECK(sp.certificate.ball_radius <
          ortho_spectrum(s, L).certificate.ball_radius);

    // The same cap without permission is an error, not a silent downgrade.
    ortho_options forbidden;
    forbidden.max_elements = hi;
    CHECK_THROWS_AS(ortho_spectrum(s, L, forbidden),
                    insufficient_data_error);
}

TEST_CASE("closed geodesics and systoles") {
    const fuchsian_surface p = build_pants(2.0, 2.0, 2.0);
    const auto short_list = closed_geodesics(p, 2.05);
    int at_two = 0;
    for (const auto& cg : short_list) {
        CHECK(cg.length >= 2.0 - 1e-9);
        CHECK(cg.primitive);
        if (std::abs(cg.length - 2.0) <= 1e-9) ++at_two;
    }
    CHECK(at_two == 3);  // exactly the three boundary classes
    // Squares of the boundary classes appear, flagged imprimitive.
    int imprimitive_4 = 0;
    for (const auto& cg : closed_geodesics(p, 4.05))
        if (!cg.primitive && std::abs(cg.length - 4.0) <= 1e-9)
            ++imprimitive_4;
    CHECK(imprimitive_4 == 3);

    CHECK(std::abs(systole(p, 4.0) - 2.0) <= 1e-10);

    const fuchsian_surface t = build_one_holed_torus(1.0, 0.3, 2.5);
    CHECK(std::abs(systole(t, 4.0) - 1.0) <= 1e-10);

    const fuchsian_surface x = build_special_X(4, 2.0);
    CHECK(std::abs(systole(x, 2.0) - std::acosh(1.5) / 4.0) <= 1e-12);

    CHECK_THROWS_AS(systole(build_pants(3.8, 3.8, 3.8), 0.5),
                    insufficient_data_error);
}

TEST_CASE("Bridgeman calibration recovers the frozen constant") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const calibration_result cal = calibrate_bridgeman(s, ortho_spectrum(s, 12.0));
    const double rel = std::abs(cal.c_hat - bridgeman_constant) /
                       bridgeman_constant;
    CHECK(rel <= 2e-3);
    CHECK(cal.delta_hat > 0.0);
    CHECK(cal.delta_hat < 1.0);
    CHECK(cal.spread < 0.05);
}
