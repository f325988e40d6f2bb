#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "orthospec/geodesic.hpp"
#include "orthospec/hyperboloid.hpp"
#include "orthospec/identities.hpp"
#include "orthospec/kernels.hpp"
#include "orthospec/mat2.hpp"
#include "orthospec/trig.hpp"

#include "oracles.hpp"

using namespace orthospec;

namespace {

constexpr double pi = 3.14159265358979323846;

// Random hyperbolic element as a product of axis/seam translations; the
// trace condition is rechecked because short products can come out close
// to parabolic.
mat2 random_hyperbolic(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> len(0.3, 2.5);
    std::uniform_int_distribution<int> nfac(2, 5);
    for (;;) {
        mat2 g = mat2::identity();
        const int n = nfac(rng);
        for (int i = 0; i < n; ++i) {
            g = g * (i % 2 == 0 ? mat2::axis_translation(len(rng))
                                : mat2::seam_translation(len(rng)));
        }
        if (std::abs(g.trace()) > 2.05 && std::abs(g.c) > 1e-6)
            return g.canonical();
    }
}

// Disjoint geodesic pair over four sorted reals: side-by-side or nested.
std::pair<geodesic, geodesic> random_disjoint(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> real(-5.0, 5.0);
    for (;;) {
        double t[4] = {real(rng), real(rng), real(rng), real(rng)};
        std::sort(t, t + 4);
        if (t[1] - t[0] < 1e-3 || t[2] - t[1] < 1e-3 || t[3] - t[2] < 1e-3)
            continue;
        if (rng() % 2 == 0) return {geodesic(t[0], t[1]), geodesic(t[2], t[3])};
        return {geodesic(t[0], t[3]), geodesic(t[1], t[2])};
    }
}

bool bp_close(const boundary_point& a, const boundary_point& b, double tol) {
    return (std::abs(a.u - b.u) <= tol && std::abs(a.v - b.v) <= tol) ||
           (std::abs(a.u + b.u) <= tol && std::abs(a.v + b.v) <= tol);
}

}  // namespace

TEST_CASE("mat2 algebra and canonical sign") {
    const mat2 t = mat2::axis_translation(1.4);
    CHECK(std::abs(t.det() - 1.0) <= 1e-15);
    CHECK((t * t.inverse()).is_identity(1e-15));
    CHECK(std::abs(translation_length(t) - 1.4) <= 1e-14);

    const mat2 s = mat2::seam_translation(0.9);
    CHECK(std::abs(s.det() - 1.0) <= 1e-15);
    CHECK(std::abs(translation_length(s) - 0.9) <= 1e-14);

    // Canonical representative flips negative traces and is idempotent.
    const mat2 neg = t.negated();
    CHECK(neg.canonical().a == t.a);
    CHECK(t.canonical().a == t.a);
    CHECK(same_isometry(neg, t, 1e-15));

    CHECK(std::abs(mat2::identity().displacement_cosh() - 1.0) <= 1e-15);
    CHECK(classify(t) == isometry_kind::hyperbolic);
    CHECK(classify(mat2::identity()) == isometry_kind::identity);
    CHECK(classify(mat2{1.0, 1.0, 0.0, 1.0}) == isometry_kind::parabolic);
    CHECK(classify(mat2{0.0, -1.0, 1.0, 0.0}) == isometry_kind::elliptic);
}

TEST_CASE("axis endpoints are the Mobius fixed points") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        const mat2 g = random_hyperbolic(rng);
        const geodesic ax = axis(g);
        // Fixed points from the quadratic c x^2 + (d - a) x - b = 0.
        const double disc = std::sqrt((g.d - g.a) * (g.d - g.a) +
                                      4.0 * g.b * g.c);
        const double x1 = (g.a - g.d - disc) / (2.0 * g.c);
        const double x2 = (g.a - g.d + disc) / (2.0 * g.c);
        const double pv = ax.p.value(), qv = ax.q.value();
        const double lo = std::min(x1, x2), hi = std::max(x1, x2);
        CHECK(std::min(pv, qv) ==
              doctest::Approx(lo).epsilon(1e-9).scale(1.0 + std::abs(lo)));
        CHECK(std::max(pv, qv) ==
              doctest::Approx(hi).epsilon(1e-9).scale(1.0 + std::abs(hi)));
        // The axis is invariant and its orientation survives the action.
        const geodesic gax = apply(g, ax);
        CHECK(bp_close(gax.p, ax.p, 1e-9));
        CHECK(bp_close(gax.q, ax.q, 1e-9));
    }
}

TEST_CASE("translation length against displacement on the axis") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 50; ++it) {
        const mat2 g = random_hyperbolic(rng);
        // Apex of the axis half-circle, computed from the fixed-point
        // quadratic (not from axis()).
        const double disc = std::sqrt((g.d - g.a) * (g.d - g.a) +
                                      4.0 * g.b * g.c);
        const double x1 = (g.a - g.d - disc) / (2.0 * g.c);
        const double x2 = (g.a - g.d + disc) / (2.0 * g.c);
        const hpoint z{(x1 + x2) / 2.0, std::abs(x2 - x1) / 2.0};
        const double on_axis = dist(z, apply(g, z));
        CHECK(std::abs(on_axis - translation_length(g)) <= 1e-9);
        // Any off-axis point is displaced strictly farther.
        const hpoint w{z.x + 0.7, z.y};
        CHECK(dist(w, apply(g, w)) > on_axis);
    }
}

TEST_CASE("twist_along") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 30; ++it) {
        const mat2 g = random_hyperbolic(rng);
        const double l = translation_length(g);

        CHECK(twist_along(g, 0.0).is_identity(1e-12));
        CHECK(same_isometry(twist_along(g, l), g, 1e-9 * (1.0 + std::abs(g.trace()))));

        // Additivity along the axis.
        const double s = 0.37, t = 1.21;
        const mat2 both = twist_along(g, s) * twist_along(g, t);
        CHECK(approx_equal(both.canonical(), twist_along(g, s + t).canonical(),
                           1e-10 * (1.0 + std::abs(both.trace()))));

        // Conjugation equivariance.
        const mat2 h = random_hyperbolic(rng);
        const mat2 lhs = (h * twist_along(g, t) * h.inverse()).canonical();
        const mat2 rhs = twist_along(h * g * h.inverse(), t).canonical();
        CHECK(approx_equal(lhs, rhs, 1e-10 * (1.0 + std::abs(lhs.trace()))));

        // Same oriented axis for t > 0, reversed for t < 0.
        const geodesic ax = axis(g);
        const geodesic axp = axis(twist_along(g, 0.8));
        CHECK(bp_close(axp.p, ax.p, 1e-9));
        CHECK(bp_close(axp.q, ax.q, 1e-9));
        const geodesic axm = axis(twist_along(g, -0.8));
        CHECK(bp_close(axm.p, ax.q, 1e-9));
        CHECK(bp_close(axm.q, ax.p, 1e-9));

        CHECK(std::abs(translation_length(twist_along(g, 0.8)) - 0.8) <= 1e-10);
    }
}

TEST_CASE("perpendicular invariant against endpoint-transport oracle") {
    std::mt19937_64 rng(14);
    for (int it = 0; it < 100; ++it) {
        const auto [a, b] = random_disjoint(rng);
        const double d_lib = geodesic_distance(a, b);
        const double d_orc = oracle::perp_distance(a, b);
        CHECK(std::abs(d_lib - d_orc) <= 1e-10);
        // Symmetry and orientation independence.
        CHECK(std::abs(geodesic_distance(b, a) - d_lib) <= 1e-12);
        CHECK(std::abs(geodesic_distance(a.reversed(), b) - d_lib) <= 1e-12);
    }

    // Pairs involving the point at infinity.
    const geodesic vert(boundary_point::from_real(0.0),
                        boundary_point::infinity());
    const geodesic right(2.0, 4.0);
    CHECK(std::abs(geodesic_distance(vert, right) -
                   oracle::perp_distance(vert, right)) <= 1e-12);
}

TEST_CASE("geodesic distance on concentric half-circles") {
    // (-1,1) to (-R,R) is at distance log R.
    CHECK(std::abs(geodesic_distance(geodesic(-1.0, 1.0),
                                     geodesic(-std::exp(1.0), std::exp(1.0))) -
                   1.0) <= 1e-12);
    for (double r : {1.5, 3.0, 20.0}) {
        CHECK(std::abs(geodesic_distance(geodesic(-1.0, 1.0),
                                         geodesic(-r, r)) -
                       std::log(r)) <= 1e-12);
    }
}

TEST_CASE("crossing and asymptotic configurations are errors") {
    CHECK_THROWS_AS(geodesic_distance(geodesic(-1.0, 1.0), geodesic(0.0, 2.0)),
                    intersecting_error);
    CHECK_THROWS_AS(geodesic_distance(geodesic(-1.0, 1.0), geodesic(1.0, 3.0)),
                    asymptotic_error);
    CHECK(relate(geodesic(-1.0, 1.0), geodesic(0.0, 2.0)) ==
          geodesic_relation::crossing);
    CHECK(relate(geodesic(-1.0, 1.0), geodesic(1.0, 3.0)) ==
          geodesic_relation::asymptotic);
    CHECK(relate(geodesic(-1.0, 1.0), geodesic(2.0, 3.0)) ==
          geodesic_relation::disjoint);
}

TEST_CASE("cross ratio is a Mobius invariant") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> real(-4.0, 4.0);
    for (int it = 0; it < 50; ++it) {
        double t[4] = {real(rng), real(rng), real(rng), real(rng)};
        std::sort(t, t + 4);
        if (t[1] - t[0] < 1e-2 || t[2] - t[1] < 1e-2 || t[3] - t[2] < 1e-2)
            continue;
        const boundary_point a = boundary_point::from_real(t[0]);
        const boundary_point b = boundary_point::from_real(t[1]);
        const boundary_point c = boundary_point::from_real(t[2]);
        const boundary_point d = boundary_point::from_real(t[3]);
        const mat2 g = random_hyperbolic(rng);
        const double before = cross_ratio(a, b, c, d);
        const double after = cross_ratio(apply(g, a), apply(g, b),
                                         apply(g, c), apply(g, d));
        CHECK(std::abs(after - before) <= 1e-10 * (1.0 + std::abs(before)));
    }
    // Cross ratio with one point at infinity reduces to (b-c)/(b-d)... with
    // the a-factors cancelled; spot value ((a-c)(b-d))/((a-d)(b-c)).
    const double v = cross_ratio(boundary_point::infinity(),
                                 boundary_point::from_real(1.0),
                                 boundary_point::from_real(2.0),
                                 boundary_point::from_real(3.0));
    CHECK(std::abs(v - (1.0 - 3.0) / (1.0 - 2.0)) <= 1e-14);
    const boundary_point p0 = boundary_point::from_real(0.0);
    CHECK_THROWS_AS(cross_ratio(p0, boundary_point::from_real(1.0),
                                boundary_point::from_real(2.0), p0),
                    domain_error);
}

TEST_CASE("normalizer_to_std maps endpoints to 0 and infinity") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> real(-5.0, 5.0);
    for (int it = 0; it < 50; ++it) {
        double x = real(rng), y = real(rng);
        if (std::abs(x - y) < 1e-2) continue;
        const geodesic a(x, y);
        const mat2 m = normalizer_to_std(a);
        CHECK(std::abs(m.det() - 1.0) <= 1e-12);
        const boundary_point p = apply(m, a.p), q = apply(m, a.q);
        CHECK(std::abs(p.u) <= 1e-10);  // image 0 = (0 : 1)
        CHECK(std::abs(q.v) <= 1e-10);  // image infinity = (1 : 0)
    }
    // Geodesic already ending at infinity.
    const geodesic vert(boundary_point::from_real(2.0),
                        boundary_point::infinity());
    const mat2 m = normalizer_to_std(vert);
    CHECK(std::abs(apply(m, vert.p).u) <= 1e-12);
    CHECK(apply(m, vert.q).is_infinity(1e-12));
}

TEST_CASE("hyperboloid model consistency") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> rx(-3.0, 3.0), ry(0.1, 4.0);
    for (int it = 0; it < 50; ++it) {
        const hpoint a{rx(rng), ry(rng)}, b{rx(rng), ry(rng)};
        // Half-plane distance vs Minkowski pairing of the lifts.
        CHECK(std::abs(std::cosh(dist(a, b)) - cosh_dist(lift(a), lift(b))) <=
              1e-12 * cosh_dist(lift(a), lift(b)));
        // Midpoint is equidistant and lies between.
        const hpoint m = midpoint(a, b);
        CHECK(std::abs(dist(a, m) - dist(b, m)) <= 1e-11);
        CHECK(std::abs(dist(a, m) + dist(m, b) - dist(a, b)) <= 1e-10);
        // Lift/unlift round trip.
        const hpoint r = unlift(lift(a));
        CHECK(std::abs(r.x - a.x) <= 1e-13 * (1.0 + std::abs(a.x)));
        CHECK(std::abs(r.y - a.y) <= 1e-13 * (1.0 + a.y));
    }

    // Signed distance to a geodesic: sign tracks the side, magnitude the
    // distance; checked against the vertical-axis closed form
    // sinh d((x,y), axis) = x / y.
    const geodesic up(boundary_point::from_real(0.0),
                      boundary_point::infinity());
    const vec3 pol = polar(up);
    for (double x : {-1.3, -0.2, 0.4, 2.0}) {
        const hpoint z{x, 0.8};
        const double sd = signed_sinh_dist(lift(z), pol);
        CHECK(std::abs(std::abs(sd) - std::abs(x) / 0.8) <= 1e-12);
        CHECK(std::abs(dist_point_geodesic(z, up) -
                       std::asinh(std::abs(x) / 0.8)) <= 1e-12);
        // polar() is oriented: left of 0 -> infinity is x < 0.
        CHECK((x < 0) == (sd > 0));
    }

    // Perpendicular feet: on the axis, and realizing the distance.
    std::mt19937_64 rng2(18);
    for (int it = 0; it < 50; ++it) {
        const auto [a, b] = random_disjoint(rng2);
        const hpoint fa = perp_foot_on(a, b), fb = perp_foot_on(b, a);
        CHECK(dist_point_geodesic(fa, a) <= 1e-9);
        CHECK(dist_point_geodesic(fb, b) <= 1e-9);
        CHECK(std::abs(dist(fa, fb) - geodesic_distance(a, b)) <= 1e-9);
    }

    // Circumcenter equidistance.
    const hpoint ca{0.0, 1.0}, cb{1.0, 1.5}, cc{-0.7, 2.2};
    const auto cen = circumcenter(ca, cb, cc);
    REQUIRE(cen.has_value());
    CHECK(std::abs(dist(*cen, ca) - dist(*cen, cb)) <= 1e-11);
    CHECK(std::abs(dist(*cen, ca) - dist(*cen, cc)) <= 1e-11);
}

TEST_CASE("SIMD kernels match the scalar reference bit for bit") {
    using namespace orthospec::kernels;
    std::mt19937_64 rng(19);

    const std::size_t n = 257;  // odd length exercises the vector tail
    std::vector<double> ga(n), gb(n), gc(n), gd(n);
    std::vector<mat2> gens(n);
    for (std::size_t k = 0; k < n; ++k) {
        gens[k] = random_hyperbolic(rng);
        ga[k] = gens[k].a;
        gb[k] = gens[k].b;
        gc[k] = gens[k].c;
        gd[k] = gens[k].d;
    }
    const mat2 parent = random_hyperbolic(rng);
    const double par[4] = {parent.a, parent.b, parent.c, parent.d};

    std::vector<double> oa(n), ob(n), oc(n), od(n), ocosh(n);
    scalar_fns().mul_disp(par, ga.data(), gb.data(), gc.data(), gd.data(), n,
                          oa.data(), ob.data(), oc.data(), od.data(),
                          ocosh.data());

    // Semantics vs mat2 arithmetic (same expression order, so exact).
    for (std::size_t k = 0; k < n; ++k) {
        const mat2 prod = parent * gens[k];
        CHECK(oa[k] == prod.a);
        CHECK(ob[k] == prod.b);
        CHECK(oc[k] == prod.c);
        CHECK(od[k] == prod.d);
        CHECK(std::abs(ocosh[k] - prod.displacement_cosh()) <=
              4e-16 * prod.displacement_cosh());
    }

    const geodesic axi_g = axis(random_hyperbolic(rng));
    const geodesic axj_g = axis(random_hyperbolic(rng));
    const double axi[4] = {axi_g.p.u, axi_g.p.v, axi_g.q.u, axi_g.q.v};
    const double axj[4] = {axj_g.p.u, axj_g.p.v, axj_g.q.u, axj_g.q.v};
    std::vector<double> pn(n);
    scalar_fns().perp_batch(ga.data(), gb.data(), gc.data(), gd.data(), n,
                            axi, axj, pn.data());
    for (std::size_t k = 0; k < n; ++k) {
        const double ref = perp_invariant(axi_g, apply(gens[k], axj_g));
        CHECK(std::abs(pn[k] - ref) <= 1e-11 * (1.0 + std::abs(ref)));
    }

#if defined(ORTHOSPEC_HAVE_AVX2_TARGET)
    if (avx2_supported()) {
        std::vector<double> va(n), vb(n), vc(n), vd(n), vcosh(n), vn(n);
        avx2_fns().mul_disp(par, ga.data(), gb.data(), gc.data(), gd.data(),
                            n, va.data(), vb.data(), vc.data(), vd.data(),
                            vcosh.data());
        CHECK(std::memcmp(va.data(), oa.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(vb.data(), ob.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(vc.data(), oc.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(vd.data(), od.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(vcosh.data(), ocosh.data(), n * sizeof(double)) ==
              0);
        avx2_fns().perp_batch(ga.data(), gb.data(), gc.data(), gd.data(), n,
                              axi, axj, vn.data());
        CHECK(std::memcmp(vn.data(), pn.data(), n * sizeof(double)) == 0);
    }
#endif

    // Whatever variant is active, it must agree with the reference exactly.
    std::vector<double> aa(n), ab(n), ac(n), ad(n), acosh_(n);
    active().mul_disp(par, ga.data(), gb.data(), gc.data(), gd.data(), n,
                      aa.data(), ab.data(), ac.data(), ad.data(),
                      acosh_.data());
    CHECK(std::memcmp(aa.data(), oa.data(), n * sizeof(double)) == 0);
    CHECK(std::memcmp(acosh_.data(), ocosh.data(), n * sizeof(double)) == 0);
}

TEST_CASE("pentagon side formula against an explicit pentagon") {
    CHECK(std::abs(pentagon_side(1.0, 1.0) - oracle::pentagon_1_1) <= 1e-12);
    CHECK(std::abs(oracle::pentagon_far_side(1.0, 1.0) -
                   oracle::pentagon_1_1) <= 1e-9);

    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> side(0.3, 3.0);
    int done = 0;
    while (done < 60) {
        const double a = side(rng), b = side(rng);
        if (std::sinh(a) * std::sinh(b) <= 1.02) continue;
        CHECK(std::abs(pentagon_side(a, b) -
                       oracle::pentagon_far_side(a, b)) <= 1e-9);
        ++done;
    }

    // Degenerate configuration: sinh a sinh b <= 1 has no pentagon.
    CHECK_THROWS_AS(pentagon_side(0.5, 0.6), domain_error);
    CHECK_THROWS_AS(pentagon_side(-1.0, 2.0), domain_error);

    // Monotone in each side.
    double prev = 0.0;
    for (double a = 0.9; a < 3.0; a += 0.1) {
        const double v = pentagon_side(a, 1.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("tau_prime and cord bound formulas") {
    CHECK(std::abs(tau_prime_from_tau(1.0, 2.0) - 3.8379) <= 1e-3);
    CHECK_THROWS_AS(tau_prime_from_tau(0.0, 1.0), domain_error);
    CHECK_THROWS_AS(tau_prime_from_tau(1.0, -0.1), domain_error);

    // tau' grows in both arguments.
    CHECK(tau_prime_from_tau(1.2, 2.0) > tau_prime_from_tau(1.0, 2.0));
    CHECK(tau_prime_from_tau(1.0, 2.2) > tau_prime_from_tau(1.0, 2.0));

    // Cord bound: grows with alpha, shrinks as gamma grows.
    CHECK(cord_upper_bound(1.2, 2.0) > cord_upper_bound(1.0, 2.0));
    CHECK(cord_upper_bound(1.0, 2.4) < cord_upper_bound(1.0, 2.0));
    CHECK_THROWS_AS(cord_upper_bound(0.0, 1.0), domain_error);

    // The torus equality: alpha_from_simple_ortho inverts the cord length.
    for (double la : {0.7, 1.0, 2.3}) {
        for (double lg : {1.1, 2.5, 3.4}) {
            const double t = cord_upper_bound(la, lg);
            CHECK(std::abs(alpha_from_simple_ortho(t, lg) - la) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(alpha_from_simple_ortho(0.1, 0.1),
                    insufficient_data_error);
}

TEST_CASE("pants boundary distance") {
    // Frozen value for the (2,2,2) pants; also the first ortho length.
    CHECK(std::abs(pants_boundary_distance(2.0, 2.0, 2.0) - 1.704913) <=
          1e-5);
    // Symmetric in the two near boundaries.
    CHECK(std::abs(pants_boundary_distance(1.0, 2.0, 3.0) -
                   pants_boundary_distance(2.0, 1.0, 3.0)) <= 1e-14);
    // Strictly increasing in the opposite boundary length.
    double prev = 0.0;
    for (double l3 = 0.3; l3 < 6.0; l3 += 0.3) {
        const double v = pants_boundary_distance(1.3, 2.1, l3);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(pants_boundary_distance(1.0, 2.0, 0.0), domain_error);

    // As l3 -> 0 the hexagon degenerates to the pentagon configuration:
    // cosh d -> coth(l1/2) coth(l2/2) ... compare against the limit value.
    const double lim = std::acosh(
        (1.0 + std::cosh(0.5) * std::cosh(0.9)) /
        (std::sinh(0.5) * std::sinh(0.9)));
    CHECK(std::abs(pants_boundary_distance(1.0, 1.8, 1e-7) - lim) <= 1e-6);
}

TEST_CASE("Rogers dilogarithm") {
    CHECK(rogers_dilog(0.0) == 0.0);
    CHECK(std::abs(rogers_dilog(1.0) - pi * pi / 6.0) <= 1e-15);
    CHECK_THROWS_AS(rogers_dilog(-0.01), domain_error);
    CHECK_THROWS_AS(rogers_dilog(1.01), domain_error);

    for (double x = 0.05; x < 1.0; x += 0.05) {
        CHECK(std::abs(rogers_dilog(x) - oracle::rogers_quad(x)) <= 1e-11);
        // Abel reflection: L(x) + L(1-x) = pi^2/6.
        CHECK(std::abs(rogers_dilog(x) + rogers_dilog(1.0 - x) -
                       pi * pi / 6.0) <= 1e-12);
    }
    // Special value L(1/2) = pi^2/12.
    CHECK(std::abs(rogers_dilog(0.5) - pi * pi / 12.0) <= 1e-13);
}

TEST_CASE("identity term shapes") {
    // Basmajian term ~ 4 e^{-l} for large l.
    for (double l = 4.0; l <= 12.0; l += 1.0) {
        const double t = basmajian_term(l);
        const double asym = 4.0 * std::exp(-l);
        CHECK(std::abs(t - asym) <= 0.05 * asym);
    }
    CHECK(std::abs(basmajian_term(1.0) -
                   2.0 * std::asinh(1.0 / std::sinh(1.0))) <= 1e-15);

    // Bridgeman term tends to (2/pi) L(1) = pi/3 as l -> 0.
    CHECK(std::abs(bridgeman_term(1e-9) - pi / 3.0) <= 1e-6);
    CHECK(std::abs(bridgeman_term(1.0) -
                   bridgeman_constant *
                       rogers_dilog(1.0 / (std::cosh(0.5) * std::cosh(0.5)))) <=
          1e-15);
    // Monotone decreasing in l.
    CHECK(bridgeman_term(2.0) < bridgeman_term(1.0));
}

TEST_CASE("pairwise summation is accurate and deterministic") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> mag(-1.0, 1.0);
    std::vector<double> v(10'001);
    long double ld = 0.0L;
    for (auto& x : v) {
        // Mixed magnitudes to give naive accumulation something to lose.
        x = mag(rng) * std::exp(14.0 * mag(rng));
        ld += static_cast<long double>(x);
    }
    const double ps = pairwise_sum(v);
    CHECK(std::abs(ps - static_cast<double>(ld)) <=
          1e-12 * (1.0 + std::abs(static_cast<double>(ld))));
    CHECK(pairwise_sum(v) == ps);  // bitwise repeatable
    CHECK(pairwise_sum({}) == 0.0);
    CHECK(pairwise_sum({3.5}) == 3.5);
}
