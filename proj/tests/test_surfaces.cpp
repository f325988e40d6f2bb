#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "orthospec/build.hpp"
#include "orthospec/dirichlet.hpp"
#include "orthospec/geodesic.hpp"
#include "orthospec/io.hpp"
#include "orthospec/ortho.hpp"
#include "orthospec/surface.hpp"
#include "orthospec/trig.hpp"
#include "orthospec/version.hpp"

using namespace orthospec;

namespace {

io::run_manifest test_manifest(double cutoff = 0.0, double tol = 0.0) {
    return {"test", "", cutoff, tol, tool_version, "n/a"};
}

bool message_contains(const error& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("pants builder basics") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    REQUIRE(s.boundary.size() == 3);
    CHECK(s.genus == 0);
    CHECK(s.euler_characteristic() == -1);
    CHECK(s.num_generators() == 2);
    for (const auto& bc : s.boundary) {
        CHECK(bc.spec_length == 2.0);
        CHECK(std::abs(bc.length - 2.0) <= 1e-10);
        CHECK(std::abs(bc.holonomy.det() - 1.0) <= 1e-12);
    }
    // The three cuff words multiply to the identity isometry.
    const mat2 prod = s.boundary[0].holonomy * s.boundary[1].holonomy *
                      s.boundary[2].holonomy;
    CHECK(same_isometry(prod, mat2::identity(), 1e-9));

    const auto rep = validate_surface(s);
    CHECK(rep.pass);
    CHECK(rep.worst_boundary_length_error <= 1e-9);
    CHECK(rep.failures.empty());
}

TEST_CASE("pants boundary axes realize the hexagon distances") {
    const double l[3] = {1.0, 2.0, 3.0};
    const fuchsian_surface s = build_pants(l[0], l[1], l[2]);
    REQUIRE(s.boundary.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(s.boundary[static_cast<size_t>(i)].length - l[i]) <=
              1e-10);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const int k = 3 - i - j;
            const double want = pants_boundary_distance(l[i], l[j], l[k]);
            const double got = geodesic_distance(
                s.boundary[static_cast<size_t>(i)].axis_g,
                s.boundary[static_cast<size_t>(j)].axis_g);
            CHECK(std::abs(got - want) <= 1e-10);
        }
}

TEST_CASE("extreme pants still validate") {
    const fuchsian_surface s = build_pants(0.5, 4.0, 0.5);
    CHECK(validate_surface(s).pass);
    const fuchsian_surface t = build_pants(3.9, 3.8, 3.7);
    CHECK(validate_surface(t).pass);
}

TEST_CASE("builders reject bad lengths") {
    CHECK_THROWS_AS(build_pants(-1.0, 2.0, 2.0), spec_error);
    CHECK_THROWS_AS(build_pants(0.0, 1.0, 1.0), spec_error);
    CHECK_THROWS_AS(build_pants(1.0, std::nan(""), 1.0), spec_error);
    CHECK_THROWS_AS(build_one_holed_torus(1.0, 0.0, -2.0), spec_error);
    CHECK_THROWS_AS(build_one_holed_torus(1.0, std::nan(""), 2.0),
                    spec_error);
}

TEST_CASE("one-holed torus: boundary length is twist independent") {
    for (double twist : {-0.6, -0.3, 0.0, 0.3, 0.6, 1.7}) {
        const fuchsian_surface s = build_one_holed_torus(1.0, twist, 2.5);
        REQUIRE(s.boundary.size() == 1);
        CHECK(s.genus == 1);
        CHECK(s.euler_characteristic() == -1);
        CHECK(s.boundary[0].spec_length == 2.5);
        CHECK(std::abs(s.boundary[0].length - 2.5) <= 1e-9);
        // The interior curve alpha is the first generator.
        CHECK(std::abs(translation_length(s.letter(0)) - 1.0) <= 1e-10);
        CHECK(validate_surface(s).pass);
        // Boundary word is the commutator of the two generators.
        const mat2 comm = s.letter(0) * s.letter(2) *
                          s.letter(0).inverse() * s.letter(2).inverse();
        CHECK(same_isometry(comm, s.boundary[0].holonomy, 1e-9));
    }
}

TEST_CASE("pants graph: two pants glued along one cuff") {
    pants_graph_spec spec;
    spec.pants = 2;
    spec.gluings = {{0, 0, 1, 0, 1.8, 0.4}};
    spec.legs = {{0, 1, 1.2}, {0, 2, 1.4}, {1, 1, 1.6}, {1, 2, 1.9}};
    const fuchsian_surface s = build_from_pants_graph(spec);
    REQUIRE(s.boundary.size() == 4);
    CHECK(s.genus == 0);
    CHECK(s.euler_characteristic() == -2);
    const double want[4] = {1.2, 1.4, 1.6, 1.9};
    for (size_t i = 0; i < 4; ++i)
        CHECK(std::abs(s.boundary[i].length - want[i]) <= 1e-9);
    CHECK(validate_surface(s).pass);
    // The interior gluing curve shows up as a closed geodesic of the
    // requested length.
    bool found = false;
    for (const auto& cg : closed_geodesics(s, 2.0))
        if (std::abs(cg.length - 1.8) <= 1e-9) found = true;
    CHECK(found);
}

TEST_CASE("pants graph: self-gluing reproduces a one-holed torus") {
    pants_graph_spec spec;
    spec.pants = 1;
    spec.gluings = {{0, 0, 0, 1, 1.0, 0.3}};
    spec.legs = {{0, 2, 2.5}};
    const fuchsian_surface s = build_from_pants_graph(spec);
    REQUIRE(s.boundary.size() == 1);
    CHECK(s.genus == 1);
    CHECK(s.euler_characteristic() == -1);
    CHECK(std::abs(s.boundary[0].length - 2.5) <= 1e-9);
    CHECK(validate_surface(s).pass);
}

TEST_CASE("pants graph input validation") {
    pants_graph_spec bad;
    bad.pants = 2;
    bad.gluings = {{0, 0, 0, 0, 1.0, 0.0}};  // cuff glued to itself
    bad.legs = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 0, 1.0}, {1, 1, 1.0},
                {1, 2, 1.0}};
    CHECK_THROWS_AS(build_from_pants_graph(bad), spec_error);

    pants_graph_spec unused;
    unused.pants = 1;
    unused.legs = {{0, 0, 1.0}, {0, 1, 1.0}};  // cuff 2 unreferenced
    CHECK_THROWS_AS(build_from_pants_graph(unused), spec_error);

    pants_graph_spec disconnected;
    disconnected.pants = 2;
    disconnected.legs = {{0, 0, 1.0}, {0, 1, 1.0}, {0, 2, 1.0},
                         {1, 0, 1.0}, {1, 1, 1.0}, {1, 2, 1.0}};
    CHECK_THROWS_AS(build_from_pants_graph(disconnected), spec_error);
}

TEST_CASE("validation catches tampered boundary data") {
    fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    s.boundary[0].spec_length += 0.01;
    const auto rep = validate_surface(s);
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_boundary_length_error >= 0.009);
    REQUIRE_FALSE(rep.failures.empty());
}

TEST_CASE("fingerprints separate specs and are reproducible") {
    const fuchsian_surface a1 = build_pants(2.0, 2.0, 2.0);
    const fuchsian_surface a2 = build_pants(2.0, 2.0, 2.0);
    const fuchsian_surface b = build_pants(2.0, 2.0, 3.0);
    CHECK(surface_fingerprint(a1) == surface_fingerprint(a2));
    CHECK(surface_fingerprint(a1) != surface_fingerprint(b));
    CHECK(a1.spec_json == a2.spec_json);
}

TEST_CASE("foot_on_boundary: reduction, side, and holonomy turns") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const auto& bc = s.boundary[0];
    const geodesic other = s.boundary[1].axis_g;

    const auto f = foot_on_boundary(bc, other);
    REQUIRE(f.has_value());
    CHECK(f->coord >= 0.0);
    CHECK(f->coord < bc.length);
    CHECK((f->side == 1 || f->side == -1));

    // Sliding the other lift by the holonomy moves the raw coordinate by
    // one period and leaves the reduced data unchanged.
    const auto g = foot_on_boundary(bc, apply(bc.holonomy, other));
    REQUIRE(g.has_value());
    CHECK(std::abs(g->coord - f->coord) <= 1e-9);
    CHECK(g->side == f->side);
    CHECK(g->turns == f->turns + 1);

    const mat2 h2 = bc.holonomy * bc.holonomy;
    const auto g2 = foot_on_boundary(bc, apply(h2.inverse(), other));
    REQUIRE(g2.has_value());
    CHECK(std::abs(g2->coord - f->coord) <= 1e-9);
    CHECK(g2->turns == f->turns - 2);

    // A geodesic crossing the axis has no perpendicular foot.
    const mat2 back = bc.to_std.inverse();
    const geodesic crossing = apply(back, geodesic(-1.0, 2.0));
    CHECK_FALSE(foot_on_boundary(bc, crossing).has_value());
}

TEST_CASE("Dirichlet face pairings: deterministic, inverse closed, stable") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    REQUIRE(s.dirichlet.has_value());
    CHECK(s.dirichlet->stable);
    CHECK(s.dirichlet->rho > 0.0);
    CHECK(s.dirichlet->faces.size() >= 4);

    const double probe = s.dirichlet->probe_radius;
    const auto f1 = dirichlet_face_pairings(s, probe);
    const auto f2 = dirichlet_face_pairings(s, probe);
    REQUIRE(f1.size() == f2.size());
    for (size_t i = 0; i < f1.size(); ++i)
        CHECK(approx_equal(f1[i], f2[i], 0.0));  // bitwise identical

    // Closure under inverse.
    for (const auto& g : f1) {
        const mat2 gi = g.inverse().canonical();
        bool found = false;
        for (const auto& h : f1)
            if (approx_equal(h, gi, 1e-9)) found = true;
        CHECK(found);
    }
}

TEST_CASE("surface JSON round trip") {
    const fuchsian_surface s = build_one_holed_torus(1.0, 0.3, 2.5);
    const auto j = io::surface_to_json(s, test_manifest());
    const std::string text = j.dump(2);
    // Byte determinism of the serialization itself.
    CHECK(io::surface_to_json(s, test_manifest()).dump(2) == text);

    const fuchsian_surface r = io::surface_from_json(
        io::ordered_json::parse(text));
    CHECK(surface_fingerprint(r) == surface_fingerprint(s));
    CHECK(r.kind == s.kind);
    CHECK(r.genus == s.genus);
    CHECK(r.spec_json == s.spec_json);
    REQUIRE(r.boundary.size() == s.boundary.size());
    for (size_t i = 0; i < r.boundary.size(); ++i) {
        CHECK(r.boundary[i].bword == s.boundary[i].bword);
        CHECK(r.boundary[i].spec_length == s.boundary[i].spec_length);
        CHECK(std::abs(r.boundary[i].length - s.boundary[i].length) <=
              1e-12);
    }
    REQUIRE(r.dirichlet.has_value());
    CHECK(r.dirichlet->rho == s.dirichlet->rho);
    CHECK(r.dirichlet->stable == s.dirichlet->stable);
    CHECK(r.dirichlet->faces.size() == s.dirichlet->faces.size());
    // Round-tripped surface is immediately usable.
    CHECK(validate_surface(r).pass);
}

TEST_CASE("surface JSON rejects corruption") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    auto j = io::surface_to_json(s, test_manifest());

    auto tampered = j;
    tampered["fingerprint"] = std::string("deadbeefdeadbeef");
    CHECK_THROWS_AS(io::surface_from_json(tampered), spec_error);

    auto extra = j;
    extra["surprise"] = 1;
    try {
        io::surface_from_json(extra);
        FAIL("unknown field accepted");
    } catch (const spec_error& e) {
        CHECK(message_contains(e, "surprise"));
    }

    auto badgen = j;
    badgen["generators"][0]["matrix"][0] =
        badgen["generators"][0]["matrix"][0].get<double>() + 0.5;
    CHECK_THROWS_AS(io::surface_from_json(badgen), spec_error);
}

TEST_CASE("surface specs parse with field-precise errors") {
    const auto ok = io::ordered_json::parse(
        R"({"kind":"pants","boundary_lengths":[2.0,2.0,2.0]})");
    const fuchsian_surface s = io::surface_from_spec_json(ok);
    CHECK(surface_fingerprint(s) ==
          surface_fingerprint(build_pants(2.0, 2.0, 2.0)));

    const auto neg = io::ordered_json::parse(
        R"({"kind":"pants","boundary_lengths":[2.0,-1.0,2.0]})");
    try {
        io::surface_from_spec_json(neg);
        FAIL("negative length accepted");
    } catch (const spec_error& e) {
        CHECK(message_contains(e, "boundary_lengths[1]"));
    }

    const auto torus = io::ordered_json::parse(
        R"({"kind":"one_holed_torus","boundary_lengths":[2.5],
            "interior_curves":[{"length":1.0,"twist":0.3}]})");
    CHECK(surface_fingerprint(io::surface_from_spec_json(torus)) ==
          surface_fingerprint(build_one_holed_torus(1.0, 0.3, 2.5)));

    const auto unknown = io::ordered_json::parse(R"({"kind":"klein"})");
    CHECK_THROWS_AS(io::surface_from_spec_json(unknown), spec_error);
}

TEST_CASE("spectrum JSON and CSV round trip") {
    const fuchsian_surface s = build_pants(2.0, 2.0, 2.0);
    const ortho_spectrum_t sp = ortho_spectrum(s, 5.0);
    REQUIRE(sp.size() > 0);
    REQUIRE(sp.certificate.certified);

    const auto j = io::spectrum_to_json(sp, test_manifest(5.0, 1e-8));
    const ortho_spectrum_t r = io::spectrum_from_json(j);
    CHECK(r.cutoff == sp.cutoff);
    CHECK(r.fingerprint == sp.fingerprint);
    CHECK(r.certificate.certified == sp.certificate.certified);
    CHECK(r.certificate.ball_radius == sp.certificate.ball_radius);
    REQUIRE(r.size() == sp.size());
    for (size_t i = 0; i < r.size(); ++i) {
        CHECK(r.entries[i].length == sp.entries[i].length);
        CHECK(r.entries[i].i == sp.entries[i].i);
        CHECK(r.entries[i].j == sp.entries[i].j);
        CHECK(r.entries[i].foot_i == sp.entries[i].foot_i);
        CHECK(r.entries[i].foot_j == sp.entries[i].foot_j);
    }

    auto badcount = j;
    badcount["count"] = sp.size() + 1;
    CHECK_THROWS_AS(io::spectrum_from_json(badcount), spec_error);

    const std::string csv = io::spectrum_to_csv(sp);
    CHECK(csv.rfind("length,boundary_i,boundary_j,foot_i,foot_j\n", 0) == 0);
    const size_t lines = static_cast<size_t>(
        std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == sp.size() + 1);  // header + one row per entry
}
