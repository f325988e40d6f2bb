#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

// End-to-end tests driving the installed binary through a shell, checking
// exit codes, stdout text, file artifacts, and byte-level determinism.
// argv[1] is the path to the binary (wired up by CMake).

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "orthospec/io.hpp"

namespace {

std::string cli;
const std::string dir = "cli_scratch";

struct run_result {
    int code{-1};
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

run_result run(const std::string& args) {
    const std::string of = dir + "/stdout.txt", ef = dir + "/stderr.txt";
    const std::string cmd =
        "\"" + cli + "\" " + args + " >" + of + " 2>" + ef;
    const int rc = std::system(cmd.c_str());
    run_result r;
    if (rc != -1 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
    r.out = slurp(of);
    r.err = slurp(ef);
    return r;
}

void put(const std::string& name, const std::string& text) {
    orthospec::io::write_text_file(dir + "/" + name, text);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

using orthospec::io::ordered_json;

ordered_json load(const std::string& name) {
    return orthospec::io::parse_json_file(dir + "/" + name);
}

}  // namespace

TEST_CASE("build: valid specs succeed, bad specs exit 2 with field names") {
    put("p222.json", R"({"kind":"pants","boundary_lengths":[2.0,2.0,2.0]})");
    const auto ok = run("build " + dir + "/p222.json -o " + dir +
                        "/s222.json");
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "validation: pass"));
    CHECK(contains(ok.out, "genus=0"));
    CHECK(contains(ok.out, "boundary=3"));

    put("bad.json", R"({"kind":"pants","boundary_lengths":[2.0,-1.0,2.0]})");
    const auto bad = run("build " + dir + "/bad.json");
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "boundary_lengths["));

    put("unknown_field.json",
        R"({"kind":"pants","boundary_lengths":[2,2,2],"colour":"red"})");
    const auto uf = run("build " + dir + "/unknown_field.json");
    CHECK(uf.code == 2);
    CHECK(contains(uf.err, "colour"));

    const auto missing = run("build " + dir + "/no_such_file.json");
    CHECK(missing.code == 2);
}

TEST_CASE("build: pants graph spec") {
    put("graph.json", R"({
      "kind": "pants_graph",
      "pants": 2,
      "gluings": [{"pants_a":0,"cuff_a":0,"pants_b":1,"cuff_b":0,
                   "length":1.8,"twist":0.4}],
      "legs": [{"pants":0,"cuff":1,"length":1.2},
               {"pants":0,"cuff":2,"length":1.4},
               {"pants":1,"cuff":1,"length":1.6},
               {"pants":1,"cuff":2,"length":1.9}]
    })");
    const auto r = run("build " + dir + "/graph.json -o " + dir +
                       "/graph_surface.json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "boundary=4"));
    CHECK(contains(r.out, "validation: pass"));
}

TEST_CASE("spectrum: determinism across reruns and thread counts") {
    REQUIRE(run("build " + dir + "/p222.json -o " + dir + "/s222.json")
                .code == 0);
    const std::string cmd = "spectrum " + dir + "/s222.json --cutoff 6 -o " +
                            dir + "/sp6.json";
    REQUIRE(run(cmd).code == 0);
    const std::string first = slurp(dir + "/sp6.json");
    REQUIRE_FALSE(first.empty());

    REQUIRE(run(cmd).code == 0);
    CHECK(slurp(dir + "/sp6.json") == first);

    REQUIRE(run(cmd + " --threads 7").code == 0);
    CHECK(slurp(dir + "/sp6.json") == first);

    const auto j = load("sp6.json");
    CHECK(j.at("schema").get<std::string>() == "orthospec.spectrum/1");
    CHECK(j.at("certificate").at("certified").get<bool>());
    CHECK(j.at("count").get<size_t>() ==
          j.at("entries").size());
    // Manifest never contains wall-clock data or a thread count.
    CHECK(j.at("manifest").at("wall_time").is_null());
    CHECK_FALSE(contains(j.at("manifest").at("command").get<std::string>(),
                         "thread"));
}

TEST_CASE("spectrum: CSV format") {
    const auto r = run("spectrum " + dir + "/s222.json --cutoff 6 "
                       "--format csv -o " + dir + "/sp6.csv");
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir + "/sp6.csv");
    CHECK(csv.rfind("length,boundary_i,boundary_j,foot_i,foot_j\n", 0) == 0);
    CHECK(contains(csv, "\n# manifest {"));

    // Rows are sorted by length.
    double prev = 0.0;
    size_t pos = csv.find('\n') + 1;
    while (pos < csv.size() && csv[pos] != '#') {
        const double len = std::stod(csv.substr(pos));
        CHECK(len >= prev);
        prev = len;
        pos = csv.find('\n', pos) + 1;
    }
}

TEST_CASE("spectrum: empty at tiny cutoff, error on bad cutoff") {
    const auto r = run("spectrum " + dir + "/s222.json --cutoff 0.01 -o " +
                       dir + "/sp_empty.json");
    CHECK(r.code == 0);
    CHECK(load("sp_empty.json").at("count").get<size_t>() == 0);

    CHECK(run("spectrum " + dir + "/s222.json --cutoff -3").code == 2);
}

TEST_CASE("verify: identities pass at cutoff 12 and reports are stable") {
    REQUIRE(run("spectrum " + dir + "/s222.json --cutoff 12 -o " + dir +
                "/sp12.json")
                .code == 0);
    const std::string cmd = "verify " + dir + "/s222.json " + dir +
                            "/sp12.json -o " + dir + "/rep.json";
    const auto r = run(cmd);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "basmajian"));
    CHECK(contains(r.out, "bridgeman"));
    CHECK(contains(r.out, "PASS"));
    const auto rep = load("rep.json");
    CHECK(rep.at("verdict").get<bool>());
    CHECK(rep.at("reports").size() == 2);

    const std::string bytes = slurp(dir + "/rep.json");
    REQUIRE(run(cmd).code == 0);
    CHECK(slurp(dir + "/rep.json") == bytes);

    // Extended precision adds a diagnostic line but the same verdict.
    const auto ext = run(cmd + " --precision extended");
    CHECK(ext.code == 0);
    CHECK(contains(ext.out, "extended accumulation"));
}

TEST_CASE("verify: tampering is caught") {
    // Fingerprint from a different surface: input error.
    auto sp = load("sp12.json");
    sp["fingerprint"] = "0123456789abcdef";
    put("sp12_wrong_fp.json", sp.dump(2) + "\n");
    const auto fp = run("verify " + dir + "/s222.json " + dir +
                        "/sp12_wrong_fp.json");
    CHECK(fp.code == 2);

    // Deleting entries breaks the identity: certification failure.
    auto cut = load("sp12.json");
    auto& entries = cut["entries"];
    entries.erase(entries.begin(), entries.begin() + 6);
    cut["count"] = entries.size();
    put("sp12_cut.json", cut.dump(2) + "\n");
    const auto broken = run("verify " + dir + "/s222.json " + dir +
                            "/sp12_cut.json");
    CHECK(broken.code == 4);
    CHECK(contains(broken.out, "FAIL"));
}

TEST_CASE("reconstruct: torus parameters from spectra, both twist signs") {
    put("torus_p.json", R"({"kind":"one_holed_torus","boundary_lengths":[2.5],
        "interior_curves":[{"length":1.0,"twist":0.3}]})");
    put("torus_m.json", R"({"kind":"one_holed_torus","boundary_lengths":[2.5],
        "interior_curves":[{"length":1.0,"twist":-0.3}]})");
    REQUIRE(run("build " + dir + "/torus_p.json -o " + dir + "/tp.json")
                .code == 0);
    REQUIRE(run("build " + dir + "/torus_m.json -o " + dir + "/tm.json")
                .code == 0);
    REQUIRE(run("spectrum " + dir + "/tp.json --cutoff 10 -o " + dir +
                "/tp_sp.json")
                .code == 0);
    REQUIRE(run("spectrum " + dir + "/tm.json --cutoff 10 -o " + dir +
                "/tm_sp.json")
                .code == 0);

    for (const char* f : {"tp_sp.json", "tm_sp.json"}) {
        const auto r = run("reconstruct " + dir + "/" + f + " -o " + dir +
                           "/params.json");
        REQUIRE(r.code == 0);
        const auto p = load("params.json");
        CHECK(std::abs(p.at("l_gamma").get<double>() - 2.5) <= 1e-6);
        CHECK(std::abs(p.at("l_alpha").get<double>() - 1.0) <= 1e-6);
        CHECK(std::abs(p.at("twist_abs").get<double>() - 0.3) <= 1e-6);
    }

    // A pants spectrum is not a torus spectrum.
    const auto wrong = run("reconstruct " + dir + "/sp12.json");
    CHECK(wrong.code == 2);
}

TEST_CASE("compare: twist twins are ortho-isospectral") {
    const auto r = run("compare " + dir + "/tp_sp.json " + dir +
                       "/tm_sp.json -o " + dir + "/cmp.json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "isospectral"));
    const auto c = load("cmp.json");
    CHECK(c.at("isospectral").get<bool>());
    CHECK(c.at("count_a").get<size_t>() == c.at("count_b").get<size_t>());
}

TEST_CASE("covers: k=1 family verdict") {
    const auto r = run("covers --k 1 --gamma 2 --cutoff 4.5 -o " + dir +
                       "/covers.json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "covers verdict: PASS"));
    const auto j = load("covers.json");
    CHECK(j.at("verdict").get<bool>());
    CHECK(j.at("covers").size() == 2);
    CHECK(j.at("pairwise").size() == 1);
    CHECK(j.at("pairwise")[0].at("isospectral").get<bool>());

    CHECK(run("covers --k 9").code == 2);  // cost cap
}

TEST_CASE("exponents: fits, radii table, and starved input") {
    const auto r = run("exponents " + dir + "/s222.json --cutoffs 4,6,8 "
                       "--radii-csv " + dir + "/radii.csv -o " + dir +
                       "/exp.json");
    REQUIRE(r.code == 0);
    const auto j = load("exp.json");
    CHECK(std::isfinite(j.at("ortho").at("estimate").get<double>()));
    CHECK(std::isfinite(j.at("packing").at("estimate").get<double>()));
    CHECK(j.at("counts").size() == 3);
    CHECK(j.at("radii_count").get<size_t>() >= 50);

    // Radii table: every interval obeys radius <= e^{-perp_length}.
    const std::string csv = slurp(dir + "/radii.csv");
    CHECK(csv.rfind("center,radius,perp_length,component\n", 0) == 0);
    CHECK(contains(csv, "\n# manifest {"));
    size_t pos = csv.find('\n') + 1;
    int rows = 0;
    while (pos < csv.size() && csv[pos] != '#') {
        const char* p = csv.c_str() + pos;
        char* end = nullptr;
        (void)std::strtod(p, &end);          // center
        const double rad = std::strtod(end + 1, &end);
        const double perp = std::strtod(end + 1, &end);
        CHECK(rad <= std::exp(-perp) * (1.0 + 1e-9));
        ++rows;
        pos = csv.find('\n', pos) + 1;
    }
    CHECK(rows >= 50);

    // One usable cutoff is not enough for an exponent fit.
    const auto starved = run("exponents " + dir + "/s222.json --cutoffs 2");
    CHECK(starved.code == 3);
}

TEST_CASE("surface files reject tampering end to end") {
    auto s = load("s222.json");
    s["fingerprint"] = "ffffffffffffffff";
    put("s222_bad.json", s.dump(2) + "\n");
    const auto r = run("spectrum " + dir + "/s222_bad.json --cutoff 4");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "fingerprint"));
}

TEST_CASE("usage errors and help") {
    CHECK(run("").code == 2);                       // missing subcommand
    CHECK(run("frobnicate").code == 2);             // unknown subcommand
    CHECK(run("spectrum").code == 2);               // missing argument
    CHECK(run("spectrum x.json --no-such-flag").code == 2);
    CHECK(run("covers --k 1 --cutoff 4.5 --precision triple").code == 2);

    const auto help = run("--help");
    CHECK(help.code == 0);
    CHECK(contains(help.out, "spectrum"));
    const auto ver = run("--version");
    CHECK(ver.code == 0);
    CHECK(contains(ver.out, "orthospec"));
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-orthospec-binary>\n");
        return 1;
    }
    cli = argv[1];
    std::filesystem::create_directories(dir);
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
