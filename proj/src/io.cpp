#include "orthospec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orthospec/build.hpp"
#include "orthospec/covers.hpp"
#include "orthospec/errors.hpp"

namespace orthospec::io {

namespace {

std::string fmt_shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void bad(const std::string& msg) { throw spec_error(msg); }

void check_fields(const ordered_json& j,
                  std::initializer_list<const char*> allowed,
                  const char* ctx) {
    if (!j.is_object()) bad(std::string(ctx) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                ok = true;
                break;
            }
        if (!ok)
            bad(std::string(ctx) + ": unknown field '" + item.key() + "'");
    }
}

const ordered_json& field(const ordered_json& j, const char* key,
                          const char* ctx) {
    const auto it = j.find(key);
    if (it == j.end())
        bad(std::string(ctx) + ": missing field '" + key + "'");
    return *it;
}

double num(const ordered_json& j, const char* key, const char* ctx) {
    const auto& v = field(j, key, ctx);
    if (!v.is_number())
        bad(std::string(ctx) + ": field '" + key + "' must be a number");
    return v.get<double>();
}

int integer(const ordered_json& j, const char* key, const char* ctx) {
    const auto& v = field(j, key, ctx);
    if (!v.is_number_integer())
        bad(std::string(ctx) + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

std::string str(const ordered_json& j, const char* key, const char* ctx) {
    const auto& v = field(j, key, ctx);
    if (!v.is_string())
        bad(std::string(ctx) + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

ordered_json mat_json(const mat2& m) {
    return ordered_json::array({m.a, m.b, m.c, m.d});
}

mat2 mat_from(const ordered_json& v, const char* ctx) {
    if (!v.is_array() || v.size() != 4 || !v[0].is_number() ||
        !v[1].is_number() || !v[2].is_number() || !v[3].is_number())
        bad(std::string(ctx) + ": matrix must be an array of 4 numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
            v[3].get<double>()};
}

ordered_json word_json(const word& w) {
    ordered_json a = ordered_json::array();
    for (const int32_t x : w) a.push_back(x);
    return a;
}

word word_from(const ordered_json& v, int num_letters, const char* ctx) {
    if (!v.is_array())
        bad(std::string(ctx) + ": word must be an array of letters");
    word w;
    for (const auto& x : v) {
        if (!x.is_number_integer())
            bad(std::string(ctx) + ": word letters must be integers");
        const int letter = x.get<int>();
        if (letter < 0 || letter >= num_letters)
            bad(std::string(ctx) + ": word letter out of range");
        w.push_back(letter);
    }
    return w;
}

}  // namespace

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

ordered_json manifest_json(const run_manifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["input_hash"] = m.input_hash;
    j["cutoff"] = m.cutoff;
    j["tolerances"] = ordered_json{{"tol", m.tolerance}};
    j["tool_version"] = m.tool_version;
    j["wall_time"] = nullptr;  // never recorded: outputs must be replayable
    j["certificate_status"] = m.certificate_status;
    return j;
}

ordered_json surface_to_json(const fuchsian_surface& s,
                             const run_manifest& m) {
    ordered_json j;
    j["schema"] = "orthospec.surface/1";
    j["kind"] = s.kind;
    j["spec"] = s.spec_json;  // exact canonical string: fingerprint source
    j["fingerprint"] = surface_fingerprint(s);
    j["genus"] = s.genus;
    j["base"] = ordered_json{{"x", s.base.x}, {"y", s.base.y}};
    ordered_json gens = ordered_json::array();
    for (int k = 0; k < s.num_generators(); ++k) {
        ordered_json g;
        g["name"] = s.gen_names[static_cast<size_t>(k)];
        g["matrix"] = mat_json(s.letter(2 * k));
        gens.push_back(std::move(g));
    }
    j["generators"] = std::move(gens);
    ordered_json bnd = ordered_json::array();
    for (const auto& bc : s.boundary) {
        ordered_json b;
        b["word"] = word_json(bc.bword);
        b["spec_length"] = bc.spec_length;
        bnd.push_back(std::move(b));
    }
    j["boundary"] = std::move(bnd);
    if (s.dirichlet) {
        ordered_json d;
        d["rho"] = s.dirichlet->rho;
        d["probe_radius"] = s.dirichlet->probe_radius;
        d["stable"] = s.dirichlet->stable;
        ordered_json faces = ordered_json::array();
        for (const auto& f : s.dirichlet->faces) {
            ordered_json fj;
            fj["word"] = word_json(f.w);
            fj["matrix"] = mat_json(f.g);
            fj["disp_cosh"] = f.disp_cosh;
            faces.push_back(std::move(fj));
        }
        d["faces"] = std::move(faces);
        j["dirichlet"] = std::move(d);
    }
    j["manifest"] = manifest_json(m);
    return j;
}

fuchsian_surface surface_from_json(const ordered_json& j) {
    const char* ctx = "surface file";
    check_fields(j,
                 {"schema", "kind", "spec", "fingerprint", "genus", "base",
                  "generators", "boundary", "dirichlet", "manifest"},
                 ctx);
    if (str(j, "schema", ctx) != "orthospec.surface/1")
        bad("surface file: unsupported schema");

    fuchsian_surface s;
    s.kind = str(j, "kind", ctx);
    s.spec_json = str(j, "spec", ctx);
    s.genus = integer(j, "genus", ctx);
    const auto& base = field(j, "base", ctx);
    check_fields(base, {"x", "y"}, "surface base");
    s.base = {num(base, "x", ctx), num(base, "y", ctx)};
    if (!(s.base.y > 0)) bad("surface file: basepoint must satisfy y > 0");

    const auto& gens = field(j, "generators", ctx);
    if (!gens.is_array() || gens.empty())
        bad("surface file: generators must be a nonempty array");
    for (const auto& g : gens) {
        check_fields(g, {"name", "matrix"}, "surface generator");
        const mat2 m = mat_from(field(g, "matrix", ctx), ctx);
        if (std::abs(m.det() - 1.0) > 1e-9)
            bad("surface file: generator determinant is not 1");
        s.alphabet.push_back(m);
        s.alphabet.push_back(m.inverse());
        s.gen_names.push_back(str(g, "name", ctx));
    }

    const int num_letters = 2 * s.num_generators();
    const auto& bnd = field(j, "boundary", ctx);
    if (!bnd.is_array() || bnd.empty())
        bad("surface file: boundary must be a nonempty array");
    for (const auto& b : bnd) {
        check_fields(b, {"word", "spec_length"}, "surface boundary");
        const word w = word_from(field(b, "word", ctx), num_letters, ctx);
        s.boundary.push_back(
            make_boundary_component(s, w, num(b, "spec_length", ctx)));
    }

    if (j.contains("dirichlet")) {
        const auto& d = j["dirichlet"];
        check_fields(d, {"rho", "probe_radius", "stable", "faces"},
                     "surface dirichlet");
        dirichlet_cert cert;
        cert.rho = num(d, "rho", ctx);
        cert.probe_radius = num(d, "probe_radius", ctx);
        const auto& st = field(d, "stable", ctx);
        if (!st.is_boolean())
            bad("surface file: dirichlet.stable must be a boolean");
        cert.stable = st.get<bool>();
        const auto& faces = field(d, "faces", ctx);
        if (!faces.is_array())
            bad("surface file: dirichlet.faces must be an array");
        for (const auto& f : faces) {
            check_fields(f, {"word", "matrix", "disp_cosh"},
                         "dirichlet face");
            face_pairing fp;
            fp.w = word_from(field(f, "word", ctx), num_letters, ctx);
            fp.g = mat_from(field(f, "matrix", ctx), ctx);
            fp.disp_cosh = num(f, "disp_cosh", ctx);
            cert.faces.push_back(std::move(fp));
        }
        s.dirichlet = std::move(cert);
    }

    const std::string fp = str(j, "fingerprint", ctx);
    if (fp != surface_fingerprint(s))
        bad("surface file: fingerprint does not match the stored spec "
            "(file corrupted or edited)");
    return s;
}

ordered_json spectrum_to_json(const ortho_spectrum_t& sp,
                              const run_manifest& m) {
    ordered_json j;
    j["schema"] = "orthospec.spectrum/1";
    j["fingerprint"] = sp.fingerprint;
    j["cutoff"] = sp.cutoff;
    j["certificate"] =
        ordered_json{{"certified", sp.certificate.certified},
                     {"ball_radius", sp.certificate.ball_radius}};
    j["count"] = sp.entries.size();
    ordered_json entries = ordered_json::array();
    for (const auto& e : sp.entries) {
        ordered_json ej;
        ej["length"] = e.length;
        ej["i"] = e.i;
        ej["j"] = e.j;
        ej["foot_i"] = e.foot_i;
        ej["foot_j"] = e.foot_j;
        ej["representative"] = mat_json(e.representative);
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    j["manifest"] = manifest_json(m);
    return j;
}

ortho_spectrum_t spectrum_from_json(const ordered_json& j) {
    const char* ctx = "spectrum file";
    check_fields(j,
                 {"schema", "fingerprint", "cutoff", "certificate", "count",
                  "entries", "manifest"},
                 ctx);
    if (str(j, "schema", ctx) != "orthospec.spectrum/1")
        bad("spectrum file: unsupported schema");
    ortho_spectrum_t sp;
    sp.fingerprint = str(j, "fingerprint", ctx);
    sp.cutoff = num(j, "cutoff", ctx);
    const auto& cert = field(j, "certificate", ctx);
    check_fields(cert, {"certified", "ball_radius"}, "spectrum certificate");
    const auto& cf = field(cert, "certified", ctx);
    if (!cf.is_boolean())
        bad("spectrum file: certificate.certified must be a boolean");
    sp.certificate.certified = cf.get<bool>();
    sp.certificate.ball_radius = num(cert, "ball_radius", ctx);
    const auto& entries = field(j, "entries", ctx);
    if (!entries.is_array())
        bad("spectrum file: entries must be an array");
    for (const auto& e : entries) {
        check_fields(e,
                     {"length", "i", "j", "foot_i", "foot_j",
                      "representative"},
                     "spectrum entry");
        ortho_entry oe;
        oe.length = num(e, "length", ctx);
        oe.i = integer(e, "i", ctx);
        oe.j = integer(e, "j", ctx);
        oe.foot_i = num(e, "foot_i", ctx);
        oe.foot_j = num(e, "foot_j", ctx);
        oe.representative = mat_from(field(e, "representative", ctx), ctx);
        if (!(oe.length > 0) || oe.i < 0 || oe.j < 0)
            bad("spectrum file: malformed entry");
        sp.entries.push_back(oe);
    }
    const auto count = field(j, "count", ctx);
    if (!count.is_number_unsigned() ||
        count.get<std::size_t>() != sp.entries.size())
        bad("spectrum file: count disagrees with the entry list");
    return sp;
}

std::string spectrum_to_csv(const ortho_spectrum_t& sp) {
    std::string out = "length,boundary_i,boundary_j,foot_i,foot_j\n";
    for (const auto& e : sp.entries) {
        out += fmt_shortest(e.length);
        out += ',';
        out += std::to_string(e.i);
        out += ',';
        out += std::to_string(e.j);
        out += ',';
        out += fmt_shortest(e.foot_i);
        out += ',';
        out += fmt_shortest(e.foot_j);
        out += '\n';
    }
    return out;
}

ordered_json report_to_json(const identity_report& r,
                            const run_manifest& m) {
    ordered_json j;
    j["identity"] = r.identity;
    j["target"] = r.target;
    j["partial_sum"] = r.partial_sum;
    j["tail_bound"] = r.tail_bound;
    j["cutoff"] = r.cutoff;
    ordered_json pb = ordered_json::array();
    for (std::size_t i = 0; i < r.per_boundary.size(); ++i) {
        ordered_json b;
        b["component"] = i;
        b["partial_sum"] = r.per_boundary[i];
        b["target"] = r.per_boundary_target[i];
        b["tail_bound"] = r.per_boundary_tail[i];
        pb.push_back(std::move(b));
    }
    j["per_boundary"] = std::move(pb);
    j["verdict"] = r.verdict;
    j["tolerance"] = r.tolerance;
    j["tail_model"] = ordered_json{{"delta", r.tail_delta},
                                   {"amplitude", r.tail_amp},
                                   {"empirical", r.tail_empirical},
                                   {"fit_ok", r.tail_fit_ok}};
    j["manifest"] = manifest_json(m);
    return j;
}

fuchsian_surface surface_from_spec_json(const ordered_json& spec) {
    const char* ctx = "surface spec";
    const std::string kind = str(spec, "kind", ctx);
    const auto positive = [](double v, const std::string& where) {
        if (!(v > 0) || !std::isfinite(v))
            bad(where + " must be positive and finite");
        return v;
    };
    if (kind == "pants") {
        check_fields(spec, {"kind", "boundary_lengths"}, ctx);
        const auto& bl = field(spec, "boundary_lengths", ctx);
        if (!bl.is_array() || bl.size() != 3 || !bl[0].is_number() ||
            !bl[1].is_number() || !bl[2].is_number())
            bad("pants spec: boundary_lengths must hold 3 numbers");
        for (int k = 0; k < 3; ++k)
            positive(bl[static_cast<size_t>(k)].get<double>(),
                     "pants spec: boundary_lengths[" + std::to_string(k) +
                         "]");
        return build_pants(bl[0].get<double>(), bl[1].get<double>(),
                           bl[2].get<double>());
    }
    if (kind == "one_holed_torus") {
        check_fields(spec, {"kind", "boundary_lengths", "interior_curves"},
                     ctx);
        const auto& bl = field(spec, "boundary_lengths", ctx);
        const auto& ic = field(spec, "interior_curves", ctx);
        if (!bl.is_array() || bl.size() != 1 || !bl[0].is_number() ||
            !ic.is_array() || ic.size() != 1)
            bad("one_holed_torus spec: need 1 boundary length and 1 "
                "interior curve");
        check_fields(ic[0], {"length", "twist"}, "interior curve");
        positive(bl[0].get<double>(),
                 "one_holed_torus spec: boundary_lengths[0]");
        positive(num(ic[0], "length", ctx),
                 "one_holed_torus spec: interior_curves[0].length");
        return build_one_holed_torus(num(ic[0], "length", ctx),
                                     num(ic[0], "twist", ctx),
                                     bl[0].get<double>());
    }
    if (kind == "pants_graph") {
        check_fields(spec, {"kind", "pants", "gluings", "legs"}, ctx);
        pants_graph_spec g;
        g.pants = integer(spec, "pants", ctx);
        const auto& gl = field(spec, "gluings", ctx);
        const auto& legs = field(spec, "legs", ctx);
        if (!gl.is_array() || !legs.is_array())
            bad("pants_graph spec: gluings and legs must be arrays");
        for (const auto& e : gl) {
            check_fields(e,
                         {"pants_a", "cuff_a", "pants_b", "cuff_b",
                          "length", "twist"},
                         "gluing");
            g.gluings.push_back({integer(e, "pants_a", ctx),
                                 integer(e, "cuff_a", ctx),
                                 integer(e, "pants_b", ctx),
                                 integer(e, "cuff_b", ctx),
                                 num(e, "length", ctx),
                                 num(e, "twist", ctx)});
        }
        for (const auto& e : legs) {
            check_fields(e, {"pants", "cuff", "length"}, "leg");
            g.legs.push_back({integer(e, "pants", ctx),
                              integer(e, "cuff", ctx),
                              num(e, "length", ctx)});
        }
        return build_from_pants_graph(g);
    }
    if (kind == "special_x") {
        check_fields(spec, {"kind", "n", "l_gamma"}, ctx);
        return build_special_X(integer(spec, "n", ctx),
                               num(spec, "l_gamma", ctx));
    }
    if (kind == "cover_family") {
        check_fields(spec, {"kind", "base", "k", "m"}, ctx);
        const fuchsian_surface base =
            surface_from_spec_json(field(spec, "base", ctx));
        return cover_family(base, integer(spec, "k", ctx),
                            integer(spec, "m", ctx));
    }
    if (kind == "cyclic_cover") {
        check_fields(spec, {"kind", "base", "images", "modulus"}, ctx);
        const fuchsian_surface base =
            surface_from_spec_json(field(spec, "base", ctx));
        const auto& im = field(spec, "images", ctx);
        if (!im.is_array() || im.empty())
            bad("cyclic_cover spec: images must be a nonempty array");
        std::vector<int> images;
        for (const auto& q : im) {
            if (!q.is_number_integer())
                bad("cyclic_cover spec: images must be integers");
            images.push_back(q.get<int>());
        }
        return cyclic_cover(base, images, integer(spec, "modulus", ctx));
    }
    bad("surface spec: unknown kind '" + kind + "'");
}

ordered_json parse_json_file(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad("cannot parse JSON file '" + path + "': " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) bad("cannot write file '" + path + "'");
    out << text;
    if (!out) bad("write to '" + path + "' failed");
}

}  // namespace orthospec::io
