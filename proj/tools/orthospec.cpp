// orthospec: build hyperbolic surfaces from Fenchel-Nielsen data, enumerate
// certified ortho and length spectra, verify boundary identities, run the
// cover and exponent experiments.
//
// Exit codes: 0 success, 2 input error, 3 insufficient data,
// 4 certification failure.  Outputs embed a run manifest and are
// byte-identical across reruns with the same manifest; --threads never
// enters the manifest and never changes any output byte.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orthospec/build.hpp"
#include "orthospec/covers.hpp"
#include "orthospec/errors.hpp"
#include "orthospec/identities.hpp"
#include "orthospec/io.hpp"
#include "orthospec/ortho.hpp"
#include "orthospec/spectra.hpp"
#include "orthospec/surface.hpp"
#include "orthospec/version.hpp"

namespace os = orthospec;
using os::io::ordered_json;

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// Options shared by every subcommand.  --threads is accepted for interface
// stability, validated, and deliberately unused: all kernels are
// deterministic and single-threaded, so every value produces identical
// bytes.  --seed feeds nothing in the current commands (reserved for
// property sweeps) but is recorded.
struct globals {
    double cutoff{8.0};
    double tol{-1.0};  // negative: per-command default
    int threads{1};
    bool require_certified{false};
    unsigned long long seed{0};
    std::string precision{"double"};
};

void add_globals(CLI::App* c, globals& g, bool with_cutoff = true) {
    if (with_cutoff)
        c->add_option("--cutoff", g.cutoff, "length cutoff")
            ->check(CLI::PositiveNumber);
    c->add_option("--tol", g.tol, "tolerance override");
    c->add_option("--threads", g.threads,
                  "worker threads (outputs are identical for every value)")
        ->check(CLI::Range(1, 1024));
    c->add_flag("--require-certified", g.require_certified,
                "fail (exit 4) when a certificate is missing");
    c->add_option("--seed", g.seed, "seed for randomized sweeps");
    c->add_option("--precision", g.precision,
                  "float evaluation mode; extended adds a long-double "
                  "re-accumulation diagnostic")
        ->check(CLI::IsMember({"double", "extended"}));
}

std::string tail_globals(const globals& g) {
    return " seed=" + std::to_string(g.seed) + " precision=" + g.precision;
}

std::string hash_files(const std::vector<std::string>& paths) {
    std::string h;
    for (const auto& p : paths) {
        if (!h.empty()) h += "+";
        h += os::io::fnv1a_hex(os::io::read_text_file(p));
    }
    return h;
}

os::io::run_manifest make_manifest(std::string command,
                                   const std::vector<std::string>& inputs,
                                   double cutoff, double tol,
                                   std::string cert_status) {
    os::io::run_manifest m;
    m.command = std::move(command);
    m.input_hash = hash_files(inputs);
    m.cutoff = cutoff;
    m.tolerance = tol;
    m.tool_version = os::tool_version;
    m.certificate_status = std::move(cert_status);
    return m;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        os::io::write_text_file(out_path, text);
}

void note(const char* fmt_str, ...) {
    va_list ap;
    va_start(ap, fmt_str);
    std::vfprintf(stdout, fmt_str, ap);
    va_end(ap);
}

ordered_json fit_json(const os::exponent_fit& f) {
    ordered_json j;
    j["estimate"] = f.estimate;
    j["amplitude"] = f.amplitude;
    j["window"] = ordered_json::array({f.window_lo, f.window_hi});
    j["residual"] = f.residual;
    j["method"] = f.method;
    return j;
}

void enforce_certified(const os::ortho_spectrum_t& sp, const globals& g) {
    if (g.require_certified && !sp.certificate.certified)
        throw os::certification_error(
            "spectrum is heuristic (ball radius " +
            fmt(sp.certificate.ball_radius) +
            ") and --require-certified is set");
}

// Long-double pairwise sum of f(length) over the entries: the --precision
// extended diagnostic re-accumulates identity partial sums with wider
// intermediate precision (the terms themselves are double).
template <typename F>
long double pairwise_ld(const std::vector<os::ortho_entry>& v, F f,
                        std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return 0.0L;
    if (hi - lo == 1) return static_cast<long double>(f(v[lo].length));
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_ld(v, f, lo, mid) + pairwise_ld(v, f, mid, hi);
}

// ---- build -----------------------------------------------------------------

struct build_opts {
    std::string spec_file;
    std::string out;
};

void run_build(const build_opts& o, const globals& g) {
    const ordered_json spec = os::io::parse_json_file(o.spec_file);
    const os::fuchsian_surface s = os::io::surface_from_spec_json(spec);
    const os::validation_report vr = os::validate_surface(s);
    const std::string cert =
        s.dirichlet ? (s.dirichlet->stable ? "certified" : "heuristic")
                    : "n/a";
    const auto m = make_manifest("build" + tail_globals(g), {o.spec_file},
                                 0.0, g.tol < 0 ? 0.0 : g.tol, cert);
    emit(o.out, os::io::surface_to_json(s, m).dump(2) + "\n");
    note("built %s: genus=%d boundary=%zu chi=%d fingerprint=%s\n",
         s.kind.c_str(), s.genus, s.boundary.size(),
         s.euler_characteristic(), os::surface_fingerprint(s).c_str());
    note("validation: %s (worst boundary length error %s)\n",
         vr.pass ? "pass" : "FAIL", fmt(vr.worst_boundary_length_error).c_str());
    if (!vr.pass) {
        for (const auto& f : vr.failures) note("  %s\n", f.c_str());
        throw os::certification_error("surface validation failed");
    }
}

// ---- spectrum --------------------------------------------------------------

struct spectrum_opts {
    std::string surface_file;
    std::string out;
    std::string format{"json"};
    bool allow_heuristic{false};
};

void run_spectrum(const spectrum_opts& o, const globals& g) {
    const os::fuchsian_surface s =
        os::io::surface_from_json(os::io::parse_json_file(o.surface_file));
    os::ortho_options opts;
    if (g.tol >= 0) opts.length_tol = g.tol;
    opts.allow_heuristic = o.allow_heuristic;
    const os::ortho_spectrum_t sp = os::ortho_spectrum(s, g.cutoff, opts);
    enforce_certified(sp, g);
    const auto m = make_manifest(
        "spectrum cutoff=" + fmt(g.cutoff) + " format=" + o.format +
            " tol=" + fmt(opts.length_tol) +
            " allow-heuristic=" + (o.allow_heuristic ? "1" : "0") +
            tail_globals(g),
        {o.surface_file}, g.cutoff, opts.length_tol,
        sp.certificate.certified ? "certified" : "heuristic");
    if (o.format == "csv") {
        std::string text = os::io::spectrum_to_csv(sp);
        text += "# manifest " + os::io::manifest_json(m).dump() + "\n";
        emit(o.out, text);
    } else {
        emit(o.out, os::io::spectrum_to_json(sp, m).dump(2) + "\n");
    }
    note("spectrum: %zu entries at cutoff %s, %s (tube radius %s)\n",
         sp.size(), fmt(sp.cutoff).c_str(),
         sp.certificate.certified ? "certified" : "heuristic",
         fmt(sp.certificate.ball_radius).c_str());
}

// ---- verify ----------------------------------------------------------------

struct verify_opts {
    std::string surface_file;
    std::string spectrum_file;
    std::string identity{"both"};
    std::string out;
};

void print_report(const os::identity_report& r) {
    note("%s: partial=%s target=%s tail_bound=%s -> %s\n",
         r.identity.c_str(), fmt(r.partial_sum).c_str(),
         fmt(r.target).c_str(), fmt(r.tail_bound).c_str(),
         r.verdict ? "PASS" : "FAIL");
    for (std::size_t i = 0; i < r.per_boundary.size(); ++i)
        note("  boundary %zu: partial=%s target=%s tail=%s\n", i,
             fmt(r.per_boundary[i]).c_str(),
             fmt(r.per_boundary_target[i]).c_str(),
             fmt(r.per_boundary_tail[i]).c_str());
}

void run_verify(const verify_opts& o, const globals& g) {
    const os::fuchsian_surface s =
        os::io::surface_from_json(os::io::parse_json_file(o.surface_file));
    const os::ortho_spectrum_t sp =
        os::io::spectrum_from_json(os::io::parse_json_file(o.spectrum_file));
    if (sp.fingerprint != os::surface_fingerprint(s))
        throw os::spec_error(
            "spectrum fingerprint does not match the surface (the spectrum "
            "was computed from a different surface)");
    enforce_certified(sp, g);

    const bool basm = o.identity == "basmajian" || o.identity == "both";
    const bool brid = o.identity == "bridgeman" || o.identity == "both";
    const double tol_basm = g.tol >= 0 ? g.tol : 1e-3;
    const double tol_brid = g.tol >= 0 ? g.tol : 1e-2;
    const auto m = make_manifest(
        "verify identity=" + o.identity + " tol-basmajian=" + fmt(tol_basm) +
            " tol-bridgeman=" + fmt(tol_brid) + tail_globals(g),
        {o.surface_file, o.spectrum_file}, sp.cutoff,
        g.tol < 0 ? 0.0 : g.tol,
        sp.certificate.certified ? "certified" : "heuristic");

    ordered_json out;
    out["schema"] = "orthospec.verify/1";
    ordered_json reports = ordered_json::array();
    bool all_pass = true;
    if (basm) {
        const auto r = os::basmajian_check(s, sp, tol_basm);
        print_report(r);
        reports.push_back(os::io::report_to_json(r, m));
        all_pass = all_pass && r.verdict;
        if (g.precision == "extended") {
            const long double acc = pairwise_ld(
                sp.entries, [](double l) { return os::basmajian_term(l); },
                0, sp.entries.size());
            note("  extended accumulation: %.21Lg (double-chain delta %.3Lg)\n",
                 acc, acc - static_cast<long double>(r.partial_sum));
        }
    }
    if (brid) {
        const auto r = os::bridgeman_check(s, sp, tol_brid);
        print_report(r);
        reports.push_back(os::io::report_to_json(r, m));
        all_pass = all_pass && r.verdict;
        if (g.precision == "extended") {
            const long double acc = pairwise_ld(
                sp.entries, [](double l) { return os::bridgeman_term(l); },
                0, sp.entries.size());
            note("  extended accumulation: %.21Lg (double-chain delta %.3Lg)\n",
                 acc, acc - static_cast<long double>(r.partial_sum));
        }
    }
    out["reports"] = std::move(reports);
    out["verdict"] = all_pass;
    out["manifest"] = os::io::manifest_json(m);
    if (!o.out.empty()) emit(o.out, out.dump(2) + "\n");
    if (!all_pass)
        throw os::certification_error(
            "identity verification failed (see report)");
}

// ---- covers ----------------------------------------------------------------

struct covers_opts {
    int k{2};
    double gamma{2.0};
    std::string out;
};

void run_covers(const covers_opts& o, globals g) {
    if (o.k < 0 || o.k > 4)
        throw os::spec_error("covers: k must lie in [0, 4] (cost cap)");
    const int n = 1 << o.k;
    const double l_alpha = std::acosh(1.5) / n;
    const double tol = g.tol >= 0 ? g.tol : 1e-8;

    const os::fuchsian_surface base = os::build_special_X(n, o.gamma);
    const os::ortho_spectrum_t base_sp = os::ortho_spectrum(base, g.cutoff);
    const double systole_cap = std::max(2.0, 1.5 * o.gamma);
    const double base_sys = os::systole(base, systole_cap);
    note("base X(%d): l_alpha=%s systole=%s entries=%zu\n", n,
         fmt(l_alpha).c_str(), fmt(base_sys).c_str(), base_sp.size());

    struct cover_row {
        int m;
        os::ortho_spectrum_t sp;
        double sys, predicted;
        bool sys_ok, audit_ok;
        std::string fingerprint;
    };
    std::vector<cover_row> rows;
    bool verdict = true;

    // Degree-n lifting audit: group entries into distinct lengths; the
    // cover must show the same distinct lengths with multiplicities scaled
    // by exactly the degree, and nothing else.
    const auto groups = [tol](const std::vector<os::ortho_entry>& es,
                              double w) {
        std::vector<std::pair<double, std::size_t>> gs;
        for (const auto& e : es) {
            if (e.length > w) break;
            if (!gs.empty() && e.length - gs.back().first <= tol)
                ++gs.back().second;
            else
                gs.emplace_back(e.length, 1);
        }
        return gs;
    };
    const auto audit = [&](const os::ortho_spectrum_t& csp) {
        const double w = g.cutoff - 1e-6;
        const auto gb = groups(base_sp.entries, w);
        const auto gc = groups(csp.entries, w);
        if (gb.size() != gc.size()) return false;
        for (std::size_t t = 0; t < gb.size(); ++t)
            if (std::abs(gb[t].first - gc[t].first) > tol ||
                gc[t].second !=
                    static_cast<std::size_t>(n) * gb[t].second)
                return false;
        return true;
    };

    for (int m = 0; m <= o.k; ++m) {
        cover_row r;
        r.m = m;
        const os::fuchsian_surface cov = os::cover_family(base, o.k, m);
        r.fingerprint = os::surface_fingerprint(cov);
        r.sp = os::ortho_spectrum(cov, g.cutoff);
        r.sys = os::systole(cov, systole_cap);
        r.predicted = (1 << (o.k - m)) * l_alpha;
        r.sys_ok = std::abs(r.sys - r.predicted) <= 1e-8;
        r.audit_ok = audit(r.sp);
        verdict = verdict && r.sys_ok && r.audit_ok;
        note("cover m=%d: entries=%zu systole=%s predicted=%s %s audit=%s\n",
             m, r.sp.size(), fmt(r.sys).c_str(), fmt(r.predicted).c_str(),
             r.sys_ok ? "ok" : "MISMATCH", r.audit_ok ? "ok" : "FAIL");
        rows.push_back(std::move(r));
    }

    ordered_json pairwise = ordered_json::array();
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
            const auto c = os::compare_spectra(rows[a].sp, rows[b].sp, tol);
            verdict = verdict && c.isospectral;
            note("m=%d vs m=%d: %s (counts %zu/%zu, max discrepancy %s)\n",
                 rows[a].m, rows[b].m,
                 c.isospectral ? "isospectral" : "DIFFERENT", c.count_a,
                 c.count_b, fmt(c.max_discrepancy).c_str());
            ordered_json pj;
            pj["a"] = rows[a].m;
            pj["b"] = rows[b].m;
            pj["isospectral"] = c.isospectral;
            pj["count_a"] = c.count_a;
            pj["count_b"] = c.count_b;
            pj["max_discrepancy"] = c.max_discrepancy;
            pairwise.push_back(std::move(pj));
        }

    const auto man = make_manifest(
        "covers k=" + std::to_string(o.k) + " gamma=" + fmt(o.gamma) +
            " cutoff=" + fmt(g.cutoff) + " tol=" + fmt(tol) +
            tail_globals(g),
        {}, g.cutoff, tol, "certified");
    ordered_json out;
    out["schema"] = "orthospec.covers/1";
    out["k"] = o.k;
    out["gamma"] = o.gamma;
    out["cutoff"] = g.cutoff;
    out["l_alpha"] = l_alpha;
    out["base"] = ordered_json{{"fingerprint", os::surface_fingerprint(base)},
                               {"entries", base_sp.size()},
                               {"systole", base_sys}};
    ordered_json cj = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["m"] = r.m;
        j["fingerprint"] = r.fingerprint;
        j["entries"] = r.sp.size();
        j["systole"] = r.sys;
        j["predicted_systole"] = r.predicted;
        j["systole_ok"] = r.sys_ok;
        j["multiplicity_audit_ok"] = r.audit_ok;
        cj.push_back(std::move(j));
    }
    out["covers"] = std::move(cj);
    out["pairwise"] = std::move(pairwise);
    out["verdict"] = verdict;
    out["manifest"] = os::io::manifest_json(man);
    if (!o.out.empty()) emit(o.out, out.dump(2) + "\n");
    note("covers verdict: %s\n", verdict ? "PASS" : "FAIL");
    if (!verdict)
        throw os::certification_error("cover experiment verdict failed");
}

// ---- exponents -------------------------------------------------------------

struct exponents_opts {
    std::string surface_file;
    std::vector<double> cutoffs;
    double ball{0.0};  // 0: max cutoff
    std::string out;
    std::string radii_csv;
};

void run_exponents(const exponents_opts& o, const globals& g) {
    const os::fuchsian_surface s =
        os::io::surface_from_json(os::io::parse_json_file(o.surface_file));
    std::vector<double> cutoffs = o.cutoffs;
    std::sort(cutoffs.begin(), cutoffs.end());
    if (cutoffs.empty() || !(cutoffs.front() > 0))
        throw os::spec_error("exponents: need positive --cutoffs");
    const double L = cutoffs.back();
    const double R = o.ball > 0 ? o.ball : L;

    const os::ortho_spectrum_t sp = os::ortho_spectrum(s, L);
    const os::exponent_fit of = os::ortho_exponent(sp);
    ordered_json div_j;
    try {
        div_j = fit_json(os::divergence_exponent(sp));
    } catch (const os::insufficient_data_error&) {
        div_j = nullptr;
    }
    const auto radii = os::boundary_interval_radii(s, R);
    const os::exponent_fit pk = os::packing_exponent(radii);
    const auto radii_inflated = os::boundary_interval_radii(s, 1.25 * R);
    const os::exponent_fit pk2 = os::packing_exponent(radii_inflated);

    std::string cutoffs_str;
    for (double c : cutoffs) {
        if (!cutoffs_str.empty()) cutoffs_str += ",";
        cutoffs_str += fmt(c);
    }
    const auto m = make_manifest(
        "exponents cutoffs=" + cutoffs_str + " ball=" + fmt(R) +
            tail_globals(g),
        {o.surface_file}, L, g.tol < 0 ? 0.0 : g.tol,
        sp.certificate.certified ? "certified" : "heuristic");

    ordered_json out;
    out["schema"] = "orthospec.exponents/1";
    ordered_json counts = ordered_json::array();
    for (double c : cutoffs) {
        std::size_t nc = 0;
        for (const auto& e : sp.entries)
            if (e.length <= c) ++nc;
        counts.push_back(ordered_json{{"cutoff", c}, {"count", nc}});
    }
    out["counts"] = std::move(counts);
    out["ortho"] = fit_json(of);
    out["divergence"] = div_j;
    out["ball_radius"] = R;
    out["radii_count"] = radii.size();
    out["packing"] = fit_json(pk);
    out["packing_inflated"] = fit_json(pk2);
    out["difference"] = std::abs(of.estimate - pk.estimate);
    out["manifest"] = os::io::manifest_json(m);
    if (!o.out.empty()) emit(o.out, out.dump(2) + "\n");

    if (!o.radii_csv.empty()) {
        std::string csv = "center,radius,perp_length,component\n";
        for (const auto& r : radii) {
            csv += fmt(r.center) + "," + fmt(r.radius) + "," +
                   fmt(r.perp_length) + "," + std::to_string(r.component) +
                   "\n";
        }
        csv += "# manifest " + os::io::manifest_json(m).dump() + "\n";
        os::io::write_text_file(o.radii_csv, csv);
    }
    note("ortho exponent:   %s  (window [%s, %s], residual %s)\n",
         fmt(of.estimate).c_str(), fmt(of.window_lo).c_str(),
         fmt(of.window_hi).c_str(), fmt(of.residual).c_str());
    note("packing exponent: %s  (%zu radii at R=%s; inflated: %s)\n",
         fmt(pk.estimate).c_str(), radii.size(), fmt(R).c_str(),
         fmt(pk2.estimate).c_str());
    note("difference: %s\n", fmt(std::abs(of.estimate - pk.estimate)).c_str());
}

// ---- reconstruct -----------------------------------------------------------

struct reconstruct_opts {
    std::string spectrum_file;
    std::string out;
};

void run_reconstruct(const reconstruct_opts& o, const globals& g) {
    const os::ortho_spectrum_t sp =
        os::io::spectrum_from_json(os::io::parse_json_file(o.spectrum_file));
    enforce_certified(sp, g);
    const os::torus_params p = os::reconstruct_torus(sp);
    const auto m = make_manifest("reconstruct" + tail_globals(g),
                                 {o.spectrum_file}, sp.cutoff,
                                 g.tol < 0 ? 0.0 : g.tol,
                                 sp.certificate.certified ? "certified"
                                                          : "heuristic");
    ordered_json out;
    out["schema"] = "orthospec.torus/1";
    out["l_gamma"] = p.l_gamma;
    out["l_alpha"] = p.l_alpha;
    out["twist_abs"] = p.twist_abs;
    out["manifest"] = os::io::manifest_json(m);
    if (!o.out.empty()) emit(o.out, out.dump(2) + "\n");
    note("reconstructed one-holed torus: l_gamma=%s l_alpha=%s |twist|=%s\n",
         fmt(p.l_gamma).c_str(), fmt(p.l_alpha).c_str(),
         fmt(p.twist_abs).c_str());
}

// ---- compare ---------------------------------------------------------------

struct compare_opts {
    std::string file_a, file_b;
    std::string out;
};

void run_compare(const compare_opts& o, const globals& g) {
    const os::ortho_spectrum_t a =
        os::io::spectrum_from_json(os::io::parse_json_file(o.file_a));
    const os::ortho_spectrum_t b =
        os::io::spectrum_from_json(os::io::parse_json_file(o.file_b));
    enforce_certified(a, g);
    enforce_certified(b, g);
    const double tol = g.tol >= 0 ? g.tol : 1e-8;
    const auto c = os::compare_spectra(a, b, tol);
    const auto m = make_manifest(
        "compare tol=" + fmt(tol) + tail_globals(g), {o.file_a, o.file_b},
        c.common_cutoff, tol,
        a.certificate.certified && b.certificate.certified ? "certified"
                                                           : "heuristic");
    ordered_json out;
    out["schema"] = "orthospec.compare/1";
    out["isospectral"] = c.isospectral;
    out["common_cutoff"] = c.common_cutoff;
    out["count_a"] = c.count_a;
    out["count_b"] = c.count_b;
    out["max_discrepancy"] = c.max_discrepancy;
    out["first_index"] = c.first_index;
    out["first_a"] = c.first_a;
    out["first_b"] = c.first_b;
    out["manifest"] = os::io::manifest_json(m);
    if (!o.out.empty()) emit(o.out, out.dump(2) + "\n");
    if (c.isospectral)
        note("isospectral at cutoff %s (%zu entries, max discrepancy %s)\n",
             fmt(c.common_cutoff).c_str(), c.count_a,
             fmt(c.max_discrepancy).c_str());
    else if (c.count_a != c.count_b)
        note("different: %zu vs %zu entries below cutoff %s\n", c.count_a,
             c.count_b, fmt(c.common_cutoff).c_str());
    else
        note("different: first mismatch at index %td (%s vs %s)\n",
             c.first_index, fmt(c.first_a).c_str(), fmt(c.first_b).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified ortho and length spectra of hyperbolic surfaces "
                 "with geodesic boundary"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string(os::tool_name) + " " + os::tool_version);

    globals g;
    build_opts bo;
    spectrum_opts so;
    verify_opts vo;
    covers_opts co;
    exponents_opts eo;
    reconstruct_opts ro;
    compare_opts po;

    auto* cb = app.add_subcommand(
        "build", "construct a surface from a Fenchel-Nielsen spec");
    cb->add_option("spec", bo.spec_file, "surface spec JSON")->required();
    cb->add_option("-o,--output", bo.out, "surface file (stdout if absent)");
    add_globals(cb, g, false);
    cb->callback([&] { run_build(bo, g); });

    auto* cs = app.add_subcommand("spectrum",
                                  "enumerate the certified ortho spectrum");
    cs->add_option("surface", so.surface_file, "surface file")->required();
    cs->add_option("-o,--output", so.out, "spectrum file (stdout if absent)");
    cs->add_option("--format", so.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cs->add_flag("--allow-heuristic", so.allow_heuristic,
                 "return a truncated enumeration instead of failing when "
                 "the certified tube exceeds the element cap");
    add_globals(cs, g);
    cs->callback([&] { run_spectrum(so, g); });

    auto* cv = app.add_subcommand("verify",
                                  "check boundary identities on a spectrum");
    cv->add_option("surface", vo.surface_file, "surface file")->required();
    cv->add_option("spectrum", vo.spectrum_file, "spectrum file")->required();
    cv->add_option("--identity", vo.identity, "which identity")
        ->check(CLI::IsMember({"basmajian", "bridgeman", "both"}));
    cv->add_option("-o,--output", vo.out, "report file");
    add_globals(cv, g, false);
    cv->callback([&] { run_verify(vo, g); });

    auto* cc = app.add_subcommand(
        "covers", "cyclic-cover family: isospectrality and systoles");
    cc->add_option("--k", co.k, "family order (degree 2^k)")->required();
    cc->add_option("--gamma", co.gamma, "base boundary length")
        ->check(CLI::PositiveNumber);
    cc->add_option("-o,--output", co.out, "report file");
    add_globals(cc, g);
    cc->callback([&] { run_covers(co, g); });

    auto* ce = app.add_subcommand(
        "exponents", "ortho counting vs interval packing exponents");
    ce->add_option("surface", eo.surface_file, "surface file")->required();
    ce->add_option("--cutoffs", eo.cutoffs, "cutoff list")
        ->required()
        ->delimiter(',');
    ce->add_option("--ball", eo.ball, "lift ball radius (max cutoff if 0)");
    ce->add_option("-o,--output", eo.out, "report file");
    ce->add_option("--radii-csv", eo.radii_csv, "write the radii table");
    add_globals(ce, g, false);
    ce->callback([&] { run_exponents(eo, g); });

    auto* cr = app.add_subcommand(
        "reconstruct", "one-holed torus parameters from an ortho spectrum");
    cr->add_option("spectrum", ro.spectrum_file, "spectrum file")->required();
    cr->add_option("-o,--output", ro.out, "parameter file");
    add_globals(cr, g, false);
    cr->callback([&] { run_reconstruct(ro, g); });

    auto* cp = app.add_subcommand("compare", "compare two ortho spectra");
    cp->add_option("a", po.file_a, "first spectrum")->required();
    cp->add_option("b", po.file_b, "second spectrum")->required();
    cp->add_option("-o,--output", po.out, "report file");
    add_globals(cp, g, false);
    cp->callback([&] { run_compare(po, g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const os::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
