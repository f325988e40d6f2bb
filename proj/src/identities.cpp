#include "orthospec/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthospec/errors.hpp"

namespace orthospec {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2_6 = pi * pi / 6.0;

// Safety factor applied to fitted tail estimates when used as bounds.
constexpr double tail_safety = 2.0;

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += v[k];
        return s;
    }
    const std::size_t mid = n / 2;
    return pairwise_sum_impl(v, mid) + pairwise_sum_impl(v + mid, n - mid);
}

// w(l) e^l and F(l) e^l (F without the 2/pi factor), stable for all l > 0:
// direct evaluation up to moderate l, two-term asymptotics past the point
// where both agree to full precision.
double basmajian_scaled(double l) {
    if (l <= 20.0) return basmajian_term(l) * std::exp(l);
    return 4.0 / (1.0 - std::exp(-2.0 * l));
}

double rogers_sech2_scaled(double l) {
    if (l <= 20.0) {
        const double ch = std::cosh(l / 2.0);
        return rogers_dilog(1.0 / (ch * ch)) * std::exp(l);
    }
    // x = sech^2(l/2) = 4 e^-l / (1 + e^-l)^2;  L(x) ~ x (1 - log(x) / 2).
    const double em = std::exp(-l);
    const double s = 1.0 + em;
    const double log_x = 2.0 * std::numbers::ln2 - l - 2.0 * std::log1p(em);
    return (4.0 / (s * s)) * (1.0 - 0.5 * log_x);
}

// I_f(L, d) = integral over x >= 0 of f(L + x) e^(d x) dx, for f among the
// two summands, with the common e^-L factor removed (it cancels in
// ratios).  Substituting s = (1 - d) x gives a smooth integrand bounded by
// a polynomial times e^-s; composite Simpson on s in [0, 40].
template <typename F>
double tail_integral_scaled(F f_scaled, double L, double delta) {
    const double om = 1.0 - delta;
    // Integrand in s: f(L+x) e^(d x) dx = f_scaled(L+x) e^(-(L+x)) e^(d x)
    // dx = e^-L f_scaled(L+x) e^(-s) ds / om.  Dropping e^-L:
    const auto h = [&](double s) {
        const double x = s / om;
        return f_scaled(L + x) * std::exp(-s) / om;
    };
    const int n = 4096;  // panels (even)
    const double a = 0.0, b = 40.0;
    const double step = (b - a) / n;
    double acc = h(a) + h(b);
    for (int k = 1; k < n; ++k)
        acc += h(a + step * k) * (k % 2 ? 4.0 : 2.0);
    return acc * step / 3.0;
}

double tail_ratio(double L, double delta) {
    const double num = tail_integral_scaled(rogers_sech2_scaled, L, delta);
    const double den = tail_integral_scaled(basmajian_scaled, L, delta);
    return num / den;
}

std::vector<double> entry_lengths(const ortho_spectrum_t& sp) {
    std::vector<double> lens;
    lens.reserve(sp.entries.size());
    for (const auto& e : sp.entries) lens.push_back(e.length);
    return lens;
}

std::size_t count_below(const std::vector<double>& sorted, double l) {
    return static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), l) - sorted.begin());
}

// Trailing integer cutoffs K with a usable count, largest last.
std::vector<double> fit_window(double L) {
    std::vector<double> ks;
    const double hi = std::floor(L);
    for (double k = hi - 3.0; k <= hi; k += 1.0)
        if (k >= 1.0) ks.push_back(k);
    return ks;
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum_impl(v.data(), v.size());
}

double basmajian_term(double l) {
    if (!(l > 0))
        throw domain_error("basmajian_term: length must be positive");
    return 2.0 * std::asinh(1.0 / std::sinh(l));
}

double rogers_dilog(double x) {
    if (!(x >= 0.0) || !(x <= 1.0))
        throw domain_error("rogers_dilog: argument outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi2_6;
    if (x > 0.5) return pi2_6 - rogers_dilog(1.0 - x);
    // Defining series on (0, 1/2]: Li2(x) = sum x^k / k^2.
    double li2 = 0.0;
    double p = 1.0;
    for (int k = 1; k <= 64; ++k) {
        p *= x;
        const double term = p / (static_cast<double>(k) * k);
        li2 += term;
        if (term < 1e-18 * li2) break;
    }
    return li2 + 0.5 * std::log(x) * std::log1p(-x);
}

double bridgeman_term(double l) {
    if (!(l > 0))
        throw domain_error("bridgeman_term: length must be positive");
    const double ch = std::cosh(l / 2.0);
    return bridgeman_constant * rogers_dilog(1.0 / (ch * ch));
}

double perimeter(const fuchsian_surface& s) {
    std::vector<double> lens;
    lens.reserve(s.boundary.size());
    for (const auto& bc : s.boundary) lens.push_back(bc.length);
    return pairwise_sum(lens);
}

count_growth_fit fit_count_growth(const std::vector<double>& lengths,
                                  double L) {
    std::vector<double> sorted = lengths;
    std::sort(sorted.begin(), sorted.end());
    count_growth_fit fit;
    std::vector<double> ks, lns;
    for (const double k : fit_window(L)) {
        const auto n = count_below(sorted, k);
        if (n == 0) continue;
        ks.push_back(k);
        lns.push_back(std::log(static_cast<double>(n)));
    }
    if (ks.size() < 2) return fit;  // ok = false
    const auto m = static_cast<double>(ks.size());
    double sk = 0, sl = 0, skk = 0, skl = 0;
    for (std::size_t t = 0; t < ks.size(); ++t) {
        sk += ks[t];
        sl += lns[t];
        skk += ks[t] * ks[t];
        skl += ks[t] * lns[t];
    }
    const double den = m * skk - sk * sk;
    if (den <= 0) return fit;
    double delta = (m * skl - sk * sl) / den;
    delta = std::clamp(delta, 0.05, 0.98);
    double amp = 0.0;
    for (std::size_t t = 0; t < ks.size(); ++t)
        amp = std::max(amp, std::exp(lns[t] - delta * ks[t]));
    // Raise to dominate the count at the cutoff itself as well.
    const auto nL = count_below(sorted, L);
    if (nL > 0)
        amp = std::max(amp,
                       static_cast<double>(nL) * std::exp(-delta * L));
    fit.delta = delta;
    fit.amp = amp;
    fit.ok = true;
    return fit;
}

double basmajian_tail_estimate(const count_growth_fit& fit, double L) {
    if (!fit.ok) return 0.0;
    return 4.0 * fit.delta / (1.0 - fit.delta) * fit.amp *
           std::exp((fit.delta - 1.0) * L);
}

identity_report basmajian_check(const fuchsian_surface& s,
                                const ortho_spectrum_t& sp,
                                double tolerance) {
    identity_report rep;
    rep.identity = "basmajian";
    rep.cutoff = sp.cutoff;
    rep.tolerance = tolerance;
    rep.target = perimeter(s);

    const std::size_t nb = s.boundary.size();
    std::vector<std::vector<double>> by_boundary(nb);
    std::vector<double> terms;
    terms.reserve(sp.entries.size());
    for (const auto& e : sp.entries) {
        const double t = basmajian_term(e.length);
        terms.push_back(t);
        by_boundary[static_cast<size_t>(e.i)].push_back(t);
    }
    rep.partial_sum = pairwise_sum(terms);

    const auto fit = fit_count_growth(entry_lengths(sp), sp.cutoff);
    rep.tail_fit_ok = fit.ok;
    rep.tail_delta = fit.delta;
    rep.tail_amp = fit.amp;
    rep.tail_bound =
        tail_safety * basmajian_tail_estimate(fit, sp.cutoff);

    bool ok = fit.ok && sp.certificate.certified;
    ok = ok && rep.partial_sum <= rep.target + 1e-9;
    ok = ok && std::abs(rep.target - rep.partial_sum) <=
                   rep.tail_bound + tolerance;

    for (std::size_t i = 0; i < nb; ++i) {
        rep.per_boundary.push_back(pairwise_sum(by_boundary[i]));
        rep.per_boundary_target.push_back(s.boundary[i].length);
        // Per-component tail from the component's own counts, sharing the
        // global growth rate.
        double tail_i = 0.0;
        if (fit.ok) {
            std::vector<double> lens_i;
            for (const auto& e : sp.entries)
                if (static_cast<size_t>(e.i) == i)
                    lens_i.push_back(e.length);
            std::sort(lens_i.begin(), lens_i.end());
            double amp_i = 0.0;
            for (const double k : fit_window(sp.cutoff)) {
                const auto n = count_below(lens_i, k);
                if (n > 0)
                    amp_i = std::max(amp_i, static_cast<double>(n) *
                                                std::exp(-fit.delta * k));
            }
            const auto nL = count_below(lens_i, sp.cutoff);
            if (nL > 0)
                amp_i = std::max(amp_i, static_cast<double>(nL) *
                                            std::exp(-fit.delta *
                                                     sp.cutoff));
            count_growth_fit fi{fit.delta, amp_i, amp_i > 0.0};
            tail_i = tail_safety * basmajian_tail_estimate(fi, sp.cutoff);
        }
        rep.per_boundary_tail.push_back(tail_i);
        ok = ok && rep.per_boundary[i] <= rep.per_boundary_target[i] + 1e-9;
        ok = ok && std::abs(rep.per_boundary_target[i] -
                            rep.per_boundary[i]) <= tail_i + tolerance;
    }
    rep.verdict = ok;
    return rep;
}

identity_report bridgeman_check(const fuchsian_surface& s,
                                const ortho_spectrum_t& sp,
                                double tolerance) {
    identity_report rep;
    rep.identity = "bridgeman";
    rep.cutoff = sp.cutoff;
    rep.tolerance = tolerance;
    rep.target = 2.0 * pi * std::abs(s.euler_characteristic());

    std::vector<double> terms;
    terms.reserve(sp.entries.size());
    for (const auto& e : sp.entries)
        terms.push_back(bridgeman_term(e.length));
    rep.partial_sum = pairwise_sum(terms);

    const auto fit = fit_count_growth(entry_lengths(sp), sp.cutoff);
    rep.tail_fit_ok = fit.ok;
    rep.tail_delta = fit.delta;
    rep.tail_amp = fit.amp;
    if (fit.ok) {
        // Per-term inflation of the Basmajian tail: F(l) / w(l) grows like
        // (2/pi)(1 + (l - 2 log 2) / 2); evaluate it at the tail's mean
        // location L + 1 / (1 - delta).
        const double l_eff = sp.cutoff + 1.0 / (1.0 - fit.delta);
        const double phi =
            1.0 + 0.5 * (l_eff - 2.0 * std::numbers::ln2);
        rep.tail_bound = tail_safety * bridgeman_constant * phi *
                         basmajian_tail_estimate(fit, sp.cutoff);
    }

    bool ok = fit.ok && sp.certificate.certified;
    ok = ok && rep.partial_sum <= rep.target + 1e-9;
    ok = ok && std::abs(rep.target - rep.partial_sum) <=
                   rep.tail_bound + tolerance;
    rep.verdict = ok;
    return rep;
}

calibration_result calibrate_bridgeman(const fuchsian_surface& s,
                                       const ortho_spectrum_t& sp) {
    calibration_result res;
    res.cutoff = sp.cutoff;
    const double target = 2.0 * pi * std::abs(s.euler_characteristic());
    const double perim = perimeter(s);

    std::vector<double> sorted = entry_lengths(sp);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty())
        throw insufficient_data_error(
            "calibrate_bridgeman: empty spectrum");

    // Window of anchor cutoffs; at each, the Basmajian tail M(K) is exact.
    std::vector<double> ks;
    for (const double k : fit_window(sp.cutoff))
        if (count_below(sorted, k) > 0) ks.push_back(k);
    if (ks.size() < 3)
        throw insufficient_data_error(
            "calibrate_bridgeman: cutoff too shallow for a "
            "self-consistency window");

    struct anchor {
        double sF, M;
    };
    std::vector<anchor> anchors;
    for (const double k : ks) {
        std::vector<double> f_terms, w_terms;
        for (const double l : sorted) {
            if (l > k) break;
            const double ch = std::cosh(l / 2.0);
            f_terms.push_back(rogers_dilog(1.0 / (ch * ch)));
            w_terms.push_back(basmajian_term(l));
        }
        anchors.push_back(
            {pairwise_sum(f_terms), perim - pairwise_sum(w_terms)});
    }

    const auto estimates = [&](double delta) {
        std::vector<double> out;
        for (std::size_t t = 0; t < ks.size(); ++t)
            out.push_back(anchors[t].sF +
                          anchors[t].M * tail_ratio(ks[t], delta));
        return out;
    };
    const auto spread_of = [&](double delta) {
        const auto est = estimates(delta);
        const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
        return *hi - *lo;
    };

    // Coarse grid, then golden-section refinement of the spread.
    double best_d = 0.5, best_s = spread_of(0.5);
    for (double d = 0.10; d <= 0.951; d += 0.05) {
        const double v = spread_of(d);
        if (v < best_s) {
            best_s = v;
            best_d = d;
        }
    }
    double a = std::max(0.05, best_d - 0.05);
    double b = std::min(0.97, best_d + 0.05);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = spread_of(x1), f2 = spread_of(x2);
    for (int it = 0; it < 40 && b - a > 1e-6; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = spread_of(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = spread_of(x2);
        }
    }
    res.delta_hat = (a + b) / 2.0;
    const auto est = estimates(res.delta_hat);
    res.sum_estimate = est.back();  // deepest anchor
    const auto [lo, hi] = std::minmax_element(est.begin(), est.end());
    res.spread = (*hi - *lo) / 2.0;
    res.c_hat = target / res.sum_estimate;
    return res;
}

}  // namespace orthospec
