#pragma once

// 2x2 real matrices acting on the upper half-plane.
//
// Elements of the isometry group are unit-determinant matrices up to sign.
// We keep a canonical representative: trace >= 0, ties broken by requiring
// the first nonzero entry (scanning a, b, c, d) to be >= 0.  For the groups
// we build (discrete, torsion free) every non-identity element has |tr| > 2,
// so the canonical sign is stable under rounding.

#include <array>
#include <cmath>
#include <cstdint>

namespace orthospec {

template <typename T>
struct mat2_t {
    T a{1}, b{0}, c{0}, d{1};

    friend constexpr mat2_t operator*(const mat2_t& x, const mat2_t& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    constexpr T trace() const { return a + d; }
    constexpr T det() const { return a * d - b * c; }

    // Inverse assuming det == 1 (all group elements we manipulate).
    constexpr mat2_t inverse() const { return {d, -b, -c, a}; }

    constexpr mat2_t negated() const { return {-a, -b, -c, -d}; }

    constexpr mat2_t transpose() const { return {a, c, b, d}; }

    // Canonical sign: trace >= 0, tie broken by first nonzero entry >= 0.
    constexpr mat2_t canonical() const {
        const T tr = a + d;
        if (tr > T(0)) return *this;
        if (tr < T(0)) return negated();
        for (T v : {a, b, c, d}) {
            if (v > T(0)) return *this;
            if (v < T(0)) return negated();
        }
        return *this;
    }

    constexpr bool is_identity(T tol) const {
        return std::abs(a - T(1)) <= tol && std::abs(b) <= tol &&
               std::abs(c) <= tol && std::abs(d - T(1)) <= tol;
    }

    // cosh of the displacement of the basepoint i under this matrix,
    // i.e. cosh d(i, g i).  Equals (a^2 + b^2 + c^2 + d^2) / (2 det);
    // for det 1 this is half the squared Frobenius norm.
    constexpr T displacement_cosh() const {
        return (a * a + b * b + c * c + d * d) / (T(2) * det());
    }

    static constexpr mat2_t identity() { return {T(1), T(0), T(0), T(1)}; }

    // Translation by l along the imaginary axis (0 -> infinity).
    static mat2_t axis_translation(T l) {
        const T e = std::exp(l / T(2));
        return {e, T(0), T(0), T(1) / e};
    }

    // Translation by s along the unit half-circle (-1, 1), crossing the
    // imaginary axis orthogonally at i; positive s moves i towards 1.
    static mat2_t seam_translation(T s) {
        const T ch = std::cosh(s / T(2)), sh = std::sinh(s / T(2));
        return {ch, sh, sh, ch};
    }
};

using mat2 = mat2_t<double>;
using mat2l = mat2_t<long double>;

template <typename T>
constexpr bool approx_equal(const mat2_t<T>& x, const mat2_t<T>& y, T tol) {
    return std::abs(x.a - y.a) <= tol && std::abs(x.b - y.b) <= tol &&
           std::abs(x.c - y.c) <= tol && std::abs(x.d - y.d) <= tol;
}

// Equality of isometries (matrices up to sign).
template <typename T>
constexpr bool same_isometry(const mat2_t<T>& x, const mat2_t<T>& y, T tol) {
    return approx_equal(x, y, tol) || approx_equal(x, y.negated(), tol);
}

enum class isometry_kind { identity, elliptic, parabolic, hyperbolic };

// Classification by |trace| relative to 2.  `tol` absorbs rounding on the
// parabolic boundary; group elements we enumerate are hyperbolic.
template <typename T>
isometry_kind classify(const mat2_t<T>& g, T tol = T(1e-12)) {
    const T at = std::abs(g.trace());
    if (at > T(2) + tol) return isometry_kind::hyperbolic;
    if (at < T(2) - tol)
        return g.is_identity(tol) ? isometry_kind::identity
                                  : isometry_kind::elliptic;
    return g.is_identity(tol) ? isometry_kind::identity
                              : isometry_kind::parabolic;
}

// Translation length 2 arccosh(|tr|/2) of a hyperbolic element.
template <typename T>
T translation_length(const mat2_t<T>& g) {
    const T x = std::abs(g.trace()) / T(2);
    if (x <= T(1)) return T(0);
    return T(2) * std::acosh(x);
}

// The isometry sharing g's axis, translating by t in g's own direction
// (t may be negative).  Requires g hyperbolic.  The matrix sign of g is
// irrelevant: we normalize to the positive-trace representative, whose
// axis direction agrees with the Mobius map's attracting fixed point.
template <typename T>
mat2_t<T> twist_along(const mat2_t<T>& g_in, T t) {
    const mat2_t<T> g = g_in.trace() < T(0) ? g_in.negated() : g_in;
    const T half_tr = g.trace() / T(2);
    const T sh = std::sqrt(half_tr * half_tr - T(1));  // sinh(l/2), l = length
    const T ch2 = std::cosh(t / T(2)), sh2 = std::sinh(t / T(2));
    // U = (g - (tr/2) I)/sinh(l/2) squares to the identity; exp of the axis.
    const T ua = (g.a - half_tr) / sh, ub = g.b / sh;
    const T uc = g.c / sh, ud = (g.d - half_tr) / sh;
    return {ch2 + sh2 * ua, sh2 * ub, sh2 * uc, ch2 + sh2 * ud};
}

}  // namespace orthospec
