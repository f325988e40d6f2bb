#include "orthospec/kernels.hpp"

#if defined(ORTHOSPEC_HAVE_AVX2_TARGET)

#include <immintrin.h>

// AVX2 variants of the batch kernels.  Lane arithmetic replicates the
// scalar reference order exactly (mul/add/sub/div only, no FMA), so results
// are bit-identical; the tail of each batch falls back to the scalar code.

namespace orthospec::kernels {

namespace {

__attribute__((target("avx2"))) void mul_disp_avx2(
    const double parent[4], const double* ga, const double* gb,
    const double* gc, const double* gd, std::size_t n, double* oa,
    double* ob, double* oc, double* od, double* ocosh) {
    const __m256d pa = _mm256_set1_pd(parent[0]);
    const __m256d pb = _mm256_set1_pd(parent[1]);
    const __m256d pc = _mm256_set1_pd(parent[2]);
    const __m256d pd = _mm256_set1_pd(parent[3]);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d va = _mm256_loadu_pd(ga + k);
        const __m256d vb = _mm256_loadu_pd(gb + k);
        const __m256d vc = _mm256_loadu_pd(gc + k);
        const __m256d vd = _mm256_loadu_pd(gd + k);
        const __m256d a =
            _mm256_add_pd(_mm256_mul_pd(pa, va), _mm256_mul_pd(pb, vc));
        const __m256d b =
            _mm256_add_pd(_mm256_mul_pd(pa, vb), _mm256_mul_pd(pb, vd));
        const __m256d c =
            _mm256_add_pd(_mm256_mul_pd(pc, va), _mm256_mul_pd(pd, vc));
        const __m256d d =
            _mm256_add_pd(_mm256_mul_pd(pc, vb), _mm256_mul_pd(pd, vd));
        _mm256_storeu_pd(oa + k, a);
        _mm256_storeu_pd(ob + k, b);
        _mm256_storeu_pd(oc + k, c);
        _mm256_storeu_pd(od + k, d);
        const __m256d det2 = _mm256_mul_pd(
            two, _mm256_sub_pd(_mm256_mul_pd(a, d), _mm256_mul_pd(b, c)));
        const __m256d fro = _mm256_add_pd(
            _mm256_add_pd(
                _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)),
                _mm256_mul_pd(c, c)),
            _mm256_mul_pd(d, d));
        _mm256_storeu_pd(ocosh + k, _mm256_div_pd(fro, det2));
    }
    if (k < n)
        scalar_fns().mul_disp(parent, ga + k, gb + k, gc + k, gd + k, n - k,
                              oa + k, ob + k, oc + k, od + k, ocosh + k);
}

__attribute__((target("avx2"))) void perp_batch_avx2(
    const double* a, const double* b, const double* c, const double* d,
    std::size_t n, const double axi[4], const double axj[4], double* out_n) {
    const __m256d pui = _mm256_set1_pd(axi[0]);
    const __m256d pvi = _mm256_set1_pd(axi[1]);
    const __m256d qui = _mm256_set1_pd(axi[2]);
    const __m256d qvi = _mm256_set1_pd(axi[3]);
    const __m256d puj = _mm256_set1_pd(axj[0]);
    const __m256d pvj = _mm256_set1_pd(axj[1]);
    const __m256d quj = _mm256_set1_pd(axj[2]);
    const __m256d qvj = _mm256_set1_pd(axj[3]);
    const __m256d dpq_i = _mm256_sub_pd(
        _mm256_mul_pd(pui, qvi), _mm256_mul_pd(qui, pvi));
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d va = _mm256_loadu_pd(a + k);
        const __m256d vb = _mm256_loadu_pd(b + k);
        const __m256d vc = _mm256_loadu_pd(c + k);
        const __m256d vd = _mm256_loadu_pd(d + k);
        const __m256d Pu =
            _mm256_add_pd(_mm256_mul_pd(va, puj), _mm256_mul_pd(vb, pvj));
        const __m256d Pv =
            _mm256_add_pd(_mm256_mul_pd(vc, puj), _mm256_mul_pd(vd, pvj));
        const __m256d Qu =
            _mm256_add_pd(_mm256_mul_pd(va, quj), _mm256_mul_pd(vb, qvj));
        const __m256d Qv =
            _mm256_add_pd(_mm256_mul_pd(vc, quj), _mm256_mul_pd(vd, qvj));
        const __m256d pQ =
            _mm256_sub_pd(_mm256_mul_pd(pui, Qv), _mm256_mul_pd(Qu, pvi));
        const __m256d qP =
            _mm256_sub_pd(_mm256_mul_pd(qui, Pv), _mm256_mul_pd(Pu, qvi));
        const __m256d pP =
            _mm256_sub_pd(_mm256_mul_pd(pui, Pv), _mm256_mul_pd(Pu, pvi));
        const __m256d qQ =
            _mm256_sub_pd(_mm256_mul_pd(qui, Qv), _mm256_mul_pd(Qu, qvi));
        const __m256d dPQ =
            _mm256_sub_pd(_mm256_mul_pd(Pu, Qv), _mm256_mul_pd(Qu, Pv));
        const __m256d t1 = _mm256_mul_pd(pQ, qP);
        const __m256d t2 = _mm256_mul_pd(pP, qQ);
        const __m256d den = _mm256_mul_pd(dpq_i, dPQ);
        const __m256d num =
            _mm256_sub_pd(_mm256_mul_pd(t1, t1), _mm256_mul_pd(t2, t2));
        _mm256_storeu_pd(out_n + k,
                         _mm256_div_pd(num, _mm256_mul_pd(den, den)));
    }
    if (k < n)
        scalar_fns().perp_batch(a + k, b + k, c + k, d + k, n - k, axi, axj,
                                out_n + k);
}

}  // namespace

const batch_fns& avx2_fns() {
    static const batch_fns fns{mul_disp_avx2, perp_batch_avx2, "avx2"};
    return fns;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

}  // namespace orthospec::kernels

#endif  // ORTHOSPEC_HAVE_AVX2_TARGET
