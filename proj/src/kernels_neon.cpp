#include "orthospec/kernels.hpp"

#if defined(ORTHOSPEC_HAVE_NEON)

#include <arm_neon.h>

// NEON (aarch64) variants, two lanes wide.  Same contract as the AVX2 file:
// replicate the scalar operation order with plain mul/add/sub/div so results
// are bit-identical (vmulq/vaddq, never vfmaq).

namespace orthospec::kernels {

namespace {

void mul_disp_neon(const double parent[4], const double* ga,
                   const double* gb, const double* gc, const double* gd,
                   std::size_t n, double* oa, double* ob, double* oc,
                   double* od, double* ocosh) {
    const float64x2_t pa = vdupq_n_f64(parent[0]);
    const float64x2_t pb = vdupq_n_f64(parent[1]);
    const float64x2_t pc = vdupq_n_f64(parent[2]);
    const float64x2_t pd = vdupq_n_f64(parent[3]);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t va = vld1q_f64(ga + k);
        const float64x2_t vb = vld1q_f64(gb + k);
        const float64x2_t vc = vld1q_f64(gc + k);
        const float64x2_t vd = vld1q_f64(gd + k);
        const float64x2_t a = vaddq_f64(vmulq_f64(pa, va), vmulq_f64(pb, vc));
        const float64x2_t b = vaddq_f64(vmulq_f64(pa, vb), vmulq_f64(pb, vd));
        const float64x2_t c = vaddq_f64(vmulq_f64(pc, va), vmulq_f64(pd, vc));
        const float64x2_t d = vaddq_f64(vmulq_f64(pc, vb), vmulq_f64(pd, vd));
        vst1q_f64(oa + k, a);
        vst1q_f64(ob + k, b);
        vst1q_f64(oc + k, c);
        vst1q_f64(od + k, d);
        const float64x2_t det2 =
            vmulq_f64(two, vsubq_f64(vmulq_f64(a, d), vmulq_f64(b, c)));
        const float64x2_t fro = vaddq_f64(
            vaddq_f64(vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)),
                      vmulq_f64(c, c)),
            vmulq_f64(d, d));
        vst1q_f64(ocosh + k, vdivq_f64(fro, det2));
    }
    if (k < n)
        scalar_fns().mul_disp(parent, ga + k, gb + k, gc + k, gd + k, n - k,
                              oa + k, ob + k, oc + k, od + k, ocosh + k);
}

void perp_batch_neon(const double* a, const double* b, const double* c,
                     const double* d, std::size_t n, const double axi[4],
                     const double axj[4], double* out_n) {
    const float64x2_t pui = vdupq_n_f64(axi[0]);
    const float64x2_t pvi = vdupq_n_f64(axi[1]);
    const float64x2_t qui = vdupq_n_f64(axi[2]);
    const float64x2_t qvi = vdupq_n_f64(axi[3]);
    const float64x2_t puj = vdupq_n_f64(axj[0]);
    const float64x2_t pvj = vdupq_n_f64(axj[1]);
    const float64x2_t quj = vdupq_n_f64(axj[2]);
    const float64x2_t qvj = vdupq_n_f64(axj[3]);
    const float64x2_t dpq_i =
        vsubq_f64(vmulq_f64(pui, qvi), vmulq_f64(qui, pvi));
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const float64x2_t va = vld1q_f64(a + k);
        const float64x2_t vb = vld1q_f64(b + k);
        const float64x2_t vc = vld1q_f64(c + k);
        const float64x2_t vd = vld1q_f64(d + k);
        const float64x2_t Pu =
            vaddq_f64(vmulq_f64(va, puj), vmulq_f64(vb, pvj));
        const float64x2_t Pv =
            vaddq_f64(vmulq_f64(vc, puj), vmulq_f64(vd, pvj));
        const float64x2_t Qu =
            vaddq_f64(vmulq_f64(va, quj), vmulq_f64(vb, qvj));
        const float64x2_t Qv =
            vaddq_f64(vmulq_f64(vc, quj), vmulq_f64(vd, qvj));
        const float64x2_t pQ =
            vsubq_f64(vmulq_f64(pui, Qv), vmulq_f64(Qu, pvi));
        const float64x2_t qP =
            vsubq_f64(vmulq_f64(qui, Pv), vmulq_f64(Pu, qvi));
        const float64x2_t pP =
            vsubq_f64(vmulq_f64(pui, Pv), vmulq_f64(Pu, pvi));
        const float64x2_t qQ =
            vsubq_f64(vmulq_f64(qui, Qv), vmulq_f64(Qu, qvi));
        const float64x2_t dPQ =
            vsubq_f64(vmulq_f64(Pu, Qv), vmulq_f64(Qu, Pv));
        const float64x2_t t1 = vmulq_f64(pQ, qP);
        const float64x2_t t2 = vmulq_f64(pP, qQ);
        const float64x2_t den = vmulq_f64(dpq_i, dPQ);
        const float64x2_t num =
            vsubq_f64(vmulq_f64(t1, t1), vmulq_f64(t2, t2));
        vst1q_f64(out_n + k, vdivq_f64(num, vmulq_f64(den, den)));
    }
    if (k < n)
        scalar_fns().perp_batch(a + k, b + k, c + k, d + k, n - k, axi, axj,
                                out_n + k);
}

}  // namespace

const batch_fns& neon_fns() {
    static const batch_fns fns{mul_disp_neon, perp_batch_neon, "neon"};
    return fns;
}

}  // namespace orthospec::kernels

#endif  // ORTHOSPEC_HAVE_NEON
