#include "orthospec/kernels.hpp"

// Reference semantics for the batch kernels.  The SIMD variants mirror the
// operation order below exactly; keep the two in lockstep when editing.

namespace orthospec::kernels {

namespace {

void mul_disp_scalar(const double parent[4], const double* ga,
                     const double* gb, const double* gc, const double* gd,
                     std::size_t n, double* oa, double* ob, double* oc,
                     double* od, double* ocosh) {
    const double pa = parent[0], pb = parent[1], pc = parent[2],
                 pd = parent[3];
    for (std::size_t k = 0; k < n; ++k) {
        const double a = pa * ga[k] + pb * gc[k];
        const double b = pa * gb[k] + pb * gd[k];
        const double c = pc * ga[k] + pd * gc[k];
        const double d = pc * gb[k] + pd * gd[k];
        oa[k] = a;
        ob[k] = b;
        oc[k] = c;
        od[k] = d;
        const double det2 = 2.0 * (a * d - b * c);
        ocosh[k] = (a * a + b * b + c * c + d * d) / det2;
    }
}

void perp_batch_scalar(const double* a, const double* b, const double* c,
                       const double* d, std::size_t n, const double axi[4],
                       const double axj[4], double* out_n) {
    const double pui = axi[0], pvi = axi[1], qui = axi[2], qvi = axi[3];
    const double puj = axj[0], pvj = axj[1], quj = axj[2], qvj = axj[3];
    const double dpq_i = pui * qvi - qui * pvi;
    for (std::size_t k = 0; k < n; ++k) {
        // Transformed endpoints of axis_j under g_k (homogeneous, unscaled).
        const double Pu = a[k] * puj + b[k] * pvj;
        const double Pv = c[k] * puj + d[k] * pvj;
        const double Qu = a[k] * quj + b[k] * qvj;
        const double Qv = c[k] * quj + d[k] * qvj;
        const double pQ = pui * Qv - Qu * pvi;
        const double qP = qui * Pv - Pu * qvi;
        const double pP = pui * Pv - Pu * pvi;
        const double qQ = qui * Qv - Qu * qvi;
        const double dPQ = Pu * Qv - Qu * Pv;
        const double t1 = pQ * qP;
        const double t2 = pP * qQ;
        const double den = dpq_i * dPQ;
        out_n[k] = (t1 * t1 - t2 * t2) / (den * den);
    }
}

}  // namespace

const batch_fns& scalar_fns() {
    static const batch_fns fns{mul_disp_scalar, perp_batch_scalar, "scalar"};
    return fns;
}

}  // namespace orthospec::kernels
