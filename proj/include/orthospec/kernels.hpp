#pragma once

// Hot numeric kernels behind the enumeration loops, in structure-of-arrays
// layout.  A scalar reference implementation defines the semantics; SIMD
// variants (AVX2 / NEON) are required to match it bit for bit, which the
// test suite enforces on random batches.  All variants use plain IEEE
// multiply/add in identical order: no FMA, no reassociation (the build sets
// -ffp-contract=off).
//
// Selection happens once at startup from CPU features; the environment
// variable ORTHOSPEC_SIMD in {scalar, avx2, neon} forces a variant.

#include <cstddef>

namespace orthospec::kernels {

// out[k] = parent * gen[k] for 2x2 matrices, plus each product's
// displacement cosh relative to the basepoint i of the half-plane:
//   cosh d(i, M i) = (a^2 + b^2 + c^2 + d^2) / (2 (ad - bc)).
using mul_disp_fn = void (*)(const double parent[4], const double* ga,
                             const double* gb, const double* gc,
                             const double* gd, std::size_t n, double* oa,
                             double* ob, double* oc, double* od,
                             double* ocosh);

// Configuration invariant N(axis_i, g_k . axis_j) for a batch of matrices
// g_k (SoA) and fixed homogeneous endpoint data axi = (pu,pv,qu,qv) of
// axis_i and axj of axis_j.  N is the perpendicular invariant of
// geodesic.hpp: |N| = cosh(distance) for disjoint geodesics.
using perp_batch_fn = void (*)(const double* a, const double* b,
                               const double* c, const double* d,
                               std::size_t n, const double axi[4],
                               const double axj[4], double* out_n);

struct batch_fns {
    mul_disp_fn mul_disp;
    perp_batch_fn perp_batch;
    const char* name;
};

const batch_fns& scalar_fns();
#if defined(ORTHOSPEC_HAVE_AVX2_TARGET)
const batch_fns& avx2_fns();
bool avx2_supported();
#endif
#if defined(ORTHOSPEC_HAVE_NEON)
const batch_fns& neon_fns();
#endif

// The variant selected for this process (CPU detection + env override).
const batch_fns& active();

}  // namespace orthospec::kernels
