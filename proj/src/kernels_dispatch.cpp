#include <cstdlib>
#include <cstring>

#include "orthospec/kernels.hpp"

namespace orthospec::kernels {

namespace {

const batch_fns& select() {
    const char* force = std::getenv("ORTHOSPEC_SIMD");
    if (force != nullptr) {
        if (std::strcmp(force, "scalar") == 0) return scalar_fns();
#if defined(ORTHOSPEC_HAVE_AVX2_TARGET)
        if (std::strcmp(force, "avx2") == 0 && avx2_supported())
            return avx2_fns();
#endif
#if defined(ORTHOSPEC_HAVE_NEON)
        if (std::strcmp(force, "neon") == 0) return neon_fns();
#endif
        return scalar_fns();  // unknown or unavailable: safe default
    }
#if defined(ORTHOSPEC_HAVE_AVX2_TARGET)
    if (avx2_supported()) return avx2_fns();
#endif
#if defined(ORTHOSPEC_HAVE_NEON)
    return neon_fns();
#else
    return scalar_fns();
#endif
}

}  // namespace

const batch_fns& active() {
    static const batch_fns& fns = select();
    return fns;
}

}  // namespace orthospec::kernels
