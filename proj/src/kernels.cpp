/* Scalar reference kernels and runtime dispatch. */

#include "folim/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace folim::kern {

static void axpy_scalar(uint8_t* dst, const uint8_t* src, std::size_t n,
                        uint8_t c, uint8_t p) {
    if (c == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        uint16_t t = uint16_t(dst[i]) + uint16_t(c) * uint16_t(src[i]);
        dst[i] = uint8_t(t % p);
    }
}

static void scale_scalar(uint8_t* dst, std::size_t n, uint8_t c, uint8_t p) {
    if (c == 1) return;
    if (c == 0) {
        std::memset(dst, 0, n);
        return;
    }
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = uint8_t((uint16_t(dst[i]) * uint16_t(c)) % p);
}

const Kernels& scalar_kernels() {
    static const Kernels k{axpy_scalar, scale_scalar, "scalar"};
    return k;
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

static const Kernels& select() {
    const char* env = std::getenv("FOLIM_KERNEL");
    if (env) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(env, "avx2") == 0 && avx2_supported())
            return avx2_kernels();
    }
    return avx2_supported() ? avx2_kernels() : scalar_kernels();
}

const Kernels& active() {
    static const Kernels& k = select();
    return k;
}

}  // namespace folim::kern
