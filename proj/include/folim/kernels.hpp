/* Byte-wise mod-p kernels for the dense F_p elimination loops.
 *
 * Residues are stored as uint8_t in [0, p) with p <= 13, so a + c*b fits
 * in 16 bits without overflow. A scalar reference implementation is always
 * available; an AVX2 variant is selected at runtime when the CPU supports
 * it. The two must produce identical bytes (equivalence-tested).
 */
#pragma once

#include <cstddef>
#include <cstdint>

namespace folim::kern {

// dst[i] = (dst[i] + c * src[i]) mod p
using axpy_fn = void (*)(uint8_t* dst, const uint8_t* src, std::size_t n,
                         uint8_t c, uint8_t p);
// dst[i] = (dst[i] * c) mod p
using scale_fn = void (*)(uint8_t* dst, std::size_t n, uint8_t c, uint8_t p);

struct Kernels {
    axpy_fn axpy;
    scale_fn scale;
    const char* name;
};

const Kernels& scalar_kernels();
const Kernels& avx2_kernels();   // valid only if avx2_supported()
bool avx2_supported();

// Runtime-selected kernel set. Honors FOLIM_KERNEL=scalar|avx2 (checked once).
const Kernels& active();

}  // namespace folim::kern
