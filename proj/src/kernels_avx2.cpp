/* AVX2 mod-p kernels. Compiled with -mavx2 for this translation unit only;
 * callers must check avx2_supported() before using these through dispatch.
 *
 * Reduction trick: t < 2^8 * 13 fits in 16-bit lanes; t mod p is computed
 * as t - p * ((t * M) >> 16) with M = floor(2^16 / p) + 1, which is exact
 * for the t <= 255 + 12*255 range produced here (verified exhaustively in
 * the kernel tests).
 */

#include "folim/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace folim::kern {

namespace {

inline __m256i mod_epu16(__m256i t, __m256i pv, __m256i mv) {
    __m256i q = _mm256_mulhi_epu16(t, mv);
    return _mm256_sub_epi16(t, _mm256_mullo_epi16(q, pv));
}

void axpy_avx2(uint8_t* dst, const uint8_t* src, std::size_t n, uint8_t c,
               uint8_t p) {
    if (c == 0) return;
    const uint16_t magic = uint16_t(65536u / p + 1u);
    const __m256i pv = _mm256_set1_epi16(int16_t(p));
    const __m256i mv = _mm256_set1_epi16(int16_t(magic));
    const __m256i cv = _mm256_set1_epi16(int16_t(c));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i dlo = _mm256_unpacklo_epi8(d, _mm256_setzero_si256());
        __m256i dhi = _mm256_unpackhi_epi8(d, _mm256_setzero_si256());
        __m256i slo = _mm256_unpacklo_epi8(s, _mm256_setzero_si256());
        __m256i shi = _mm256_unpackhi_epi8(s, _mm256_setzero_si256());
        __m256i tlo = _mm256_add_epi16(dlo, _mm256_mullo_epi16(cv, slo));
        __m256i thi = _mm256_add_epi16(dhi, _mm256_mullo_epi16(cv, shi));
        tlo = mod_epu16(tlo, pv, mv);
        thi = mod_epu16(thi, pv, mv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_packus_epi16(tlo, thi));
    }
    for (; i < n; ++i) {
        uint16_t t = uint16_t(dst[i]) + uint16_t(c) * uint16_t(src[i]);
        dst[i] = uint8_t(t % p);
    }
}

void scale_avx2(uint8_t* dst, std::size_t n, uint8_t c, uint8_t p) {
    if (c == 1) return;
    const uint16_t magic = uint16_t(65536u / p + 1u);
    const __m256i pv = _mm256_set1_epi16(int16_t(p));
    const __m256i mv = _mm256_set1_epi16(int16_t(magic));
    const __m256i cv = _mm256_set1_epi16(int16_t(c));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i dlo = _mm256_unpacklo_epi8(d, _mm256_setzero_si256());
        __m256i dhi = _mm256_unpackhi_epi8(d, _mm256_setzero_si256());
        __m256i tlo = mod_epu16(_mm256_mullo_epi16(cv, dlo), pv, mv);
        __m256i thi = mod_epu16(_mm256_mullo_epi16(cv, dhi), pv, mv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_packus_epi16(tlo, thi));
    }
    for (; i < n; ++i)
        dst[i] = uint8_t((uint16_t(dst[i]) * uint16_t(c)) % p);
}

}  // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{axpy_avx2, scale_avx2, "avx2"};
    return k;
}

}  // namespace folim::kern

#else

namespace folim::kern {
const Kernels& avx2_kernels() { return scalar_kernels(); }
}  // namespace folim::kern

#endif
