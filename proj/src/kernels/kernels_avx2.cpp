#include "fuzzquant/kernels.hpp"

#if defined(FUZZQUANT_HAVE_AVX2_TARGET)

#include <immintrin.h>

#include <cmath>

// Compiled with -mavx2 for this translation unit only; callers must check
// cpu_has_avx2() before dispatching here.

namespace fq::kernels::avx2 {

uint64_t sum_u8(const uint8_t* data, size_t n) {
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    alignas(32) uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        sum += data[i];
    return sum;
}

void mask_le_u8(const uint8_t* src, size_t n, uint8_t threshold, uint8_t* out) {
    const __m256i t = _mm256_set1_epi8(static_cast<char>(threshold));
    const __m256i one = _mm256_set1_epi8(1);
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        // v <= t  <=>  min(v, t) == v  (unsigned)
        __m256i le = _mm256_cmpeq_epi8(_mm256_min_epu8(v, t), v);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(le, one));
    }
    for (; i < n; ++i)
        out[i] = src[i] <= threshold ? 1 : 0;
}

void assign_nearest(const double* values, size_t n, const double* boundaries,
                    int num_boundaries, int32_t* labels) {
    size_t i = 0;
    const __m256i pack_lo32 = _mm256_setr_epi32(0, 2, 4, 6, 0, 2, 4, 6);
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(values + i);
        __m256i count = _mm256_set1_epi64x(1);
        for (int j = 0; j < num_boundaries; ++j) {
            __m256d gt = _mm256_cmp_pd(v, _mm256_set1_pd(boundaries[j]), _CMP_GT_OQ);
            // true lanes are all-ones (-1 as epi64); subtracting adds 1
            count = _mm256_sub_epi64(count, _mm256_castpd_si256(gt));
        }
        __m256i packed = _mm256_permutevar8x32_epi32(count, pack_lo32);
        _mm_storeu_si128(reinterpret_cast<__m128i*>(labels + i),
                         _mm256_castsi256_si128(packed));
    }
    for (; i < n; ++i) {
        const double v = values[i];
        int32_t label = 1;
        for (int j = 0; j < num_boundaries; ++j)
            label += v > boundaries[j] ? 1 : 0;
        labels[i] = label;
    }
}

void boundary_residual(const double* cfi, const int32_t* cci, size_t n, double* fib) {
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d two = _mm256_set1_pd(2.0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d c = _mm256_loadu_pd(cfi + i);
        __m256d k = _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(cci + i)));
        __m256d d = _mm256_and_pd(_mm256_sub_pd(c, k), abs_mask);
        _mm256_storeu_pd(fib + i, _mm256_mul_pd(two, d));
    }
    for (; i < n; ++i)
        fib[i] = 2.0 * std::fabs(cfi[i] - static_cast<double>(cci[i]));
}

} // namespace fq::kernels::avx2

#endif // FUZZQUANT_HAVE_AVX2_TARGET
