// AVX2 variants of the bitset kernels. This translation unit is compiled
// with -mavx2; callers must gate on avx2_supported() before dispatching.

#include "stobon/kernels.hpp"

#include <bit>
#include <immintrin.h>

namespace stobon::kern {
namespace {

inline __m256i load(const std::uint64_t* p) {
    return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(std::uint64_t* p, __m256i v) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void v_and(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void v_or(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void v_xor(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void v_andnot(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    // _mm256_andnot_si256(x, y) computes ~x & y
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void v_not(const std::uint64_t* a, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    const __m256i ones = _mm256_set1_epi64x(-1);
    for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(a + i), ones));
    for (; i < n; ++i) dst[i] = ~a[i];
}

// In-register popcount (nibble LUT + psadbw); returns four u64 partial sums.
inline __m256i popcount256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi64(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline std::uint64_t hsum_epi64(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi64(lo, hi);
    return static_cast<std::uint64_t>(_mm_cvtsi128_si64(s)) +
           static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

std::uint64_t v_popcount(const std::uint64_t* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount256(load(a + i)));
    std::uint64_t total = hsum_epi64(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

std::uint64_t v_popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, popcount256(_mm256_and_si256(load(a + i), load(b + i))));
    std::uint64_t total = hsum_epi64(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool v_is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i stray = _mm256_andnot_si256(load(b + i), load(a + i));
        if (!_mm256_testz_si256(stray, stray)) return false;
    }
    for (; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

bool v_equals(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i diff = _mm256_xor_si256(load(a + i), load(b + i));
        if (!_mm256_testz_si256(diff, diff)) return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool v_any(const std::uint64_t* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = load(a + i);
        if (!_mm256_testz_si256(v, v)) return true;
    }
    for (; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool v_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
    }
    for (; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

} // namespace

bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        v_and, v_or, v_xor, v_andnot, v_not,
        v_popcount, v_popcount_and,
        v_is_subset, v_equals, v_any, v_intersects,
    };
    return ops;
}

} // namespace stobon::kern
