// NEON variants of the bitset kernels (aarch64 baseline).

#include "stobon/kernels.hpp"

#include <arm_neon.h>
#include <bit>

namespace stobon::kern {
namespace {

void n_and(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void n_or(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void n_xor(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void n_andnot(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    // vbicq_u64(x, y) computes x & ~y
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void n_not(const std::uint64_t* a, std::uint64_t* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(a + i));
        vst1q_u64(dst + i, vreinterpretq_u64_u8(vmvnq_u8(v)));
    }
    for (; i < n; ++i) dst[i] = ~a[i];
}

inline std::uint64_t popcount128(uint64x2_t v) {
    uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
    return vaddvq_u8(bytes);
}

std::uint64_t n_popcount(const std::uint64_t* a, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) total += popcount128(vld1q_u64(a + i));
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

std::uint64_t n_popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) total += popcount128(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

inline bool any128(uint64x2_t v) {
    return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0;
}

bool n_is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (any128(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

bool n_equals(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (any128(veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool n_any(const std::uint64_t* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (any128(vld1q_u64(a + i))) return true;
    for (; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool n_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (any128(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
    for (; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

} // namespace

const Ops& neon_ops() {
    static const Ops ops = {
        "neon",
        n_and, n_or, n_xor, n_andnot, n_not,
        n_popcount, n_popcount_and,
        n_is_subset, n_equals, n_any, n_intersects,
    };
    return ops;
}

} // namespace stobon::kern
