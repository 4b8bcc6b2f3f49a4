#include "stobon/kernels.hpp"

#include <bit>

namespace stobon::kern {
namespace {

void s_and(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void s_or(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void s_xor(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void s_andnot(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void s_not(const std::uint64_t* a, std::uint64_t* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = ~a[i];
}

std::uint64_t s_popcount(const std::uint64_t* a, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

std::uint64_t s_popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

bool s_is_subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

bool s_equals(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool s_any(const std::uint64_t* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool s_intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        s_and, s_or, s_xor, s_andnot, s_not,
        s_popcount, s_popcount_and,
        s_is_subset, s_equals, s_any, s_intersects,
    };
    return ops;
}

} // namespace stobon::kern
