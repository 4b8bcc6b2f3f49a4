#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Word-level bitset kernels. World sets are arrays of 64-bit words; every
// bulk operation the checker performs (boolean connectives, popcounts for
// probability counting, subset tests for the knowledge operators) bottoms
// out here. A scalar reference backend is always compiled; AVX2 and NEON
// variants are compiled where the toolchain allows and selected at runtime.

namespace stobon::kern {

struct Ops {
    const char* name;

    void (*bit_and)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n);
    void (*bit_or)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n);
    void (*bit_xor)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n);
    /// dst = a & ~b
    void (*bit_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* dst, std::size_t n);
    /// dst = ~a (tail bits are the caller's problem)
    void (*bit_not)(const std::uint64_t* a, std::uint64_t* dst, std::size_t n);

    std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
    /// popcount(a & b) without materialising the intersection
    std::uint64_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

    /// a ⊆ b, i.e. (a & ~b) == 0
    bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    bool (*equals)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    bool (*any)(const std::uint64_t* a, std::size_t n);
    /// (a & b) != 0
    bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

/// Reference implementation; always available, the oracle for the others.
const Ops& scalar_ops();

#if defined(STOBON_HAVE_AVX2)
bool avx2_supported();
const Ops& avx2_ops();
#endif

#if defined(STOBON_HAVE_NEON)
const Ops& neon_ops();
#endif

/// Backend selected once per process: best supported variant, overridable
/// with STOBON_KERNELS=scalar|avx2|neon|auto.
const Ops& active_ops();

/// Every backend compiled into this binary that the current CPU can run.
/// Used by the equivalence tests.
std::vector<const Ops*> runnable_ops();

} // namespace stobon::kern
