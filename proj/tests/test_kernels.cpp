#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stobon/kernels.hpp"

#include <bit>
#include <random>
#include <vector>

using namespace stobon;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n, int flavor) {
    std::vector<std::uint64_t> out(n);
    for (auto& w : out) {
        switch (flavor) {
        case 0: w = rng(); break;                  // dense random
        case 1: w = rng() & rng() & rng(); break;  // sparse
        case 2: w = 0; break;
        default: w = ~std::uint64_t{0}; break;
        }
    }
    return out;
}

const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 7, 8, 9, 12, 16, 31, 33, 64, 100, 257};

} // namespace

TEST_CASE("every runnable backend matches the scalar reference") {
    const kern::Ops& ref = kern::scalar_ops();
    std::mt19937_64 rng(0xfeedbeefULL);

    for (const kern::Ops* ops : kern::runnable_ops()) {
        CAPTURE(ops->name);
        for (std::size_t n : kSizes) {
            for (int flavor_a = 0; flavor_a < 4; ++flavor_a) {
                for (int flavor_b = 0; flavor_b < 4; ++flavor_b) {
                    auto a = random_words(rng, n, flavor_a);
                    auto b = random_words(rng, n, flavor_b);

                    std::vector<std::uint64_t> want(n), got(n);
                    ref.bit_and(a.data(), b.data(), want.data(), n);
                    ops->bit_and(a.data(), b.data(), got.data(), n);
                    CHECK(want == got);

                    ref.bit_or(a.data(), b.data(), want.data(), n);
                    ops->bit_or(a.data(), b.data(), got.data(), n);
                    CHECK(want == got);

                    ref.bit_xor(a.data(), b.data(), want.data(), n);
                    ops->bit_xor(a.data(), b.data(), got.data(), n);
                    CHECK(want == got);

                    ref.bit_andnot(a.data(), b.data(), want.data(), n);
                    ops->bit_andnot(a.data(), b.data(), got.data(), n);
                    CHECK(want == got);

                    ref.bit_not(a.data(), want.data(), n);
                    ops->bit_not(a.data(), got.data(), n);
                    CHECK(want == got);

                    CHECK(ops->popcount(a.data(), n) == ref.popcount(a.data(), n));
                    CHECK(ops->popcount_and(a.data(), b.data(), n) ==
                          ref.popcount_and(a.data(), b.data(), n));
                    CHECK(ops->is_subset(a.data(), b.data(), n) ==
                          ref.is_subset(a.data(), b.data(), n));
                    CHECK(ops->equals(a.data(), b.data(), n) == ref.equals(a.data(), b.data(), n));
                    CHECK(ops->any(a.data(), n) == ref.any(a.data(), n));
                    CHECK(ops->intersects(a.data(), b.data(), n) ==
                          ref.intersects(a.data(), b.data(), n));
                }
            }
        }
    }
}

TEST_CASE("scalar popcount agrees with std::popcount word by word") {
    std::mt19937_64 rng(42);
    auto a = random_words(rng, 50, 0);
    std::uint64_t expect = 0;
    for (std::uint64_t w : a) expect += static_cast<std::uint64_t>(std::popcount(w));
    CHECK(kern::scalar_ops().popcount(a.data(), a.size()) == expect);
}

TEST_CASE("subset and equality behave on constructed pairs") {
    for (const kern::Ops* ops : kern::runnable_ops()) {
        CAPTURE(ops->name);
        std::mt19937_64 rng(7);
        for (std::size_t n : {1u, 5u, 9u}) {
            auto b = random_words(rng, n, 0);
            auto a = b;
            for (auto& w : a) w &= rng(); // a ⊆ b by construction
            CHECK(ops->is_subset(a.data(), b.data(), n));
            CHECK(ops->equals(a.data(), a.data(), n));
            CHECK(ops->is_subset(b.data(), b.data(), n));
        }
    }
}

TEST_CASE("the active backend is one of the runnable ones") {
    const kern::Ops& active = kern::active_ops();
    bool found = false;
    for (const kern::Ops* ops : kern::runnable_ops()) found = found || (ops == &active);
    CHECK(found);
#if defined(STOBON_HAVE_AVX2)
    if (kern::avx2_supported()) {
        // unless overridden, the dispatcher prefers the SIMD variant
        if (std::getenv("STOBON_KERNELS") == nullptr)
            CHECK(std::string(active.name) == "avx2");
    }
#endif
}
