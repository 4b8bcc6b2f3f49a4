#pragma once

#include "stobon/kernels.hpp"

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace stobon {

/// A set of worlds inside one model, as a fixed-size bitset. Bulk operations
/// route through the runtime-selected word kernels. Bits beyond size() are
/// always zero.
class WorldSet {
public:
    WorldSet() = default;

    explicit WorldSet(std::size_t n_bits, bool filled = false)
        : n_bits_(n_bits), words_(word_count(n_bits), filled ? ~std::uint64_t{0} : 0) {
        clear_tail();
    }

    static WorldSet none_of(std::size_t n_bits) { return WorldSet(n_bits, false); }
    static WorldSet all_of(std::size_t n_bits) { return WorldSet(n_bits, true); }

    std::size_t size() const { return n_bits_; }
    bool empty_domain() const { return n_bits_ == 0; }

    bool test(std::size_t i) const {
        assert(i < n_bits_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        assert(i < n_bits_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        assert(i < n_bits_);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::uint64_t count() const {
        return ops().popcount(words_.data(), words_.size());
    }

    bool any() const { return ops().any(words_.data(), words_.size()); }
    bool none() const { return !any(); }

    WorldSet& operator&=(const WorldSet& o) {
        assert(n_bits_ == o.n_bits_);
        ops().bit_and(words_.data(), o.words_.data(), words_.data(), words_.size());
        return *this;
    }

    WorldSet& operator|=(const WorldSet& o) {
        assert(n_bits_ == o.n_bits_);
        ops().bit_or(words_.data(), o.words_.data(), words_.data(), words_.size());
        return *this;
    }

    WorldSet& operator^=(const WorldSet& o) {
        assert(n_bits_ == o.n_bits_);
        ops().bit_xor(words_.data(), o.words_.data(), words_.data(), words_.size());
        return *this;
    }

    /// this := this \ o
    WorldSet& subtract(const WorldSet& o) {
        assert(n_bits_ == o.n_bits_);
        ops().bit_andnot(words_.data(), o.words_.data(), words_.data(), words_.size());
        return *this;
    }

    friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
    friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
    friend WorldSet operator^(WorldSet a, const WorldSet& b) { return a ^= b; }

    WorldSet operator~() const {
        WorldSet r(n_bits_);
        ops().bit_not(words_.data(), r.words_.data(), words_.size());
        r.clear_tail();
        return r;
    }

    friend bool operator==(const WorldSet& a, const WorldSet& b) {
        if (a.n_bits_ != b.n_bits_) return false;
        return kern::active_ops().equals(a.words_.data(), b.words_.data(), a.words_.size());
    }

    bool is_subset_of(const WorldSet& o) const {
        assert(n_bits_ == o.n_bits_);
        return ops().is_subset(words_.data(), o.words_.data(), words_.size());
    }

    bool intersects(const WorldSet& o) const {
        assert(n_bits_ == o.n_bits_);
        return ops().intersects(words_.data(), o.words_.data(), words_.size());
    }

    std::uint64_t count_and(const WorldSet& o) const {
        assert(n_bits_ == o.n_bits_);
        return ops().popcount_and(words_.data(), o.words_.data(), words_.size());
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w != 0) {
                unsigned bit = static_cast<unsigned>(std::countr_zero(w));
                fn(static_cast<std::uint32_t>((wi << 6) + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](std::uint32_t i) { out.push_back(i); });
        return out;
    }

private:
    static std::size_t word_count(std::size_t n_bits) { return (n_bits + 63) / 64; }

    static const kern::Ops& ops() { return kern::active_ops(); }

    void clear_tail() {
        unsigned used = n_bits_ & 63;
        if (used != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << used) - 1;
    }

    std::size_t n_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace stobon
