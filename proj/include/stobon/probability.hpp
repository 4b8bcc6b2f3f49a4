#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace stobon {

/// Exact rational in lowest terms, denominator > 0. Probabilities are the
/// sub-range [0, 1]; tests compare them without float tolerance.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool operator==(const Rational&) const = default;
};

/// Normalizes sign and reduces; throws DomainError on a zero denominator.
Rational make_rational(std::int64_t num, std::int64_t den);

/// A rational checked to lie in [0, 1].
using Probability = Rational;
Probability make_probability(std::int64_t num, std::int64_t den);

std::string to_string(const Rational& r);

/// Information content in bits, or the distinguished impossible-event value
/// (the p = 0 case). Finite values are >= 0, and 0 exactly when p = 1.
/// Totally ordered: every finite surprisal sorts below ImpossibleEvent.
class Surprisal {
public:
    static Surprisal from_bits(double bits);
    static Surprisal impossible_event();

    bool impossible() const { return impossible_; }

    /// Finite value in bits; only meaningful when !impossible().
    double bits() const { return bits_; }

    friend bool operator==(const Surprisal& a, const Surprisal& b) = default;
    friend std::strong_ordering operator<=>(const Surprisal& a, const Surprisal& b);

private:
    double bits_ = 0.0;
    bool impossible_ = false;
};

/// -log2(p) in bits: exactly 0 for p = 1, ImpossibleEvent for p = 0.
Surprisal info_content(const Probability& p);

std::string to_string(const Surprisal& s);

} // namespace stobon
