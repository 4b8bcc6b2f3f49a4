#include "stobon/probability.hpp"

#include "stobon/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace stobon {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
    return Rational{num, den};
}

Probability make_probability(std::int64_t num, std::int64_t den) {
    Rational r = make_rational(num, den);
    if (r.num < 0 || r.num > r.den)
        throw DomainError("probability outside [0, 1]: " + to_string(r));
    return r;
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    std::ostringstream os;
    os << r.num << '/' << r.den;
    return os.str();
}

Surprisal Surprisal::from_bits(double bits) {
    Surprisal s;
    s.bits_ = bits;
    return s;
}

Surprisal Surprisal::impossible_event() {
    Surprisal s;
    s.impossible_ = true;
    return s;
}

std::strong_ordering operator<=>(const Surprisal& a, const Surprisal& b) {
    if (a.impossible_ != b.impossible_)
        return a.impossible_ ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a.impossible_) return std::strong_ordering::equal;
    if (a.bits_ < b.bits_) return std::strong_ordering::less;
    if (a.bits_ > b.bits_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Surprisal info_content(const Probability& p) {
    if (p.num < 0 || p.num > p.den || p.den <= 0)
        throw DomainError("info_content requires a probability in [0, 1]");
    if (p.num == 0) return Surprisal::impossible_event();
    if (p.num == p.den) return Surprisal::from_bits(0.0);
    return Surprisal::from_bits(std::log2(static_cast<double>(p.den)) -
                                std::log2(static_cast<double>(p.num)));
}

std::string to_string(const Surprisal& s) {
    if (s.impossible()) return "impossible-event";
    std::ostringstream os;
    os << s.bits() << " bits";
    return os.str();
}

} // namespace stobon
