#include "noma/fraction.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "noma/errors.hpp"

namespace noma {
namespace {

__extension__ using u128 = unsigned __int128;

int bit_width(u128 v) noexcept {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) return 64 + std::bit_width(hi);
    return std::bit_width(static_cast<std::uint64_t>(v));
}

std::strong_ordering compare_u128(u128 a, u128 b) noexcept {
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

Fraction Fraction::make(value_type num, value_type den) {
    if (num < 0 || den < 0) throw ValidationError("fraction parts must be non-negative");
    if (num == 0 && den == 0) throw BothZeroError();
    // std::gcd follows gcd(n,0)=n and gcd(0,m)=m, so 0/7 -> 0/1 and 5/0 -> 1/0.
    const value_type g = std::gcd(num, den);
    return unchecked(num / g, den / g);
}

double Fraction::to_double() const noexcept {
    if (den_ == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Fraction::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
    const u128 lhs = static_cast<u128>(a.num_) * static_cast<u128>(b.den_);
    const u128 rhs = static_cast<u128>(b.num_) * static_cast<u128>(a.den_);
    return compare_u128(lhs, rhs);
}

Fraction mediant(const Fraction& a, const Fraction& b) {
    const auto num = a.num() + b.num();
    const auto den = a.den() + b.den();
    if (std::gcd(num, den) == 1) return Fraction::unchecked(num, den);
    return Fraction::make(num, den);
}

std::partial_ordering compare(double x, const Fraction& f) noexcept {
    if (std::isnan(x)) return std::partial_ordering::unordered;
    if (f.is_infinite()) {
        return x == std::numeric_limits<double>::infinity() ? std::partial_ordering::equivalent
                                                             : std::partial_ordering::less;
    }
    if (std::isinf(x)) return x > 0 ? std::partial_ordering::greater : std::partial_ordering::less;
    if (x < 0) return std::partial_ordering::less;
    if (x == 0) return f.num() == 0 ? std::partial_ordering::equivalent : std::partial_ordering::less;
    if (f.num() == 0) return std::partial_ordering::greater;

    // x = mantissa * 2^exponent with an integral 53-bit mantissa.
    int e = 0;
    const double frac = std::frexp(x, &e);
    const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
    const int exponent = e - 53;

    const u128 scaled = static_cast<u128>(mantissa) * static_cast<u128>(f.den());
    const auto n = static_cast<u128>(f.num());
    constexpr int kMaxBits = 126;

    if (exponent >= 0) {
        // Compare scaled * 2^exponent against n.
        if (bit_width(scaled) + exponent > kMaxBits) return std::partial_ordering::greater;
        return compare_u128(scaled << exponent, n);
    }
    const int shift = -exponent;
    // Compare scaled against n * 2^shift.
    if (bit_width(n) + shift > kMaxBits) return std::partial_ordering::less;
    return compare_u128(scaled, n << shift);
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) {
    return os << f.num() << '/' << f.den();
}

}  // namespace noma
