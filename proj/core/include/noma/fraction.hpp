#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace noma {

/// Non-negative irreducible fraction. 1/0 is admitted and stands for +infinity;
/// 0/0 is rejected. Ordering is exact cross-multiplication in 128-bit arithmetic.
class Fraction {
public:
    using value_type = std::int64_t;

    /// 0/1.
    constexpr Fraction() = default;

    /// Reduces num/den to lowest terms. Throws BothZeroError for 0/0 and
    /// ValidationError for negative parts.
    static Fraction make(value_type num, value_type den);

    /// Wraps a pair already known to be coprime and non-negative. No checks.
    static constexpr Fraction unchecked(value_type num, value_type den) noexcept {
        Fraction f;
        f.num_ = num;
        f.den_ = den;
        return f;
    }

    constexpr value_type num() const noexcept { return num_; }
    constexpr value_type den() const noexcept { return den_; }
    constexpr bool is_infinite() const noexcept { return den_ == 0; }

    /// +inf for 1/0.
    double to_double() const noexcept;

    std::string str() const;

    friend constexpr bool operator==(const Fraction&, const Fraction&) = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept;

private:
    value_type num_ = 0;
    value_type den_ = 1;
};

/// Free-function spelling of Fraction::make.
inline Fraction make_fraction(Fraction::value_type num, Fraction::value_type den) {
    return Fraction::make(num, den);
}

/// (n1+n2)/(m1+m2). Left unreduced when the sum is already coprime (always the
/// case for neighbours in a Farey-type sequence); reduced otherwise.
Fraction mediant(const Fraction& a, const Fraction& b);

/// Exact three-way comparison of a finite double against a fraction.
std::partial_ordering compare(double x, const Fraction& f) noexcept;

std::ostream& operator<<(std::ostream& os, const Fraction& f);

}  // namespace noma
