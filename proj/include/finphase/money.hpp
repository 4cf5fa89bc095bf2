#ifndef FINPHASE_MONEY_HPP
#define FINPHASE_MONEY_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "finphase/error.hpp"

namespace finphase {

/// Signed amount in minor currency units. All arithmetic is checked; an
/// overflow throws ErrorCode::Overflow instead of wrapping.
class Money {
public:
    using rep = std::int64_t;

    constexpr Money() noexcept = default;
    constexpr explicit Money(rep units) noexcept : units_(units) {}

    constexpr rep units() const noexcept { return units_; }

    friend constexpr auto operator<=>(Money, Money) noexcept = default;

    friend Money operator+(Money a, Money b)
    {
        rep out{};
        if (__builtin_add_overflow(a.units_, b.units_, &out))
            throw Error(ErrorCode::Overflow, "money addition overflows");
        return Money(out);
    }

    friend Money operator-(Money a, Money b)
    {
        rep out{};
        if (__builtin_sub_overflow(a.units_, b.units_, &out))
            throw Error(ErrorCode::Overflow, "money subtraction overflows");
        return Money(out);
    }

    friend Money operator*(Money a, rep k)
    {
        rep out{};
        if (__builtin_mul_overflow(a.units_, k, &out))
            throw Error(ErrorCode::Overflow, "money multiplication overflows");
        return Money(out);
    }

    Money operator-() const
    {
        if (units_ == std::numeric_limits<rep>::min())
            throw Error(ErrorCode::Overflow, "money negation overflows");
        return Money(-units_);
    }

    Money& operator+=(Money b) { return *this = *this + b; }
    Money& operator-=(Money b) { return *this = *this - b; }

    constexpr double to_double() const noexcept { return static_cast<double>(units_); }

    friend std::ostream& operator<<(std::ostream& os, Money m) { return os << m.units_; }

private:
    rep units_ = 0;
};

inline std::string to_string(Money m) { return std::to_string(m.units()); }

/// Floor of `fraction * m` for m >= 0 and fraction in [0, 1]; the result
/// never exceeds m.
inline Money fraction_floor(Money m, double fraction)
{
    if (m.units() <= 0 || !(fraction > 0.0))
        return Money{};
    if (fraction >= 1.0)
        return m;
    auto v = static_cast<Money::rep>(std::floor(fraction * m.to_double()));
    return Money(std::clamp<Money::rep>(v, 0, m.units()));
}

} // namespace finphase

#endif // FINPHASE_MONEY_HPP
