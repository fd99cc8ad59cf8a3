#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace diffauct {

// Exact fixed-point amount used for valuations, bids and payments.
//
// Values are stored as a signed count of 10^-6 units. Every mechanism only
// adds, subtracts, negates and compares amounts, so results stay exact and
// the equality tests inside allocation rules are bit-exact. Decimal strings
// round-trip losslessly; doubles are quantized once, at load time.
class Money {
public:
    static constexpr int kScaleDigits = 6;
    static constexpr std::int64_t kScale = 1'000'000;

    constexpr Money() = default;

    static constexpr Money from_units(std::int64_t units) {
        Money m;
        m.units_ = units;
        return m;
    }
    static constexpr Money whole(std::int64_t value) { return from_units(value * kScale); }

    // Parses a decimal string such as "12", "-1.25" or "0.000001". Throws
    // std::invalid_argument on malformed input or when the string carries
    // more fractional digits than `precision` allows (strings are exact by
    // contract and are never silently rounded).
    static Money parse(std::string_view text, int precision = kScaleDigits);

    // Quantizes a double to `precision` decimal digits, rounding half away
    // from zero.
    static Money quantize(double value, int precision = kScaleDigits);

    constexpr std::int64_t units() const { return units_; }
    constexpr bool is_zero() const { return units_ == 0; }
    constexpr bool is_negative() const { return units_ < 0; }

    // Minimal decimal form: "12", "-1.5", "0.000001".
    std::string str() const;
    double to_double() const;

    constexpr Money operator+(Money o) const { return from_units(units_ + o.units_); }
    constexpr Money operator-(Money o) const { return from_units(units_ - o.units_); }
    constexpr Money operator-() const { return from_units(-units_); }
    Money& operator+=(Money o) {
        units_ += o.units_;
        return *this;
    }
    Money& operator-=(Money o) {
        units_ -= o.units_;
        return *this;
    }

    friend constexpr bool operator==(Money, Money) = default;
    friend constexpr std::strong_ordering operator<=>(Money, Money) = default;

private:
    std::int64_t units_ = 0;
};

// Exact when the unit sum is even; otherwise truncated toward zero. Used to
// probe bid values strictly between two grid points.
constexpr Money midpoint(Money a, Money b) {
    return Money::from_units((a.units() + b.units()) / 2);
}

constexpr Money max(Money a, Money b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, Money m);

}  // namespace diffauct
