#include "diffauct/money.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace diffauct {

namespace {

constexpr std::int64_t kPow10[] = {1,      10,      100,      1000,
                                   10000,  100000,  1000000,  10000000,
                                   100000000, 1000000000};

[[noreturn]] void bad_amount(std::string_view text, const char* why) {
    throw std::invalid_argument("bad amount '" + std::string(text) + "': " + why);
}

}  // namespace

Money Money::parse(std::string_view text, int precision) {
    if (precision < 0 || precision > kScaleDigits)
        throw std::invalid_argument("amount precision must be in [0, 6]");
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::size_t digits_begin = pos;
    std::int64_t integral = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        integral = integral * 10 + (text[pos] - '0');
        if (integral > 2'000'000'000'000LL) bad_amount(text, "magnitude too large");
        ++pos;
    }
    if (pos == digits_begin && !(pos < text.size() && text[pos] == '.'))
        bad_amount(text, "no digits");
    std::int64_t frac_units = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int frac_digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++frac_digits;
            if (frac_digits > precision) {
                // Trailing zeros beyond the declared precision are harmless.
                if (text[pos] != '0') bad_amount(text, "more fractional digits than the declared precision");
            } else {
                frac_units += (text[pos] - '0') * kPow10[kScaleDigits - frac_digits];
            }
            ++pos;
        }
        if (frac_digits == 0 && pos == digits_begin + 1) bad_amount(text, "no digits");
    }
    if (pos != text.size()) bad_amount(text, "trailing characters");
    std::int64_t units = integral * kScale + frac_units;
    return from_units(negative ? -units : units);
}

Money Money::quantize(double value, int precision) {
    if (precision < 0 || precision > kScaleDigits)
        throw std::invalid_argument("amount precision must be in [0, 6]");
    if (!std::isfinite(value) || std::abs(value) > 2e12)
        throw std::invalid_argument("amount out of range");
    double scaled = value * static_cast<double>(kPow10[precision]);
    auto rounded = static_cast<std::int64_t>(std::llround(scaled));
    return from_units(rounded * kPow10[kScaleDigits - precision]);
}

std::string Money::str() const {
    std::int64_t u = units_;
    std::string out;
    if (u < 0) {
        out.push_back('-');
        u = -u;
    }
    out += std::to_string(u / kScale);
    std::int64_t frac = u % kScale;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(digits.begin(), kScaleDigits - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out.push_back('.');
        out += digits;
    }
    return out;
}

double Money::to_double() const { return static_cast<double>(units_) / static_cast<double>(kScale); }

std::ostream& operator<<(std::ostream& os, Money m) { return os << m.str(); }

}  // namespace diffauct
