#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace asplag {

/// Exact non-negative-denominator fraction, always stored in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    [[nodiscard]] std::string str() const; // "n/d", or "n" when den == 1
    /// Decimal with `digits` fractional digits, rounded half away from zero.
    [[nodiscard]] std::string fixed(int digits) const;

    /// Parses "n/d", an integer, or a plain decimal such as "0.95" exactly.
    static Rational parse(std::string_view text);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace asplag
