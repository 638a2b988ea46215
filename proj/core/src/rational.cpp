#include <asplag/rational.hpp>

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace asplag {
namespace {
using Wide = __int128;

Wide gcd_wide(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a      = b;
        b      = t;
    }
    return a;
}

Rational make(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr Wide lim = static_cast<Wide>(INT64_MAX);
    if (num > lim || num < -lim || den > lim) throw std::overflow_error("rational overflow");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}
} // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::fixed(int digits) const {
    Wide scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Wide n      = num_ < 0 ? -static_cast<Wide>(num_) : num_;
    Wide scaled = (n * scale * 2 + den_) / (2 * static_cast<Wide>(den_));
    std::string whole = std::to_string(static_cast<long long>(scaled / scale));
    std::string out   = (num_ < 0 && scaled != 0 ? "-" : "") + whole;
    if (digits > 0) {
        std::string frac = std::to_string(static_cast<long long>(scaled % scale));
        out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return std::invalid_argument("not a number: '" + std::string(text) + "'"); };
    auto to_int = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw bad();
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return make(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac  = text.substr(dot + 1);
        if (frac.empty() || frac.size() > 15) throw bad();
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        std::int64_t w = whole.empty() ? 0 : to_int(whole);
        if (frac.front() == '-' || frac.front() == '+') throw bad();
        std::int64_t f = to_int(frac);
        bool neg = !whole.empty() && whole.front() == '-';
        return make(static_cast<Wide>(w) * scale + (neg ? -f : f), scale);
    }
    return Rational(to_int(text));
}

Rational operator+(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_ - static_cast<Wide>(b.num_) * a.den_,
                static_cast<Wide>(a.den_) * b.den_);
}
Rational operator*(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) {
    return make(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
}

} // namespace asplag
