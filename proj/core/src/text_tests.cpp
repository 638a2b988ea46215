#include <asplag/text_tests.hpp>

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace asplag {
namespace {

// Invalid sequences decode byte-wise into a private range so they never collide with real code points.
std::vector<char32_t> decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        auto        b   = static_cast<unsigned char>(s[i]);
        std::size_t len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
        bool        ok  = len > 0 && i + len <= s.size();
        char32_t    cp  = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
        for (std::size_t k = 1; ok && k < len; ++k) {
            auto c = static_cast<unsigned char>(s[i + k]);
            if ((c & 0xC0) != 0x80) ok = false;
            cp = (cp << 6) | (c & 0x3F);
        }
        if (!ok) {
            out.push_back(0x110000u + b);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

Rational ratio(std::size_t n, std::size_t d) {
    if (d == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

} // namespace

std::size_t code_point_count(std::string_view text) { return decode(text).size(); }

std::size_t lcs_length(std::string_view a, std::string_view b) {
    auto x = decode(a);
    auto y = decode(b);
    if (x.size() > y.size()) std::swap(x, y);
    const std::size_t m = x.size();
    if (m == 0) return 0;
    const std::size_t words = (m + 63) / 64;

    // match masks: bit i of mask[c] is set iff x[i] == c
    std::unordered_map<char32_t, std::size_t> alphabet;
    std::vector<std::uint64_t>                masks;
    for (std::size_t i = 0; i < m; ++i) {
        auto [it, fresh] = alphabet.try_emplace(x[i], alphabet.size());
        if (fresh) masks.resize(masks.size() + words, 0);
        masks[it->second * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }

    std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
    for (char32_t c : y) {
        auto it = alphabet.find(c);
        if (it == alphabet.end()) continue;
        const std::uint64_t* mask  = &masks[it->second * words];
        std::uint64_t        carry = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t u  = v[w] & mask[w];
            std::uint64_t s1 = v[w] + u;
            std::uint64_t s2 = s1 + carry;
            carry            = (s1 < v[w]) | (s2 < s1);
            v[w]             = s2 | (v[w] & ~mask[w]);
        }
    }

    std::size_t ones = 0;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t word = v[w];
        if (w == words - 1 && m % 64) word &= (std::uint64_t{1} << (m % 64)) - 1;
        ones += static_cast<std::size_t>(std::popcount(word));
    }
    return m - ones;
}

LcsResult lcs_similarity(std::string_view a, std::string_view b) {
    LcsResult r;
    r.lcs_length    = lcs_length(a, b);
    r.length_a      = code_point_count(a);
    r.length_b      = code_point_count(b);
    r.similarity_ab = ratio(r.lcs_length, r.length_a);
    r.similarity_ba = ratio(r.lcs_length, r.length_b);
    return r;
}

LcsResult comment_test(const Program& a, const Program& b) {
    return lcs_similarity(extract_comments(a), extract_comments(b));
}

LcsResult program_text_test(const Program& a, const Program& b) { return lcs_similarity(a.cleansed_text, b.cleansed_text); }

} // namespace asplag
