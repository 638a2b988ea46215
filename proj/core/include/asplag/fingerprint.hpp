#pragma once

#include <asplag/rational.hpp>
#include <asplag/syntax.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace asplag {

struct Fingerprint {
    std::string content_digest;       // SHA-256 of the cleansed text, lowercase hex
    std::size_t rule_count       = 0;
    std::size_t predicate_count  = 0; // distinct name/arity symbols outside built-ins and aggregates
    std::size_t constant_count   = 0; // distinct symbols, strings and integers used as terms
    std::size_t variable_count   = 0; // distinct variables per rule, summed over rules
    std::size_t fact_count       = 0;
    std::size_t constraint_count = 0; // weak constraints included
    std::size_t literal_count    = 0;
    std::size_t cleansed_size    = 0; // code points
    std::size_t comment_count    = 0;

    static constexpr std::size_t attribute_count = 10;
    static constexpr std::array<std::string_view, attribute_count> attribute_names{
        "content_digest", "rule_count",       "predicate_count", "constant_count", "variable_count",
        "fact_count",     "constraint_count", "literal_count",   "cleansed_size",  "comment_count"};

    /// Attribute values in `attribute_names` order, rendered as text.
    [[nodiscard]] std::array<std::string, attribute_count> values() const;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

[[nodiscard]] std::string sha256_hex(std::string_view data);

[[nodiscard]] Fingerprint compute_fingerprint(const Program& p);

/// Equal attributes over the attribute count.
[[nodiscard]] Rational fingerprint_similarity(const Fingerprint& f, const Fingerprint& g);

} // namespace asplag
