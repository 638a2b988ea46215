#include <asplag/fingerprint.hpp>
#include <asplag/text_tests.hpp>

#include <openssl/evp.h>

#include <memory>
#include <set>
#include <stdexcept>

namespace asplag {

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int  len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::array<std::string, Fingerprint::attribute_count> Fingerprint::values() const {
    auto s = [](std::size_t v) { return std::to_string(v); };
    return {content_digest,   s(rule_count),       s(predicate_count), s(constant_count), s(variable_count),
            s(fact_count),    s(constraint_count), s(literal_count),   s(cleansed_size),  s(comment_count)};
}

Fingerprint compute_fingerprint(const Program& p) {
    Fingerprint f;
    f.content_digest = sha256_hex(p.cleansed_text);
    f.rule_count     = p.rules.size();
    f.cleansed_size  = code_point_count(p.cleansed_text);
    f.comment_count  = p.comments.size();

    std::set<std::pair<std::string, std::size_t>> predicates;
    std::set<std::string>                         constants;
    auto term = [&](const Term& t) {
        if (!t.is_variable()) constants.insert(t.name);
    };
    for (const auto& r : p.rules) {
        f.literal_count += r.literal_count();
        f.variable_count += rule_variables(r).size();
        if (r.is_fact()) ++f.fact_count;
        if (r.is_constraint() || r.weak) ++f.constraint_count;
        for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
            for (const auto& l : *set) {
                for_each_atom(l, [&](const Literal& a) {
                    if (!a.has_fixed_predicate()) predicates.insert({a.predicate, a.arity()});
                });
                for_each_term(l, term);
            }
        if (r.weak_weight) term(*r.weak_weight);
        if (r.weak_level) term(*r.weak_level);
    }
    f.predicate_count = predicates.size();
    f.constant_count  = constants.size();
    return f;
}

Rational fingerprint_similarity(const Fingerprint& f, const Fingerprint& g) {
    auto a = f.values(), b = g.values();
    std::int64_t same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
    return Rational(same, static_cast<std::int64_t>(Fingerprint::attribute_count));
}

} // namespace asplag
