#include "random_programs.hpp"

namespace testgen {

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

namespace {

bool chance(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

template <class T>
const T& any_of(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[pick(rng, 0, v.size() - 1)];
}

std::string term(std::mt19937_64& rng, const Shape& shape) {
    if (chance(rng, shape.constant_rate)) return any_of(rng, shape.constants);
    return any_of(rng, shape.variables);
}

std::string number_or_var(std::mt19937_64& rng, const Shape& shape) {
    if (chance(rng, shape.constant_rate)) return std::to_string(pick(rng, 0, 9));
    return any_of(rng, shape.variables);
}

std::string atom(std::mt19937_64& rng, const Shape& shape) {
    const auto& [name, arity] = any_of(rng, shape.predicates);
    std::string out           = name;
    if (arity > 0) {
        out += '(';
        for (std::size_t i = 0; i < arity; ++i) {
            if (i) out += ',';
            out += term(rng, shape);
        }
        out += ')';
    }
    return out;
}

std::string builtin(std::mt19937_64& rng, const Shape& shape) {
    auto a = number_or_var(rng, shape), b = number_or_var(rng, shape), c = any_of(rng, shape.variables);
    switch (pick(rng, 0, 11)) {
        case 0: return c + " = " + a + " + " + b;
        case 1: return c + " = " + a + " * " + b;
        case 2: return a + " + " + b + " = " + c;
        case 3: return "+(" + a + "," + b + "," + c + ")";
        case 4: return a + " < " + b;
        case 5: return a + " <= " + b;
        case 6: return a + " > " + b;
        case 7: return a + " >= " + b;
        case 8: return a + " != " + b;
        case 9: return a + " <> " + b;
        case 10: return a + " = " + b;
        default: return "<(" + a + "," + b + ")";
    }
}

std::string aggregate(std::mt19937_64& rng, const Shape& shape) {
    static const std::vector<std::string> fns{"#count", "#sum", "#min", "#max"};
    std::string out = any_of(rng, shape.variables) + " = " + any_of(rng, fns) + "{";
    std::size_t elements = pick(rng, 1, 2);
    for (std::size_t e = 0; e < elements; ++e) {
        if (e) out += "; ";
        out += any_of(rng, shape.variables) + " : " + atom(rng, shape);
        if (chance(rng, 0.5)) out += ", " + atom(rng, shape);
        if (chance(rng, 0.3)) out += ", not " + atom(rng, shape);
    }
    return out + "}";
}

} // namespace

std::string random_rule_text(std::mt19937_64& rng, const Shape& shape) {
    std::size_t heads = pick(rng, 0, shape.max_head);
    std::size_t body  = pick(rng, heads == 0 ? 1 : 0, shape.max_body);
    std::string out;
    for (std::size_t i = 0; i < heads; ++i) {
        if (i) out += " v ";
        if (chance(rng, 0.1)) out += '-';
        out += atom(rng, shape);
    }
    if (body > 0) {
        out += heads ? " :- " : ":- ";
        for (std::size_t i = 0; i < body; ++i) {
            if (i) out += ", ";
            if (shape.aggregates && chance(rng, 0.1))
                out += aggregate(rng, shape);
            else if (chance(rng, shape.builtin_rate))
                out += builtin(rng, shape);
            else {
                if (chance(rng, shape.negation_rate)) out += "not ";
                out += atom(rng, shape);
            }
        }
    }
    return out + ".";
}

asplag::Rule random_rule(std::mt19937_64& rng, const Shape& shape) { return asplag::parse_rule(random_rule_text(rng, shape)); }

std::string random_program_text(std::mt19937_64& rng, const Shape& shape, std::size_t rules) {
    std::string out;
    for (std::size_t i = 0; i < rules; ++i) out += random_rule_text(rng, shape) + "\n";
    return out;
}

asplag::Program random_program(std::mt19937_64& rng, const Shape& shape, std::size_t rules, std::string id) {
    return asplag::parse_program(random_program_text(rng, shape, rules), std::move(id));
}

std::string random_string(std::mt19937_64& rng, std::size_t max_len, std::string_view alphabet) {
    std::size_t n = pick(rng, 0, max_len);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += alphabet[pick(rng, 0, alphabet.size() - 1)];
    return out;
}

} // namespace testgen
