#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asplag {

enum class TermKind { variable, symbol, integer, string };

/// A function-free term. `name` is the surface text; strings keep their quotes.
struct Term {
    TermKind    kind = TermKind::symbol;
    std::string name;

    static Term variable(std::string n) { return {TermKind::variable, std::move(n)}; }
    static Term symbol(std::string n) { return {TermKind::symbol, std::move(n)}; }
    static Term integer(std::string n) { return {TermKind::integer, std::move(n)}; }

    [[nodiscard]] bool is_variable() const noexcept { return kind == TermKind::variable; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Builtin { none, eq, neq, lt, le, gt, ge, plus, times };

[[nodiscard]] std::string_view builtin_symbol(Builtin b) noexcept;
[[nodiscard]] bool             is_comparison(Builtin b) noexcept;
[[nodiscard]] bool             is_arithmetic(Builtin b) noexcept;

struct Literal;

struct AggregateGuard {
    Builtin op = Builtin::none; // comparison only
    Term    bound;

    friend bool operator==(const AggregateGuard&, const AggregateGuard&) = default;
    friend auto operator<=>(const AggregateGuard&, const AggregateGuard&) = default;
};

struct AggregateElement {
    std::vector<Term>    terms;
    std::vector<Literal> condition;     // sorted, unique
    std::vector<Literal> neg_condition; // default-negated, sorted, unique

    friend bool                  operator==(const AggregateElement&, const AggregateElement&);
    friend std::strong_ordering operator<=>(const AggregateElement&, const AggregateElement&);
};

/// `lower op_l #fn{elements} op_u upper`; either guard may be absent.
struct Aggregate {
    std::string                   function; // "#count", "#sum", ...
    std::optional<AggregateGuard> lower;
    std::optional<AggregateGuard> upper;
    std::vector<AggregateElement> elements; // sorted, unique

    friend bool                  operator==(const Aggregate&, const Aggregate&);
    friend std::strong_ordering operator<=>(const Aggregate&, const Aggregate&);
};

/// An atom, a built-in, or an aggregate atom; default negation is recorded by
/// which body set the literal lives in, not on the literal.
///
/// Built-ins keep their arguments in prefix position order regardless of the
/// surface form: `Z = X + Y` is stored as plus [X, Y, Z] with `infix` set, so
/// canonisation only has to clear the flag (and swap for >/>=).
struct Literal {
    bool              classically_negated = false;
    std::string       predicate; // operator symbol for built-ins, function name for aggregates
    std::vector<Term> args;
    Builtin           builtin = Builtin::none;
    bool              infix   = false;
    std::vector<Aggregate> aggregate; // zero or one element

    [[nodiscard]] bool is_builtin() const noexcept { return builtin != Builtin::none; }
    [[nodiscard]] bool is_aggregate() const noexcept { return !aggregate.empty(); }
    /// Built-ins, aggregates and `#int`-style specials are never renamed.
    [[nodiscard]] bool has_fixed_predicate() const noexcept;
    [[nodiscard]] std::size_t arity() const noexcept { return args.size(); }

    friend bool                  operator==(const Literal&, const Literal&);
    friend std::strong_ordering operator<=>(const Literal&, const Literal&);
};

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end   = 0; // exclusive
};

struct Rule {
    std::vector<Literal> head;
    std::vector<Literal> pos_body;
    std::vector<Literal> neg_body;
    bool                 weak = false;
    std::optional<Term>  weak_weight;
    std::optional<Term>  weak_level;
    SourceSpan           span; // not part of identity

    [[nodiscard]] bool        is_constraint() const noexcept { return head.empty() && !(pos_body.empty() && neg_body.empty()); }
    [[nodiscard]] bool        is_fact() const noexcept { return !head.empty() && pos_body.empty() && neg_body.empty(); }
    [[nodiscard]] std::size_t literal_count() const noexcept { return head.size() + pos_body.size() + neg_body.size(); }

    /// Sorts and deduplicates the three literal sets.
    void normalize();

    friend bool                  operator==(const Rule&, const Rule&);
    friend std::strong_ordering operator<=>(const Rule&, const Rule&);
};

struct Comment {
    std::string text; // from the '%' marker to end of line, newline excluded
    SourceSpan  span;
};

struct Directive {
    std::string text;
    SourceSpan  span;
};

struct Program {
    std::string            id;
    std::vector<Rule>      rules; // sorted, unique
    std::string            raw_text;
    std::vector<Comment>   comments;
    std::vector<Directive> directives;
    std::string            cleansed_text;

    [[nodiscard]] std::size_t size() const noexcept { return rules.size(); }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, std::string token, const std::string& message);

    [[nodiscard]] const std::string& file() const noexcept { return file_; }
    [[nodiscard]] std::size_t        line() const noexcept { return line_; }
    [[nodiscard]] std::size_t        column() const noexcept { return column_; }
    [[nodiscard]] const std::string& token() const noexcept { return token_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
    std::string token_;
};

/// Parses DLV source text. Throws ParseError naming `id` on malformed input.
[[nodiscard]] Program parse_program(std::string_view text, std::string id);

/// Parses exactly one rule (used for round-trips and tests).
[[nodiscard]] Rule parse_rule(std::string_view text);

/// Strips `%` comments and every whitespace character; `%` inside quoted strings is kept.
[[nodiscard]] std::string cleanse(std::string_view text);

/// Comment bodies in source order, joined by '\n'.
[[nodiscard]] std::string extract_comments(const Program& program);

[[nodiscard]] std::string render_term(const Term& t);
[[nodiscard]] std::string render_literal(const Literal& l);
/// Deterministic text: literals sorted lexically within head, positive and negative body.
[[nodiscard]] std::string render_rule(const Rule& r);
/// Renders literals in their stored order; used by the generator to emit permuted sources.
[[nodiscard]] std::string render_rule_verbatim(const Rule& r);

/// Sorted distinct variable names of a rule (aggregate-local variables included).
[[nodiscard]] std::vector<std::string> rule_variables(const Rule& r);
/// Calls `fn(Term&)` for every term in the literal, aggregates included.
template <class Fn>
void for_each_term(Literal& l, Fn&& fn);
template <class Fn>
void for_each_term(const Literal& l, Fn&& fn);

/// Calls `fn(Literal&)` on the literal and every literal nested in its aggregate.
template <class Fn>
void for_each_atom(Literal& l, Fn&& fn);
template <class Fn>
void for_each_atom(const Literal& l, Fn&& fn);

void sort_unique(std::vector<Literal>& lits);

// -- implementation of the traversal templates ------------------------------

template <class L, class Fn>
void for_each_term_impl(L& l, Fn& fn) {
    for (auto& t : l.args) fn(t);
    for (auto& agg : l.aggregate) {
        if (agg.lower) fn(agg.lower->bound);
        if (agg.upper) fn(agg.upper->bound);
        for (auto& el : agg.elements) {
            for (auto& t : el.terms) fn(t);
            for (auto& c : el.condition) for_each_term_impl(c, fn);
            for (auto& c : el.neg_condition) for_each_term_impl(c, fn);
        }
    }
}

template <class Fn>
void for_each_term(Literal& l, Fn&& fn) { for_each_term_impl(l, fn); }
template <class Fn>
void for_each_term(const Literal& l, Fn&& fn) { for_each_term_impl(l, fn); }

template <class L, class Fn>
void for_each_atom_impl(L& l, Fn& fn) {
    fn(l);
    for (auto& agg : l.aggregate)
        for (auto& el : agg.elements) {
            for (auto& c : el.condition) for_each_atom_impl(c, fn);
            for (auto& c : el.neg_condition) for_each_atom_impl(c, fn);
        }
}

template <class Fn>
void for_each_atom(Literal& l, Fn&& fn) { for_each_atom_impl(l, fn); }
template <class Fn>
void for_each_atom(const Literal& l, Fn&& fn) { for_each_atom_impl(l, fn); }

} // namespace asplag
