#pragma once

#include <asplag/rational.hpp>
#include <asplag/syntax.hpp>
#include <asplag/technique.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace asplag {

/// Matched literals of the first rule over its literal count.
struct SimilarityScore {
    std::size_t numerator   = 0;
    std::size_t denominator = 1;

    [[nodiscard]] Rational value() const { return {static_cast<std::int64_t>(numerator), static_cast<std::int64_t>(denominator)}; }
    friend bool operator==(const SimilarityScore&, const SimilarityScore&) = default;
};

/// Per-compartment structural intersection of r with s, normalised by |r|. Not symmetric.
[[nodiscard]] SimilarityScore rule_similarity(const Rule& r, const Rule& s);

// -- canonical forms ---------------------------------------------------------

/// Prefix form for every built-in; >= and > become <= and < with swapped arguments.
[[nodiscard]] Literal canonise_literal(Literal l);
[[nodiscard]] Rule    canonise_builtins(Rule r);

/// Sorts the commutable arguments (both for = and !=, the first two for + and *)
/// by their textual rendering.
[[nodiscard]] Literal order_literal(Literal l);
[[nodiscard]] Rule    order_commutative_args(Rule r);

/// Applies the canonical-form kinds of `t` (canonise and/or order) to one rule.
[[nodiscard]] Rule normalize_for(const Technique& t, Rule r);

// -- renamings ---------------------------------------------------------------

/// Renames variables listed in `map`; others are left untouched.
[[nodiscard]] Rule rename_variables(const Rule& r, const RenamingMap& map);
/// Renames non-built-in predicate symbols listed in `map` (keyed by name and arity).
[[nodiscard]] Rule    rename_predicates(const Rule& r, const RenamingMap& map);
[[nodiscard]] Program rename_predicates(const Program& p, const RenamingMap& map);

struct VariableRenamingResult {
    RenamingMap     map; // vars(r) -> vars(s) or fresh names
    SimilarityScore score;
    bool            approximate = false; // node budget exhausted, greedy fallback used
    std::uint64_t   nodes       = 0;
};

/// Best injective map of r's variables into s's variables (or fresh names)
/// under the canonical-form kinds of `scoring`. Ties resolve to the least map
/// in lexicographic order of its (source, target) list, fresh targets last.
[[nodiscard]] VariableRenamingResult best_variable_renaming(const Rule& r, const Rule& s, const Technique& scoring,
                                                            const SearchOptions& options = {});

struct PredicateRenamingResult {
    RenamingMap map;   // preds(P) -> preds(Q) with equal arity, or kept/fresh names
    Rational    score; // S(P renamed, Q, scoring + variable renaming)
    bool        approximate = false;
};

/// Arity-preserving injective predicate map for P maximising program similarity
/// against Q when variable renaming is also applied. Exhaustive when every arity
/// class of P holds at most `options.exhaustive_arity_limit` predicates.
[[nodiscard]] PredicateRenamingResult best_predicate_renaming(const Program& p, const Program& q, const Technique& scoring,
                                                              const SearchOptions& options = {});

// -- techniques on rule pairs and programs -----------------------------------

enum class Orientation {
    forward, // first rule comes from the context's first program
    reverse  // first rule comes from the context's second program
};

struct TransformedPair {
    Rule        first;
    Rule        second;
    RenamingMap variables; // applied to `first`; identity when variable renaming is off
    bool        approximate = false;
};

/// Throws TechniqueError if the chain holds predicate_renaming but no context is bound.
[[nodiscard]] TransformedPair apply_technique(const Technique& t, const Rule& r, const Rule& s,
                                              Orientation orientation = Orientation::forward,
                                              const SearchOptions& options = {});

/// Computes and attaches the predicate renaming for (p, q) when the chain needs one.
[[nodiscard]] Technique bind_context(const Technique& t, const Program& p, const Program& q,
                                     const SearchOptions& options = {});

struct RuleMatch {
    std::size_t                rule = 0;      // index into the first program
    std::optional<std::size_t> partner;       // argmax index into the second program
    SimilarityScore            score;
    RenamingMap                variables;
    std::vector<bool>          matched;         // first rule's literals (head, pos, neg order)
    std::vector<bool>          partner_matched; // partner's literals matched by the image of the first rule
    Rule                       image;           // the first rule after the technique, as scored
    Rule                       partner_image;   // the partner after the technique
    bool                       approximate = false;
};

struct ProgramSimilarity {
    Rational                   value;
    std::vector<RuleMatch>     rules;
    std::optional<RenamingMap> predicates; // when the chain renames predicates
    bool                       renamed_first = true; // predicate renaming applies to the first argument
    bool                       approximate   = false;
};

/// Mean over P's rules of the best σ against Q's rules under t. When t renames
/// predicates and carries no context, the context (p, q) is bound on the fly; a
/// context bound as (q, p) is applied in reverse.
[[nodiscard]] ProgramSimilarity program_similarity(const Program& p, const Program& q, const Technique& t,
                                                   const SearchOptions& options = {});

struct PairSimilarity {
    ProgramSimilarity ab;
    ProgramSimilarity ba;
};

/// Both directed similarities of a pair. When t renames predicates, one renaming
/// serves both directions (applied in reverse for S(q, p)). It is searched from
/// each side and the one giving the larger max(ab, ba) wins, then the larger
/// min, then the one searched from the smaller id, so swapping p and q swaps
/// the two scores and nothing else.
[[nodiscard]] PairSimilarity pair_similarity(const Program& p, const Program& q, const Technique& t,
                                             const SearchOptions& options = {});

} // namespace asplag
