#pragma once

#include <asplag/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asplag {

/// Camouflage technique kinds, declared in pipeline order: a chain always
/// applies them in this order.
enum class TechniqueKind : std::uint8_t { canonise_builtins, order_commutative, predicate_renaming, variable_renaming };

[[nodiscard]] std::string_view             kind_name(TechniqueKind k) noexcept;
[[nodiscard]] std::optional<TechniqueKind> kind_from_name(std::string_view name) noexcept;

class TechniqueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Limits for the renaming searches.
struct SearchOptions {
    std::uint64_t variable_node_budget      = 1'000'000; // per rule pair
    std::uint64_t predicate_node_budget     = 200'000;   // per program pair
    std::size_t   exhaustive_arity_limit    = 6;         // max predicates per arity class for exhaustive search
    std::size_t   hill_climb_max_iterations = 64;
};

enum class RenamingKind { variable, predicate };

struct RenamingEntry {
    std::string source;
    std::size_t arity = 0; // predicates only
    std::string target;
    bool        fresh = false; // target is a new name that occurs in neither argument

    friend bool operator==(const RenamingEntry&, const RenamingEntry&) = default;
};

/// Injective map, entries sorted by (source, arity). Every source symbol of the
/// renamed side has an entry; identity entries are explicit.
struct RenamingMap {
    RenamingKind               kind = RenamingKind::variable;
    std::vector<RenamingEntry> entries;

    [[nodiscard]] const RenamingEntry* find(std::string_view source, std::size_t arity = 0) const noexcept;
    [[nodiscard]] bool                 is_identity() const noexcept;
    /// "C->X, X->Y"; identity entries are omitted. Empty string for the identity map.
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const RenamingMap&, const RenamingMap&) = default;
};

/// The predicate renaming fixed for one ordered program pair. It always renames
/// the rules of `first_id`, whichever argument position they are compared in.
struct PredicateContext {
    std::string first_id;
    std::string second_id;
    RenamingMap renaming;
    Rational    objective; // S(first renamed, second) under the search objective
    bool        approximate = false;
};

class Technique {
public:
    Technique() = default; // identity

    /// Kinds must be given in pipeline order without repetition.
    explicit Technique(std::vector<TechniqueKind> chain);

    [[nodiscard]] const std::vector<TechniqueKind>& chain() const noexcept { return chain_; }
    [[nodiscard]] bool contains(TechniqueKind k) const noexcept;
    [[nodiscard]] bool is_identity() const noexcept { return chain_.empty(); }

    /// "tau1".."tau4" when the chain matches a predefined level, else "custom:k1,k2".
    [[nodiscard]] std::string spec() const;

    /// Only the canonical-form kinds (canonise/order) of this chain.
    [[nodiscard]] Technique canonical_part() const;

    [[nodiscard]] const PredicateContext* context() const noexcept { return context_.get(); }
    [[nodiscard]] Technique               with_context(PredicateContext ctx) const;

    friend bool operator==(const Technique& a, const Technique& b) noexcept { return a.chain_ == b.chain_; }

private:
    std::vector<TechniqueKind>              chain_;
    std::shared_ptr<const PredicateContext> context_;
};

/// Applying the result equals applying `inner`'s kinds and then `outer`'s,
/// normalised to pipeline order. Throws TechniqueError on a repeated kind or
/// conflicting contexts.
[[nodiscard]] Technique compose(const Technique& outer, const Technique& inner);

/// "tau1" | "tau2" | "tau3" | "tau4" | "custom:<kind>,<kind>,...". Throws TechniqueError.
[[nodiscard]] Technique technique_from_spec(std::string_view spec);

namespace techniques {
[[nodiscard]] Technique identity();
[[nodiscard]] Technique variables();  // tau2
[[nodiscard]] Technique canonical();  // tau3
[[nodiscard]] Technique full();       // tau4
} // namespace techniques

} // namespace asplag
