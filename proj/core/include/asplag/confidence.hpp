#pragma once

#include <asplag/rational.hpp>
#include <asplag/similarity.hpp>
#include <asplag/syntax.hpp>
#include <asplag/technique.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asplag {

/// r ~ s under t: both directed similarities reach 1. `t` must not rename predicates.
[[nodiscard]] bool rule_equivalent(const Rule& r, const Rule& s, const Technique& t, const SearchOptions& options = {});

struct RuleOccurrence {
    std::string program;
    std::size_t rule = 0; // index into the program's rules

    friend bool operator==(const RuleOccurrence&, const RuleOccurrence&) = default;
};

struct OccurrenceClass {
    Rule                        representative; // first occurrence in corpus order
    std::size_t                 count = 0;
    std::vector<RuleOccurrence> members;
};

class OccurrenceTable {
public:
    OccurrenceTable() = default;

    [[nodiscard]] const Technique&                    technique() const noexcept { return technique_; }
    [[nodiscard]] const std::vector<OccurrenceClass>& classes() const noexcept { return classes_; }
    [[nodiscard]] std::size_t                         total_rules() const noexcept { return total_; }

    /// Class of an arbitrary rule, if it is equivalent to some corpus rule.
    [[nodiscard]] std::optional<std::size_t> find(const Rule& r) const;
    /// Class indices of a corpus program's rules, in rule order; empty if the id is unknown.
    [[nodiscard]] const std::vector<std::size_t>* classes_of(const std::string& program) const;

private:
    friend OccurrenceTable build_occurrence_table(const std::vector<Program>& corpus, const Technique& t,
                                                  const SearchOptions& options);

    Technique                                       technique_;
    SearchOptions                                   options_;
    std::vector<OccurrenceClass>                    classes_;
    std::size_t                                     total_ = 0;
    std::map<std::string, std::vector<std::size_t>> buckets_; // renaming-invariant key -> classes
    std::map<std::string, std::vector<std::size_t>> by_program_;
};

/// The chain used for corpus tables unless configured otherwise: tau3.
[[nodiscard]] Technique default_table_technique();

/// Partitions every rule occurrence of the corpus into ~t classes. Throws on an
/// empty corpus or a chain that renames predicates.
[[nodiscard]] OccurrenceTable build_occurrence_table(const std::vector<Program>& corpus, const Technique& t,
                                                     const SearchOptions& options = {});

/// Class size of r over the number of rule occurrences. Throws std::out_of_range for unknown rules.
[[nodiscard]] Rational relative_frequency(const OccurrenceTable& table, const Rule& r);

/// Largest 1 - f(r) over rules of p with an equivalent rule in q; 0 when none is shared.
[[nodiscard]] Rational confidence(const Program& p, const Program& q, const OccurrenceTable& table);

/// As `confidence`, but rules of p are first renamed by the best predicate renaming
/// for (p, q); frequencies still refer to the unrenamed rules.
[[nodiscard]] Rational confidence_with_predicate_renaming(const Program& p, const Program& q, const OccurrenceTable& table,
                                                          const SearchOptions& options = {});

/// JSON document describing the table.
[[nodiscard]] std::string occurrence_table_json(const OccurrenceTable& table);

} // namespace asplag
