#pragma once

#include <asplag/corpus.hpp>
#include <asplag/syntax.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace asplag {

/// mt19937_64 with portable bounded sampling, so a seed yields the same choices on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform in [0, n); n must be positive.
    std::size_t below(std::size_t n);
    bool        chance(std::uint32_t numerator, std::uint32_t denominator);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

enum class Transform {
    permute_rules,
    permute_literals,
    rename_variables,
    rename_predicates,
    rewrite_builtins,
    swap_commutative_args,
    inject_dummy_rule,
    reformat
};

[[nodiscard]] std::string_view         transform_name(Transform t) noexcept;
[[nodiscard]] std::optional<Transform> transform_from_name(std::string_view name) noexcept;
[[nodiscard]] const std::vector<Transform>& all_transforms();
/// Comma-separated transform names. Throws std::invalid_argument.
[[nodiscard]] std::vector<Transform> parse_transforms(std::string_view list);

struct EditStep {
    Transform   transform;
    std::string detail; // what was changed, e.g. "combi/1->q7x"
};

struct CamouflagedProgram {
    Program               program; // parsed from `source`
    std::string           source;
    std::vector<EditStep> script;
};

/// Applies the transforms in order; `seed` fixes every random choice.
[[nodiscard]] CamouflagedProgram generate_camouflaged(const Program& p, const std::vector<Transform>& transforms,
                                                      std::uint64_t seed, std::string id = {});

/// Random DLV source: facts, normal and disjunctive rules, constraints, negation,
/// comparisons and arithmetic. Every non-fact rule holds variables.
[[nodiscard]] std::string random_program_source(Rng& rng, std::size_t min_rules = 6, std::size_t max_rules = 14);

struct SyntheticOptions {
    std::size_t originals         = 75;
    std::size_t copies            = 25; // each of a distinct original
    std::size_t min_rules         = 6;
    std::size_t max_rules         = 14;
    bool        rename_predicates = true; // allow predicate renaming in copy chains
};

struct SyntheticProgram {
    std::string                id;
    std::string                source;
    std::optional<std::string> copy_of;
    std::vector<EditStep>      script;
};

struct SyntheticCorpus {
    std::vector<SyntheticProgram> programs; // sorted by id
    std::set<IdPair>              labels;
};

[[nodiscard]] SyntheticCorpus generate_synthetic_corpus(const SyntheticOptions& options, std::uint64_t seed);

/// Writes one `<id>.lp` per program into `dir`, plus `<dir>.labels.csv` and
/// `<dir>.scripts.json` beside it. Throws CorpusError on I/O failure.
void write_synthetic_corpus(const SyntheticCorpus& corpus, const std::filesystem::path& dir);

[[nodiscard]] std::string edit_scripts_json(const SyntheticCorpus& corpus);

} // namespace asplag
