#pragma once

#include <asplag/confidence.hpp>
#include <asplag/fingerprint.hpp>
#include <asplag/rational.hpp>
#include <asplag/similarity.hpp>
#include <asplag/syntax.hpp>
#include <asplag/technique.hpp>
#include <asplag/text_tests.hpp>

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asplag {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- loading -----------------------------------------------------------------

/// Extensions treated as program sources.
[[nodiscard]] bool is_source_file(const std::filesystem::path& p);

struct LoadedCorpus {
    std::vector<Program>     programs; // sorted by id
    std::vector<std::string> warnings; // skipped files and unparsable entries
    std::size_t              parse_failures = 0;
};

/// One program per source file or immediate subdirectory (its sources concatenated
/// in filename order). Throws CorpusError when the path is unreadable or nothing loads.
[[nodiscard]] LoadedCorpus load_corpus(const std::filesystem::path& dir);

/// Reads and parses one file or directory entry; throws ParseError or CorpusError.
[[nodiscard]] Program load_program(const std::filesystem::path& entry, std::string id = {});

// -- comparing ---------------------------------------------------------------

struct TestSelection {
    bool structure   = true;
    bool lcs_program = true;
    bool lcs_comment = true;
    bool fingerprint = true;

    /// "structure,lcs_program,lcs_comment,fingerprint" (any non-empty subset). Throws std::invalid_argument.
    static TestSelection parse(std::string_view list);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] bool        any() const noexcept { return structure || lcs_program || lcs_comment || fingerprint; }
};

enum class ConfidenceMode { off, table, pair_renaming };

struct CompareConfig {
    TestSelection          tests;
    std::vector<Technique> techniques{techniques::full()}; // the first one is primary
    Rational               threshold{19, 20};
    ConfidenceMode         confidence = ConfidenceMode::off;
    Technique              table_technique = default_table_technique();
    SearchOptions          search;

    [[nodiscard]] const Technique& primary() const { return techniques.front(); }
};

struct StructureResult {
    std::string       technique;
    ProgramSimilarity ab; // S(a, b)
    ProgramSimilarity ba; // S(b, a)

    [[nodiscard]] Rational max() const { return std::max(ab.value, ba.value); }
};

struct PairResult {
    std::string                  id_a, id_b;
    std::vector<StructureResult> structure; // one per configured technique, primary first
    std::optional<LcsResult>     lcs_program;
    std::optional<LcsResult>     lcs_comment;
    std::optional<Rational>      fingerprint;
    std::optional<Rational>      confidence;
    std::string                  technique_used;
    std::vector<std::string>     approximate_flags;
    std::vector<std::string>     errors;

    /// max(ab, ba) under the primary technique; 0 without a structure test.
    [[nodiscard]] Rational score() const;
    [[nodiscard]] const StructureResult* structure_for(const std::string& technique) const;
};

/// Runs the enabled tests on one pair. Test failures are recorded, never thrown.
[[nodiscard]] PairResult compare_pair(const Program& a, const Program& b, const CompareConfig& config,
                                      const OccurrenceTable* table = nullptr);

struct ProgramInfo {
    std::string              id;
    Fingerprint              fingerprint;
    std::vector<std::string> rules; // rendered, in stored order
};

struct ResultSet {
    std::string                   corpus;
    std::vector<ProgramInfo>      programs;
    std::vector<std::string>      warnings;
    CompareConfig                 config;
    std::vector<PairResult>       pairs;     // descending score, then ids
    std::map<std::string, double> timing;    // thread CPU seconds summed per test kind ("structure:tau4", ...)
    double                        wall_seconds = 0;
    std::optional<OccurrenceTable> table;
};

/// All unordered pairs, compared on up to `jobs` threads. Output order does not depend on `jobs`.
[[nodiscard]] ResultSet run_corpus(const std::vector<Program>& corpus, const CompareConfig& config, std::size_t jobs = 1,
                                   std::string corpus_name = {});

// -- evaluation --------------------------------------------------------------

using IdPair = std::pair<std::string, std::string>; // ordered so that first < second

[[nodiscard]] IdPair make_id_pair(std::string a, std::string b);

/// Directed structure scores per technique spec, as stored in a results file.
struct ScoredPair {
    std::string                                        id_a, id_b;
    std::map<std::string, std::pair<Rational, Rational>> structure;
};

struct StoredResults {
    std::vector<std::string>      ids;
    std::vector<ScoredPair>       pairs;
    std::map<std::string, double> timing;
};

struct EvalRow {
    std::string technique;
    Rational    threshold;
    std::size_t classified = 0;
    std::size_t actual     = 0;
    Rational    recall;
    Rational    precision;
    double      wall_time_seconds = 0;
};

/// Precision actual/classified (1 when nothing is classified); recall actual/true_pairs (1 when there are none).
[[nodiscard]] EvalRow make_eval_row(std::string technique, Rational threshold, std::size_t classified, std::size_t actual,
                                    std::size_t true_pairs);

/// One row per (technique, threshold), techniques outermost. Throws CorpusError for labels
/// naming unknown ids or techniques missing from the results.
[[nodiscard]] std::vector<EvalRow> evaluate(const StoredResults& results, const std::set<IdPair>& labels,
                                            const std::vector<std::string>& techniques, const std::vector<Rational>& thresholds);

[[nodiscard]] StoredResults stored_from(const ResultSet& results);

// -- files -------------------------------------------------------------------

/// Deterministic JSON; timings are written separately.
[[nodiscard]] std::string results_json(const ResultSet& results);
[[nodiscard]] std::string timing_json(const ResultSet& results);
[[nodiscard]] std::string results_csv(const ResultSet& results);
/// Throws CorpusError on malformed input.
[[nodiscard]] StoredResults read_results_json(const std::string& text, const std::string& timing_text = {});

[[nodiscard]] std::set<IdPair> read_labels_csv(const std::string& text);
[[nodiscard]] std::string      labels_csv(const std::set<IdPair>& labels);
[[nodiscard]] std::string      eval_csv(const std::vector<EvalRow>& rows);

} // namespace asplag
