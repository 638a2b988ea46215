#include <asplag/corpus.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <time.h>

namespace fs = std::filesystem;

namespace asplag {
namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CorpusError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
    std::vector<fs::path> out;
    std::error_code       ec;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) out.push_back(it->path());
    if (ec) throw CorpusError("cannot list " + dir.string() + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> sources_below(const fs::path& dir) {
    std::vector<fs::path> out;
    std::error_code       ec;
    for (fs::recursive_directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
        if (it->is_regular_file() && is_source_file(it->path())) out.push_back(it->path());
    if (ec) throw CorpusError("cannot list " + dir.string() + ": " + ec.message());
    std::sort(out.begin(), out.end(), [&](const fs::path& a, const fs::path& b) {
        return a.lexically_relative(dir).generic_string() < b.lexically_relative(dir).generic_string();
    });
    return out;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// CPU time of the calling thread, so per-test totals do not depend on how many workers share a core.
class CpuStopwatch {
public:
    CpuStopwatch() : start_(now()) {}
    [[nodiscard]] double seconds() const { return now() - start_; }

private:
    static double now() {
        timespec ts{};
        clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
        return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
    }
    double start_;
};

} // namespace

bool is_source_file(const fs::path& p) {
    auto ext = p.extension().string();
    return ext == ".dl" || ext == ".lp" || ext == ".asp" || ext == ".txt";
}

Program load_program(const fs::path& entry, std::string id) {
    if (id.empty()) id = fs::is_directory(entry) ? entry.filename().string() : entry.stem().string();
    if (fs::is_directory(entry)) {
        auto files = sources_below(entry);
        if (files.empty()) throw CorpusError(entry.string() + ": directory holds no source files");
        std::string text;
        for (const auto& f : files) {
            text += read_file(f);
            if (!text.empty() && text.back() != '\n') text += '\n';
        }
        return parse_program(text, id);
    }
    return parse_program(read_file(entry), id);
}

LoadedCorpus load_corpus(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw CorpusError(dir.string() + " is not a readable directory");
    LoadedCorpus          out;
    std::set<std::string> ids;
    for (const auto& entry : sorted_entries(dir)) {
        const auto name = entry.filename().string();
        if (name.starts_with(".")) continue;
        const bool is_dir = fs::is_directory(entry);
        if (!is_dir && !is_source_file(entry)) {
            out.warnings.push_back("skipped " + name + ": unsupported extension");
            continue;
        }
        const std::string id = is_dir ? name : entry.stem().string();
        if (ids.contains(id)) {
            out.warnings.push_back("skipped " + name + ": duplicate program id '" + id + "'");
            continue;
        }
        try {
            out.programs.push_back(load_program(entry, id));
            ids.insert(id);
        } catch (const ParseError& e) {
            ++out.parse_failures;
            out.warnings.push_back(std::string("skipped ") + name + ": " + e.what());
        } catch (const CorpusError& e) {
            out.warnings.push_back(std::string("skipped ") + name + ": " + e.what());
        }
    }
    if (out.programs.empty()) throw CorpusError("no programs found in " + dir.string());
    std::sort(out.programs.begin(), out.programs.end(), [](const Program& a, const Program& b) { return a.id < b.id; });
    return out;
}

// -- comparing ---------------------------------------------------------------

TestSelection TestSelection::parse(std::string_view list) {
    TestSelection t{false, false, false, false};
    while (!list.empty()) {
        auto comma = list.find(',');
        auto name  = list.substr(0, comma);
        if (name == "structure")
            t.structure = true;
        else if (name == "lcs_program")
            t.lcs_program = true;
        else if (name == "lcs_comment")
            t.lcs_comment = true;
        else if (name == "fingerprint")
            t.fingerprint = true;
        else if (name == "all")
            t = TestSelection{};
        else
            throw std::invalid_argument("unknown test '" + std::string(name) +
                                        "' (expected structure, lcs_program, lcs_comment, fingerprint)");
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (!t.any()) throw std::invalid_argument("at least one test must be enabled");
    return t;
}

std::string TestSelection::str() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    add(structure, "structure");
    add(lcs_program, "lcs_program");
    add(lcs_comment, "lcs_comment");
    add(fingerprint, "fingerprint");
    return out;
}

Rational PairResult::score() const { return structure.empty() ? Rational(0) : structure.front().max(); }

const StructureResult* PairResult::structure_for(const std::string& technique) const {
    for (const auto& s : structure)
        if (s.technique == technique) return &s;
    return nullptr;
}

namespace {

PairResult compare_pair_timed(const Program& a, const Program& b, const CompareConfig& config, const OccurrenceTable* table,
                              std::map<std::string, double>* timing, const Fingerprint* fa = nullptr,
                              const Fingerprint* fb = nullptr) {
    PairResult r;
    r.id_a           = a.id;
    r.id_b           = b.id;
    r.technique_used = config.primary().spec();
    auto timed = [&](const std::string& kind, auto&& fn) {
        CpuStopwatch watch;
        try {
            fn();
        } catch (const std::exception& e) {
            r.errors.push_back(kind + ": " + e.what());
        }
        if (timing) (*timing)[kind] += watch.seconds();
    };

    if (config.tests.structure) {
        for (const auto& t : config.techniques) {
            const auto spec = t.spec();
            timed("structure:" + spec, [&] {
                auto            both = pair_similarity(a, b, t, config.search);
                StructureResult s{spec, std::move(both.ab), std::move(both.ba)};
                if (s.ab.approximate) r.approximate_flags.push_back(spec + ":ab");
                if (s.ba.approximate) r.approximate_flags.push_back(spec + ":ba");
                r.structure.push_back(std::move(s));
            });
        }
    }
    if (config.tests.lcs_program) timed("lcs_program", [&] { r.lcs_program = program_text_test(a, b); });
    if (config.tests.lcs_comment) timed("lcs_comment", [&] { r.lcs_comment = comment_test(a, b); });
    if (config.tests.fingerprint)
        timed("fingerprint", [&] {
            r.fingerprint = fa && fb ? fingerprint_similarity(*fa, *fb)
                                     : fingerprint_similarity(compute_fingerprint(a), compute_fingerprint(b));
        });
    if (table && config.confidence != ConfidenceMode::off) {
        timed("confidence", [&] {
            r.confidence = config.confidence == ConfidenceMode::table
                               ? confidence(a, b, *table)
                               : confidence_with_predicate_renaming(a, b, *table, config.search);
        });
    }
    return r;
}

} // namespace

PairResult compare_pair(const Program& a, const Program& b, const CompareConfig& config, const OccurrenceTable* table) {
    return compare_pair_timed(a, b, config, table, nullptr);
}

ResultSet run_corpus(const std::vector<Program>& corpus, const CompareConfig& config, std::size_t jobs, std::string corpus_name) {
    if (config.techniques.empty()) throw std::invalid_argument("no technique configured");
    Stopwatch wall;
    ResultSet out;
    out.corpus = std::move(corpus_name);
    out.config = config;

    std::vector<std::size_t> order(corpus.size());
    std::vector<Fingerprint> prints(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return corpus[x].id < corpus[y].id; });
    for (auto i : order) {
        const auto& p = corpus[i];
        prints[i] = compute_fingerprint(p);
        ProgramInfo info{p.id, prints[i], {}};
        for (const auto& r : p.rules) info.rules.push_back(render_rule(r));
        out.programs.push_back(std::move(info));
    }

    if (config.confidence != ConfidenceMode::off && !corpus.empty()) {
        CpuStopwatch watch;
        out.table = build_occurrence_table(corpus, config.table_technique, config.search);
        out.timing["occurrence_table"] += watch.seconds();
    }

    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t x = 0; x < order.size(); ++x)
        for (std::size_t y = x + 1; y < order.size(); ++y) work.emplace_back(order[x], order[y]);

    out.pairs.resize(work.size());
    jobs = std::max<std::size_t>(1, std::min(jobs, std::max<std::size_t>(work.size(), 1)));
    std::atomic<std::size_t> next{0};
    std::mutex               timing_lock;
    const OccurrenceTable*   table = out.table ? &*out.table : nullptr;
    auto worker = [&] {
        std::map<std::string, double> local;
        for (std::size_t k; (k = next.fetch_add(1)) < work.size();)
            out.pairs[k] = compare_pair_timed(corpus[work[k].first], corpus[work[k].second], config, table, &local,
                                              &prints[work[k].first], &prints[work[k].second]);
        std::lock_guard lock(timing_lock);
        for (const auto& [kind, s] : local) out.timing[kind] += s;
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    std::stable_sort(out.pairs.begin(), out.pairs.end(), [](const PairResult& x, const PairResult& y) {
        auto sx = x.score(), sy = y.score();
        if (sx != sy) return sx > sy;
        return std::tie(x.id_a, x.id_b) < std::tie(y.id_a, y.id_b);
    });
    out.wall_seconds = wall.seconds();
    return out;
}

// -- evaluation --------------------------------------------------------------

IdPair make_id_pair(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
}

EvalRow make_eval_row(std::string technique, Rational threshold, std::size_t classified, std::size_t actual,
                      std::size_t true_pairs) {
    EvalRow row;
    row.technique  = std::move(technique);
    row.threshold  = threshold;
    row.classified = classified;
    row.actual     = actual;
    row.precision  = classified == 0 ? Rational(1)
                                     : Rational(static_cast<std::int64_t>(actual), static_cast<std::int64_t>(classified));
    row.recall     = true_pairs == 0 ? Rational(1)
                                     : Rational(static_cast<std::int64_t>(actual), static_cast<std::int64_t>(true_pairs));
    return row;
}

std::vector<EvalRow> evaluate(const StoredResults& results, const std::set<IdPair>& labels,
                              const std::vector<std::string>& techniques, const std::vector<Rational>& thresholds) {
    std::set<std::string> ids(results.ids.begin(), results.ids.end());
    for (const auto& [a, b] : labels)
        for (const auto& id : {a, b})
            if (!ids.contains(id)) throw CorpusError("label references unknown program id '" + id + "'");

    std::vector<EvalRow> rows;
    for (const auto& tech : techniques) {
        std::vector<std::pair<Rational, bool>> scored;
        for (const auto& p : results.pairs) {
            auto it = p.structure.find(tech);
            if (it == p.structure.end()) throw CorpusError("results hold no structure scores for technique '" + tech + "'");
            scored.emplace_back(std::max(it->second.first, it->second.second), labels.contains(make_id_pair(p.id_a, p.id_b)));
        }
        double time = 0;
        if (auto t = results.timing.find("structure:" + tech); t != results.timing.end()) time = t->second;
        for (const auto& th : thresholds) {
            std::size_t classified = 0, actual = 0;
            for (const auto& [score, label] : scored)
                if (score >= th) {
                    ++classified;
                    actual += label;
                }
            auto row              = make_eval_row(tech, th, classified, actual, labels.size());
            row.wall_time_seconds = time;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

StoredResults stored_from(const ResultSet& results) {
    StoredResults out;
    for (const auto& p : results.programs) out.ids.push_back(p.id);
    for (const auto& p : results.pairs) {
        ScoredPair s{p.id_a, p.id_b, {}};
        for (const auto& st : p.structure) s.structure[st.technique] = {st.ab.value, st.ba.value};
        out.pairs.push_back(std::move(s));
    }
    out.timing = results.timing;
    return out;
}

} // namespace asplag
