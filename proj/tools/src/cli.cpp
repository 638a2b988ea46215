#include <asplag/cli.hpp>

#include <asplag/confidence.hpp>
#include <asplag/corpus.hpp>
#include <asplag/generator.hpp>
#include <asplag/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace asplag {
namespace {

/// Raised for bad flag values and unusable inputs; reported as one line, exit 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;

    std::vector<std::string> files; // parse
    std::string              first, second, corpus; // compare
    std::string              dir; // scan

    std::string tests      = "all";
    std::string technique  = "tau4";
    std::string threshold  = "0.95";
    std::string confidence = "off";
    std::string table_technique = "tau3";
    std::string jobs;
    std::string format;
    std::string output;
    std::string variable_budget  = "1000000";
    std::string predicate_budget = "200000";
    bool        strict           = false;
    bool        emit_table       = false;

    std::string results, timing, labels; // eval
    std::string techniques, thresholds = "1.0,0.95,0.90,0.85";

    std::string input, transforms, seed = "1"; // gen
    bool        synthetic = false;
    std::string originals = "75", copies = "25", min_rules = "6", max_rules = "14";
    bool        keep_predicates = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string              cur;
    std::istringstream       in(text);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

// "tau1,custom:canonise_builtins,variable_renaming,tau4": kind names continue the preceding custom spec.
std::vector<Technique> parse_technique_list(const std::string& text) {
    std::vector<std::string> specs;
    for (auto& token : split(text, ',')) {
        if (!specs.empty() && specs.back().starts_with("custom:") && kind_from_name(token))
            specs.back() += "," + token;
        else
            specs.push_back(token);
    }
    if (specs.empty()) throw UsageError("--technique needs at least one technique (tau1..tau4 or custom:<kinds>)");
    std::vector<Technique> out;
    try {
        for (const auto& s : specs) out.push_back(technique_from_spec(s));
    } catch (const TechniqueError& e) {
        throw UsageError(e.what());
    }
    return out;
}

Rational parse_threshold(const std::string& text, const char* flag) {
    Rational r;
    try {
        r = Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": '" + text + "' is not a number");
    }
    if (r < Rational(0) || r > Rational(1)) throw UsageError(std::string(flag) + ": " + text + " is outside [0, 1]");
    return r;
}

std::uint64_t parse_count(const std::string& text, const char* flag, std::uint64_t min = 0) {
    std::uint64_t v = 0;
    std::size_t   used = 0;
    try {
        if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw UsageError(std::string(flag) + ": '" + text + "' is not a non-negative integer");
    if (v < min) throw UsageError(std::string(flag) + " must be at least " + std::to_string(min));
    return v;
}

ConfidenceMode parse_confidence(const std::string& text) {
    if (text == "off" || text == "false" || text == "no") return ConfidenceMode::off;
    if (text == "on" || text == "true" || text == "table" || text == "yes") return ConfidenceMode::table;
    if (text == "pair_renaming" || text == "pair-renaming") return ConfidenceMode::pair_renaming;
    throw UsageError("--confidence: expected off, table or pair-renaming, got '" + text + "'");
}

CompareConfig make_config(const Options& o) {
    CompareConfig c;
    try {
        c.tests = TestSelection::parse(o.tests);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--tests: ") + e.what());
    }
    c.techniques = parse_technique_list(o.technique);
    c.threshold  = parse_threshold(o.threshold, "--threshold");
    c.confidence = parse_confidence(o.confidence);
    auto table   = parse_technique_list(o.table_technique);
    if (table.size() != 1 || table.front().contains(TechniqueKind::predicate_renaming))
        throw UsageError("--table-technique: expected one technique without predicate renaming, e.g. tau3");
    c.table_technique                 = table.front();
    c.search.variable_node_budget     = parse_count(o.variable_budget, "--variable-budget", 1);
    c.search.predicate_node_budget    = parse_count(o.predicate_budget, "--predicate-budget", 1);
    return c;
}

std::size_t parse_jobs(const std::string& text) {
    if (text.empty()) return std::max(1u, std::thread::hardware_concurrency());
    return static_cast<std::size_t>(parse_count(text, "--jobs", 1));
}

std::string read_text(const fs::path& p, const char* what) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw UsageError(std::string("cannot read ") + what + " " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw UsageError("cannot write " + p.string());
}

std::string diagnostic(const ParseError& e) {
    return e.file() + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what();
}

std::string pair_text(const PairResult& p) {
    std::ostringstream out;
    out << p.id_a << " vs " << p.id_b << "\n";
    out << "technique " << p.technique_used << "\n";
    for (std::size_t i = 0; i < p.structure.size(); ++i) {
        const auto& s = p.structure[i];
        out << (i == 0 ? std::string("structure") : "structure (" + s.technique + ")") << " " << s.ab.value.fixed(3) << " / "
            << s.ba.value.fixed(3) << "\n";
    }
    if (!p.structure.empty()) {
        const auto& s = p.structure.front();
        if (s.ab.predicates) {
            auto d = s.ab.predicates->describe();
            out << "predicates " << (d.empty() ? "identity" : d) << "\n";
        }
        for (const auto* dir : {&s.ab, &s.ba}) {
            const bool forward = dir == &s.ab;
            out << "rules " << (forward ? p.id_a : p.id_b) << " -> " << (forward ? p.id_b : p.id_a) << "\n";
            for (const auto& m : dir->rules) {
                out << "  " << m.rule << " -> " << (m.partner ? std::to_string(*m.partner) : "-") << "  sigma "
                    << m.score.value().fixed(3);
                if (auto d = m.variables.describe(); !d.empty()) out << "  " << d;
                out << "\n";
            }
        }
    }
    auto lcs = [&](const char* name, const std::optional<LcsResult>& r) {
        if (r) out << name << " " << r->similarity_ab.fixed(3) << " / " << r->similarity_ba.fixed(3) << "\n";
    };
    lcs("lcs_program", p.lcs_program);
    lcs("lcs_comment", p.lcs_comment);
    if (p.fingerprint) out << "fingerprint " << p.fingerprint->fixed(3) << "\n";
    if (p.confidence) out << "confidence " << p.confidence->fixed(3) << "\n";
    for (const auto& f : p.approximate_flags) out << "approximate " << f << "\n";
    for (const auto& e : p.errors) out << "error " << e << "\n";
    return out.str();
}

// -- subcommands -------------------------------------------------------------

int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
    bool failed = false;
    for (const auto& f : o.files) {
        try {
            auto p = load_program(f, f);
            out << f << ": " << p.rules.size() << " rules, " << p.comments.size() << " comments\n";
        } catch (const ParseError& e) {
            err << diagnostic(e) << "\n";
            failed = true;
        } catch (const CorpusError& e) {
            throw UsageError(e.what());
        }
    }
    return failed && o.strict ? exit_parse : exit_ok;
}

Program load_or_report(const std::string& path, std::string id, const Options& o, std::ostream& err, bool& parse_failed) {
    if (!fs::exists(path)) throw UsageError("cannot read " + path + ": no such file or directory");
    try {
        return load_program(path, std::move(id));
    } catch (const ParseError& e) {
        err << diagnostic(e) << "\n";
        parse_failed = true;
        (void)o;
        return {};
    } catch (const CorpusError& e) {
        throw UsageError(e.what());
    }
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    auto cfg = make_config(o);
    auto id_a = fs::path(o.first).stem().string();
    auto id_b = fs::path(o.second).stem().string();
    if (id_a == id_b) {
        id_a = o.first;
        id_b = o.second;
    }
    bool failed = false;
    auto a      = load_or_report(o.first, id_a, o, err, failed);
    auto b      = load_or_report(o.second, id_b, o, err, failed);
    if (failed) return o.strict ? exit_parse : exit_usage;

    std::optional<OccurrenceTable> table;
    if (cfg.confidence != ConfidenceMode::off) {
        std::vector<Program> corpus{a, b};
        if (!o.corpus.empty()) {
            try {
                auto loaded = load_corpus(o.corpus);
                for (auto& p : loaded.programs)
                    if (p.id != a.id && p.id != b.id) corpus.push_back(std::move(p));
            } catch (const CorpusError& e) {
                throw UsageError(std::string("--corpus: ") + e.what());
            }
        }
        table = build_occurrence_table(corpus, cfg.table_technique, cfg.search);
    }
    auto result = compare_pair(a, b, cfg, table ? &*table : nullptr);

    const std::string format = o.format.empty() ? "text" : o.format;
    if (format == "json") {
        ResultSet rs;
        rs.config = cfg;
        for (const auto* p : {&a, &b}) {
            ProgramInfo info{p->id, compute_fingerprint(*p), {}};
            for (const auto& r : p->rules) info.rules.push_back(render_rule(r));
            rs.programs.push_back(std::move(info));
        }
        rs.pairs.push_back(std::move(result));
        out << results_json(rs);
    } else if (format == "text") {
        out << pair_text(result);
    } else {
        throw UsageError("--format for compare: expected text or json, got '" + format + "'");
    }
    return exit_ok;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    auto cfg  = make_config(o);
    auto jobs = parse_jobs(o.jobs);
    std::set<std::string> formats;
    for (const auto& f : split(o.format.empty() ? "json,csv,html" : o.format, ',')) {
        if (f != "json" && f != "csv" && f != "html") throw UsageError("--format: unknown format '" + f + "' (json, csv, html)");
        formats.insert(f);
    }
    if (formats.empty()) throw UsageError("--format: at least one of json, csv, html");

    LoadedCorpus loaded;
    try {
        loaded = load_corpus(o.dir);
    } catch (const CorpusError& e) {
        throw UsageError(e.what());
    }
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    if (o.strict && loaded.parse_failures > 0) {
        err << loaded.parse_failures << " entries failed to parse\n";
        return exit_parse;
    }
    if (loaded.programs.size() < 2) throw UsageError("scan needs at least two programs in " + o.dir);

    fs::path corpus_path = fs::path(o.dir).lexically_normal();
    if (corpus_path.filename().empty()) corpus_path = corpus_path.parent_path();
    auto results     = run_corpus(loaded.programs, cfg, jobs, corpus_path.filename().string());
    results.warnings = loaded.warnings;

    const fs::path outdir = o.output.empty() ? fs::path("asplag-out") : fs::path(o.output);
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw UsageError("cannot create " + outdir.string() + ": " + ec.message());
    if (formats.contains("json")) {
        write_text(outdir / "results.json", results_json(results));
        write_text(outdir / "timing.json", timing_json(results));
    }
    if (formats.contains("csv")) write_text(outdir / "results.csv", results_csv(results));
    if (formats.contains("html")) {
        try {
            write_report(results, outdir / "report");
        } catch (const CorpusError& e) {
            throw UsageError(e.what());
        }
    }
    if (o.emit_table) {
        if (!results.table) results.table = build_occurrence_table(loaded.programs, cfg.table_technique, cfg.search);
        write_text(outdir / "occurrence_table.json", occurrence_table_json(*results.table));
    }

    std::size_t flagged = 0;
    for (const auto& p : results.pairs)
        if (!p.structure.empty() && p.score() >= cfg.threshold) ++flagged;
    out << results.programs.size() << " programs, " << results.pairs.size() << " pairs, " << flagged
        << " flagged at threshold " << cfg.threshold.fixed(2) << " (" << cfg.primary().spec() << ")\n";
    for (const auto& p : results.pairs)
        if (!p.structure.empty() && p.score() >= cfg.threshold)
            out << "flagged " << p.id_a << " " << p.id_b << " " << p.structure.front().ab.value.fixed(3) << " / "
                << p.structure.front().ba.value.fixed(3) << "\n";
    out << "wrote " << outdir.string() << "\n";
    return exit_ok;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream&) {
    if (o.results.empty()) throw UsageError("eval needs --results FILE");
    if (o.labels.empty()) throw UsageError("eval needs --labels FILE");
    auto        text = read_text(o.results, "results file");
    std::string timing_text;
    fs::path    timing = o.timing.empty() ? fs::path(o.results).parent_path() / "timing.json" : fs::path(o.timing);
    if (!o.timing.empty() || fs::exists(timing)) timing_text = read_text(timing, "timing file");

    StoredResults        stored;
    std::set<IdPair>     labels;
    std::vector<EvalRow> rows;
    try {
        stored = read_results_json(text, timing_text);
        labels = read_labels_csv(read_text(o.labels, "labels file"));
        std::vector<std::string> techs;
        if (!o.techniques.empty()) {
            for (const auto& t : parse_technique_list(o.techniques)) techs.push_back(t.spec());
        } else if (!stored.pairs.empty()) {
            for (const auto& [t, s] : stored.pairs.front().structure) techs.push_back(t);
        }
        std::vector<Rational> thresholds;
        for (const auto& t : split(o.thresholds, ',')) thresholds.push_back(parse_threshold(t, "--thresholds"));
        if (thresholds.empty()) throw UsageError("--thresholds needs at least one value");
        rows = evaluate(stored, labels, techs, thresholds);
    } catch (const CorpusError& e) {
        throw UsageError(e.what());
    }
    auto csv = eval_csv(rows);
    if (o.output.empty())
        out << csv;
    else
        write_text(o.output, csv);
    return exit_ok;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
    const auto seed = parse_count(o.seed, "--seed");
    if (o.synthetic) {
        SyntheticOptions so;
        so.originals         = parse_count(o.originals, "--originals", 1);
        so.copies            = parse_count(o.copies, "--copies");
        so.min_rules         = parse_count(o.min_rules, "--min-rules", 1);
        so.max_rules         = parse_count(o.max_rules, "--max-rules", 1);
        so.rename_predicates = !o.keep_predicates;
        if (so.copies > so.originals) throw UsageError("--copies must not exceed --originals");
        const fs::path dir = o.output.empty() ? fs::path("synthetic") : fs::path(o.output);
        auto corpus = generate_synthetic_corpus(so, seed);
        try {
            write_synthetic_corpus(corpus, dir);
        } catch (const CorpusError& e) {
            throw UsageError(e.what());
        }
        out << "wrote " << corpus.programs.size() << " programs (" << corpus.labels.size() << " planted copies) to "
            << dir.string() << "\n";
        return exit_ok;
    }
    if (o.input.empty()) throw UsageError("gen needs an input program, or --synthetic");
    std::vector<Transform> transforms;
    try {
        transforms = parse_transforms(o.transforms);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--transforms: ") + e.what());
    }
    bool failed = false;
    auto p      = load_or_report(o.input, fs::path(o.input).stem().string(), o, err, failed);
    if (failed) return o.strict ? exit_parse : exit_usage;
    auto copy = generate_camouflaged(p, transforms, seed);
    std::string script;
    for (const auto& s : copy.script) script += std::string(transform_name(s.transform)) + ": " + s.detail + "\n";
    if (o.output.empty()) {
        out << copy.source;
        err << script;
    } else {
        write_text(o.output, copy.source);
        write_text(o.output + ".script.txt", script);
        out << "wrote " << o.output << "\n";
    }
    return exit_ok;
}

// -- config file -------------------------------------------------------------

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string                        line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#' || line[b] == ';') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("bad config file " + path + " line " + std::to_string(n) + ": expected key = value");
        auto key   = split(line.substr(0, eq), '\n');
        auto value = line.substr(eq + 1);
        auto vb = value.find_first_not_of(" \t"), ve = value.find_last_not_of(" \t\r");
        value = vb == std::string::npos ? std::string() : value.substr(vb, ve - vb + 1);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty()) throw UsageError("bad config file " + path + " line " + std::to_string(n) + ": empty key");
        std::string k = key.front();
        for (auto& c : k)
            if (c == '_') c = '-';
        out[k] = value;
    }
    return out;
}

// Config values fill options the command line left unset.
void apply_config(const std::map<std::string, std::string>& config, CLI::App& app, CLI::App& sub, const std::string& path) {
    for (const auto& [key, value] : config) {
        CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (!opt) {
            bool known = false;
            for (auto* other : app.get_subcommands([](CLI::App*) { return true; }))
                known = known || other->get_option_no_throw("--" + key) != nullptr;
            if (!known) throw UsageError("bad config file " + path + ": unknown key '" + key + "'");
            continue;
        }
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options  o;
    CLI::App app{"Structural similarity and plagiarism screening for answer-set programs", "asplag"};
    app.require_subcommand(1);
    app.add_option("--config", o.config, "Flat key = value file whose keys mirror flag names")->envname("ASPLAG_CONFIG");

    auto add_compare_flags = [&](CLI::App* s) {
        s->add_option("--tests", o.tests, "Comma list of structure, lcs_program, lcs_comment, fingerprint (or all)");
        s->add_option("--technique", o.technique, "Comma list of techniques, the first is primary (tau1..tau4, custom:<kinds>)");
        s->add_option("--threshold", o.threshold, "Flagging threshold in [0,1]");
        s->add_option("--confidence", o.confidence, "off, table or pair-renaming");
        s->add_option("--table-technique", o.table_technique, "Equivalence used by the occurrence table");
        s->add_option("--variable-budget", o.variable_budget, "Search nodes per rule pair");
        s->add_option("--predicate-budget", o.predicate_budget, "Search nodes per program pair");
        s->add_option("--format", o.format, "Output format");
        s->add_flag("--strict", o.strict, "Treat parse errors as fatal (exit 2)");
    };

    auto* parse = app.add_subcommand("parse", "Syntax-check programs and print rule counts");
    parse->add_option("files", o.files, "Program files or directories")->required();
    parse->add_flag("--strict", o.strict, "Exit 2 when any file fails to parse");

    auto* compare = app.add_subcommand("compare", "Compare two programs");
    compare->add_option("first", o.first, "First program")->required();
    compare->add_option("second", o.second, "Second program")->required();
    add_compare_flags(compare);
    compare->add_option("--corpus", o.corpus, "Directory whose rules feed the occurrence table");

    auto* scan = app.add_subcommand("scan", "Compare every pair of a corpus directory");
    scan->add_option("dir", o.dir, "Corpus directory")->required();
    add_compare_flags(scan);
    scan->add_option("--jobs", o.jobs, "Worker threads (default: hardware threads)");
    scan->add_option("--output", o.output, "Output directory (default asplag-out)");
    scan->add_flag("--emit-occurrence-table", o.emit_table, "Also write occurrence_table.json");

    auto* eval = app.add_subcommand("eval", "Precision and recall of stored results against labels");
    eval->add_option("--results", o.results, "results.json from scan");
    eval->add_option("--timing", o.timing, "timing.json (default: beside the results)");
    eval->add_option("--labels", o.labels, "CSV with header id_a,id_b");
    eval->add_option("--techniques", o.techniques, "Comma list of techniques (default: all in the results)");
    eval->add_option("--thresholds", o.thresholds, "Comma list of thresholds");
    eval->add_option("--output", o.output, "CSV file (default: stdout)");

    auto* gen = app.add_subcommand("gen", "Generate camouflaged copies or a synthetic corpus");
    gen->add_option("input", o.input, "Program to disguise");
    gen->add_option("--transforms", o.transforms, "Comma list of transforms, applied in order");
    gen->add_option("--seed", o.seed, "Random seed");
    gen->add_option("--output", o.output, "Output file, or directory with --synthetic");
    gen->add_flag("--synthetic", o.synthetic, "Generate a labelled synthetic corpus");
    gen->add_option("--originals", o.originals, "Original programs in a synthetic corpus");
    gen->add_option("--copies", o.copies, "Planted copies in a synthetic corpus");
    gen->add_option("--min-rules", o.min_rules, "Fewest rules per original");
    gen->add_option("--max-rules", o.max_rules, "Most rules per original");
    gen->add_flag("--keep-predicates", o.keep_predicates, "Never rename predicates in planted copies");
    gen->add_flag("--strict", o.strict, "Exit 2 when the input fails to parse");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "asplag: " << e.what() << " (see asplag --help)\n";
        return exit_usage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!o.config.empty()) apply_config(read_config(o.config), app, *sub, o.config);
        if (sub == parse) return cmd_parse(o, out, err);
        if (sub == compare) return cmd_compare(o, out, err);
        if (sub == scan) return cmd_scan(o, out, err);
        if (sub == eval) return cmd_eval(o, out, err);
        return cmd_gen(o, out, err);
    } catch (const UsageError& e) {
        err << "asplag: " << e.what() << "\n";
        return exit_usage;
    } catch (const CLI::ParseError& e) {
        err << "asplag: config: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "asplag: " << e.what() << "\n";
        return exit_usage;
    }
}

} // namespace asplag
