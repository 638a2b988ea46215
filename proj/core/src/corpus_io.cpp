#include <asplag/corpus.hpp>

#include <json.hpp>

#include <sstream>

namespace asplag {
namespace {

using Json = nlohmann::ordered_json;

std::string bits(const std::vector<bool>& v) {
    std::string out;
    for (bool b : v) out += b ? '1' : '0';
    return out;
}

Json rational_json(const Rational& r) { return {{"exact", r.str()}, {"value", r.fixed(6)}}; }

Json renaming_json(const RenamingMap& m) {
    Json out = Json::array();
    for (const auto& e : m.entries) {
        Json entry{{"source", e.source}};
        if (m.kind == RenamingKind::predicate) entry["arity"] = e.arity;
        entry["target"] = e.target;
        entry["fresh"]  = e.fresh;
        out.push_back(std::move(entry));
    }
    return out;
}

Json directed_json(const ProgramSimilarity& s, bool details) {
    Json out = rational_json(s.value);
    out["approximate"] = s.approximate;
    if (s.predicates) {
        out["predicates"]         = renaming_json(*s.predicates);
        out["predicates_renamed"] = s.renamed_first ? "first" : "second";
    }
    if (!details) return out;
    auto& rules = out["rules"] = Json::array();
    for (const auto& m : s.rules) {
        Json r{{"rule", m.rule}};
        r["partner"]         = m.partner ? Json(*m.partner) : Json(nullptr);
        r["score"]           = m.score.value().str();
        r["variables"]       = m.variables.describe();
        r["image"]           = render_rule(m.image);
        r["partner_image"]   = m.partner ? Json(render_rule(m.partner_image)) : Json(nullptr);
        r["matched"]         = bits(m.matched);
        r["partner_matched"] = bits(m.partner_matched);
        rules.push_back(std::move(r));
    }
    return out;
}

Json lcs_json(const LcsResult& r) {
    return {{"lcs", r.lcs_length},
            {"length_a", r.length_a},
            {"length_b", r.length_b},
            {"ab", rational_json(r.similarity_ab)},
            {"ba", rational_json(r.similarity_ba)}};
}

const char* confidence_name(ConfidenceMode m) {
    switch (m) {
    case ConfidenceMode::off: return "off";
    case ConfidenceMode::table: return "table";
    case ConfidenceMode::pair_renaming: return "pair_renaming";
    }
    return "off";
}

Json config_json(const CompareConfig& c) {
    Json techs = Json::array();
    for (const auto& t : c.techniques) techs.push_back(t.spec());
    return {{"tests", c.tests.str()},
            {"techniques", techs},
            {"threshold", c.threshold.str()},
            {"confidence", confidence_name(c.confidence)},
            {"table_technique", c.table_technique.spec()},
            {"variable_node_budget", c.search.variable_node_budget},
            {"predicate_node_budget", c.search.predicate_node_budget},
            {"exhaustive_arity_limit", c.search.exhaustive_arity_limit}};
}

Json pair_json(const PairResult& p, const CompareConfig& config) {
    Json out{{"id_a", p.id_a}, {"id_b", p.id_b}};
    out["score"]          = rational_json(p.score());
    out["flagged"]        = !p.structure.empty() && p.score() >= config.threshold;
    out["technique_used"] = p.technique_used;
    auto& st = out["structure"] = Json::array();
    for (std::size_t i = 0; i < p.structure.size(); ++i) {
        const auto& s = p.structure[i];
        const bool  details = i == 0;
        st.push_back({{"technique", s.technique}, {"ab", directed_json(s.ab, details)}, {"ba", directed_json(s.ba, details)}});
    }
    if (p.lcs_program) out["lcs_program"] = lcs_json(*p.lcs_program);
    if (p.lcs_comment) out["lcs_comment"] = lcs_json(*p.lcs_comment);
    if (p.fingerprint) out["fingerprint"] = rational_json(*p.fingerprint);
    if (p.confidence) out["confidence"] = rational_json(*p.confidence);
    out["approximate_flags"] = p.approximate_flags;
    out["errors"]            = p.errors;
    return out;
}

Json fingerprint_json(const Fingerprint& f) {
    Json out;
    auto values = f.values();
    for (std::size_t i = 0; i < Fingerprint::attribute_count; ++i) {
        const std::string name(Fingerprint::attribute_names[i]);
        if (i == 0)
            out[name] = values[i];
        else
            out[name] = std::stoull(values[i]);
    }
    return out;
}

std::string opt_fixed(const std::optional<Rational>& r) { return r ? r->fixed(4) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string              cur;
    bool                     quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    for (auto& f : out) {
        auto b = f.find_first_not_of(" \t");
        auto e = f.find_last_not_of(" \t\r");
        f      = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string results_json(const ResultSet& results) {
    Json doc;
    doc["schema"] = "asplag.results/1";
    doc["corpus"] = {{"name", results.corpus},
                     {"program_count", results.programs.size()},
                     {"pair_count", results.pairs.size()},
                     {"warnings", results.warnings}};
    doc["config"] = config_json(results.config);
    auto& programs = doc["programs"] = Json::array();
    for (const auto& p : results.programs)
        programs.push_back({{"id", p.id}, {"fingerprint", fingerprint_json(p.fingerprint)}, {"rules", p.rules}});
    auto& pairs = doc["pairs"] = Json::array();
    for (const auto& p : results.pairs) pairs.push_back(pair_json(p, results.config));
    return doc.dump(2) + "\n";
}

std::string timing_json(const ResultSet& results) {
    Json doc;
    doc["schema"]       = "asplag.timing/1";
    doc["wall_seconds"] = results.wall_seconds;
    Json per            = Json::object();
    for (const auto& [kind, s] : results.timing) per[kind] = s;
    doc["tests"] = per;
    return doc.dump(2) + "\n";
}

std::string results_csv(const ResultSet& results) {
    std::ostringstream out;
    out << "id_a,id_b,technique,structure_ab,structure_ba,lcs_program_ab,lcs_program_ba,lcs_comment_ab,lcs_comment_ba,"
           "fingerprint,confidence\n";
    for (const auto& p : results.pairs) {
        std::string ab, ba, lpa, lpb, lca, lcb;
        if (!p.structure.empty()) {
            ab = p.structure.front().ab.value.fixed(4);
            ba = p.structure.front().ba.value.fixed(4);
        }
        if (p.lcs_program) {
            lpa = p.lcs_program->similarity_ab.fixed(4);
            lpb = p.lcs_program->similarity_ba.fixed(4);
        }
        if (p.lcs_comment) {
            lca = p.lcs_comment->similarity_ab.fixed(4);
            lcb = p.lcs_comment->similarity_ba.fixed(4);
        }
        out << csv_field(p.id_a) << ',' << csv_field(p.id_b) << ',' << p.technique_used << ',' << ab << ',' << ba << ','
            << lpa << ',' << lpb << ',' << lca << ',' << lcb << ',' << opt_fixed(p.fingerprint) << ','
            << opt_fixed(p.confidence) << '\n';
    }
    return out.str();
}

StoredResults read_results_json(const std::string& text, const std::string& timing_text) {
    StoredResults out;
    try {
        auto doc = Json::parse(text);
        if (doc.value("schema", "") != "asplag.results/1")
            throw CorpusError("results file has unsupported schema '" + doc.value("schema", "") + "'");
        for (const auto& p : doc.at("programs")) out.ids.push_back(p.at("id").get<std::string>());
        for (const auto& p : doc.at("pairs")) {
            ScoredPair s{p.at("id_a").get<std::string>(), p.at("id_b").get<std::string>(), {}};
            for (const auto& st : p.at("structure"))
                s.structure[st.at("technique").get<std::string>()] = {
                    Rational::parse(st.at("ab").at("exact").get<std::string>()),
                    Rational::parse(st.at("ba").at("exact").get<std::string>())};
            out.pairs.push_back(std::move(s));
        }
        if (!timing_text.empty()) {
            auto t = Json::parse(timing_text);
            for (const auto& [kind, s] : t.at("tests").items()) out.timing[kind] = s.get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw CorpusError(std::string("malformed results file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw CorpusError(std::string("malformed results file: ") + e.what());
    }
    return out;
}

std::set<IdPair> read_labels_csv(const std::string& text) {
    std::istringstream in(text);
    std::string        line;
    std::set<IdPair>   out;
    std::size_t        lineno = 0;
    bool               header = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_csv_line(line);
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (!header) {
            if (fields.size() != 2 || fields[0] != "id_a" || fields[1] != "id_b")
                throw CorpusError("labels file must start with the header 'id_a,id_b'");
            header = true;
            continue;
        }
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw CorpusError("labels line " + std::to_string(lineno) + ": expected two program ids");
        out.insert(make_id_pair(fields[0], fields[1]));
    }
    if (!header) throw CorpusError("labels file must start with the header 'id_a,id_b'");
    return out;
}

std::string labels_csv(const std::set<IdPair>& labels) {
    std::string out = "id_a,id_b\n";
    for (const auto& [a, b] : labels) out += csv_field(a) + ',' + csv_field(b) + '\n';
    return out;
}

std::string eval_csv(const std::vector<EvalRow>& rows) {
    std::ostringstream out;
    out << "technique,time,threshold,classified,actual,recall,precision\n";
    for (const auto& r : rows) {
        char time[32];
        std::snprintf(time, sizeof time, "%.2f", r.wall_time_seconds);
        out << r.technique << ',' << time << ',' << r.threshold.fixed(2) << ',' << r.classified << ',' << r.actual << ','
            << r.recall.fixed(2) << ',' << r.precision.fixed(2) << '\n';
    }
    return out.str();
}

} // namespace asplag
