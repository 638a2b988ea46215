#include <asplag/confidence.hpp>

#include "detail.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace asplag {
namespace {

void require_table_technique(const Technique& t) {
    if (t.contains(TechniqueKind::predicate_renaming))
        throw TechniqueError("rule equivalence is defined per rule pair; predicate renaming needs a program pair");
}

// Equal for equivalent rules: variables are masked when the chain renames them, and
// masking commutes with the canonical forms (a variable always sorts between digits
// or strings and lowercase symbols, so ordering never depends on variable names).
std::string bucket_key(const Technique& t, const Rule& r) {
    const Rule n    = normalize_for(t, r);
    const bool mask = t.contains(TechniqueKind::variable_renaming);
    std::string key;
    for (const auto* set : {&n.head, &n.pos_body, &n.neg_body}) {
        std::vector<std::string> shapes;
        for (const auto& l : *set) {
            if (!mask)
                shapes.push_back(render_literal(l));
            else if (l.is_aggregate())
                shapes.push_back(detail::aggregate_key(l));
            else
                shapes.push_back(detail::shape_of(l).shape);
        }
        std::sort(shapes.begin(), shapes.end());
        for (auto& s : shapes) key += s + '\x1f';
        key += '\x1e';
    }
    return key;
}

} // namespace

bool rule_equivalent(const Rule& r, const Rule& s, const Technique& t, const SearchOptions& options) {
    require_table_technique(t);
    auto forward = apply_technique(t, r, s, Orientation::forward, options);
    if (rule_similarity(forward.first, forward.second).value() != Rational(1)) return false;
    auto backward = apply_technique(t, s, r, Orientation::forward, options);
    return rule_similarity(backward.first, backward.second).value() == Rational(1);
}

Technique default_table_technique() { return techniques::canonical(); }

OccurrenceTable build_occurrence_table(const std::vector<Program>& corpus, const Technique& t, const SearchOptions& options) {
    require_table_technique(t);
    if (corpus.empty()) throw std::invalid_argument("occurrence table needs a nonempty corpus");
    OccurrenceTable table;
    table.technique_ = Technique(t.chain());
    table.options_   = options;
    for (const auto& p : corpus) {
        auto& ids = table.by_program_[p.id];
        ids.clear();
        for (std::size_t i = 0; i < p.rules.size(); ++i) {
            const Rule& r       = p.rules[i];
            auto&       bucket  = table.buckets_[bucket_key(table.technique_, r)];
            std::size_t cls     = table.classes_.size();
            for (std::size_t c : bucket)
                if (rule_equivalent(table.classes_[c].representative, r, table.technique_, options)) {
                    cls = c;
                    break;
                }
            if (cls == table.classes_.size()) {
                table.classes_.push_back({r, 0, {}});
                bucket.push_back(cls);
            }
            auto& entry = table.classes_[cls];
            ++entry.count;
            entry.members.push_back({p.id, i});
            ids.push_back(cls);
            ++table.total_;
        }
    }
    return table;
}

std::optional<std::size_t> OccurrenceTable::find(const Rule& r) const {
    auto it = buckets_.find(bucket_key(technique_, r));
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t c : it->second)
        if (rule_equivalent(classes_[c].representative, r, technique_, options_)) return c;
    return std::nullopt;
}

const std::vector<std::size_t>* OccurrenceTable::classes_of(const std::string& program) const {
    auto it = by_program_.find(program);
    return it == by_program_.end() ? nullptr : &it->second;
}

Rational relative_frequency(const OccurrenceTable& table, const Rule& r) {
    auto c = table.find(r);
    if (!c) throw std::out_of_range("rule is not part of the occurrence table: " + render_rule(r));
    return Rational(static_cast<std::int64_t>(table.classes()[*c].count), static_cast<std::int64_t>(table.total_rules()));
}

namespace {

std::vector<std::optional<std::size_t>> class_ids(const Program& p, const OccurrenceTable& table) {
    std::vector<std::optional<std::size_t>> out;
    if (const auto* known = table.classes_of(p.id); known && known->size() == p.rules.size()) {
        for (auto c : *known) out.emplace_back(c);
        return out;
    }
    for (const auto& r : p.rules) out.push_back(table.find(r));
    return out;
}

Rational best_of_shared(const std::vector<std::optional<std::size_t>>& pc, const std::vector<bool>& shared,
                        const OccurrenceTable& table) {
    std::optional<std::size_t> rarest;
    for (std::size_t i = 0; i < pc.size(); ++i) {
        if (!shared[i] || !pc[i]) continue;
        std::size_t n = table.classes()[*pc[i]].count;
        if (!rarest || n < *rarest) rarest = n;
    }
    if (!rarest || table.total_rules() == 0) return Rational(0);
    auto total = static_cast<std::int64_t>(table.total_rules());
    return Rational(total - static_cast<std::int64_t>(*rarest), total);
}

} // namespace

Rational confidence(const Program& p, const Program& q, const OccurrenceTable& table) {
    auto              pc = class_ids(p, table);
    auto              qc = class_ids(q, table);
    std::vector<bool> shared(pc.size(), false);
    for (std::size_t i = 0; i < pc.size(); ++i)
        shared[i] = pc[i] && std::find(qc.begin(), qc.end(), pc[i]) != qc.end();
    return best_of_shared(pc, shared, table);
}

Rational confidence_with_predicate_renaming(const Program& p, const Program& q, const OccurrenceTable& table,
                                            const SearchOptions& options) {
    const Technique& t       = table.technique();
    auto             renamed = best_predicate_renaming(p, q, t.canonical_part(), options);
    auto             pc      = class_ids(p, table);
    std::vector<bool> shared(pc.size(), false);
    for (std::size_t i = 0; i < p.rules.size(); ++i) {
        Rule image = rename_predicates(p.rules[i], renamed.map);
        shared[i]  = std::any_of(q.rules.begin(), q.rules.end(),
                                 [&](const Rule& s) { return rule_equivalent(image, s, t, options); });
    }
    return best_of_shared(pc, shared, table);
}

std::string occurrence_table_json(const OccurrenceTable& table) {
    nlohmann::ordered_json doc;
    doc["schema"]      = "asplag.occurrence_table/1";
    doc["technique"]   = table.technique().spec();
    doc["total_rules"] = table.total_rules();
    auto& classes      = doc["classes"] = nlohmann::ordered_json::array();
    for (const auto& c : table.classes()) {
        nlohmann::ordered_json entry;
        entry["representative"] = render_rule(c.representative);
        entry["count"]          = c.count;
        entry["frequency"]      = Rational(static_cast<std::int64_t>(c.count), static_cast<std::int64_t>(table.total_rules())).str();
        auto& members           = entry["members"] = nlohmann::ordered_json::array();
        for (const auto& m : c.members) members.push_back({{"program", m.program}, {"rule", m.rule}});
        classes.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

} // namespace asplag
