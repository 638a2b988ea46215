#include <asplag/generator.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <stdexcept>

namespace fs = std::filesystem;

namespace asplag {

// -- random numbers ----------------------------------------------------------

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below needs a positive bound");
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t       x;
    do x = engine_();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

bool Rng::chance(std::uint32_t numerator, std::uint32_t denominator) { return below(denominator) < numerator; }

// -- transform names ---------------------------------------------------------

namespace {

constexpr std::array<std::pair<Transform, std::string_view>, 8> transform_names{{
    {Transform::permute_rules, "permute_rules"},
    {Transform::permute_literals, "permute_literals"},
    {Transform::rename_variables, "rename_variables"},
    {Transform::rename_predicates, "rename_predicates"},
    {Transform::rewrite_builtins, "rewrite_builtins"},
    {Transform::swap_commutative_args, "swap_commutative_args"},
    {Transform::inject_dummy_rule, "inject_dummy_rule"},
    {Transform::reformat, "reformat"},
}};

} // namespace

std::string_view transform_name(Transform t) noexcept {
    for (const auto& [k, n] : transform_names)
        if (k == t) return n;
    return "";
}

std::optional<Transform> transform_from_name(std::string_view name) noexcept {
    for (const auto& [k, n] : transform_names)
        if (n == name) return k;
    return std::nullopt;
}

const std::vector<Transform>& all_transforms() {
    static const std::vector<Transform> all = [] {
        std::vector<Transform> v;
        for (const auto& [k, n] : transform_names) v.push_back(k);
        return v;
    }();
    return all;
}

std::vector<Transform> parse_transforms(std::string_view list) {
    std::vector<Transform> out;
    while (!list.empty()) {
        auto comma = list.find(',');
        auto name  = list.substr(0, comma);
        auto t     = transform_from_name(name);
        if (!t) throw std::invalid_argument("unknown transform '" + std::string(name) + "'");
        out.push_back(*t);
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    return out;
}

// -- camouflage --------------------------------------------------------------

namespace {

struct Layout {
    std::string neck     = " :- ";
    std::string body_sep = ", ";
    std::string head_sep = " v ";
    std::string end      = "\n";
    bool        spaced   = false; // spaces inside argument lists
};

struct DraftRule {
    Rule                     rule;
    std::vector<std::size_t> body; // emission order; indices past pos_body address neg_body
    Layout                   layout;
};

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

DraftRule draft_of(Rule r) {
    DraftRule d{std::move(r), {}, {}};
    d.body = iota(d.rule.pos_body.size() + d.rule.neg_body.size());
    return d;
}

std::string space_out(const std::string& text) {
    std::string out;
    bool        quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (quoted) {
            out += c;
            if (c == '\\' && i + 1 < text.size())
                out += text[++i];
            else if (c == '"')
                quoted = false;
            continue;
        }
        if (c == '"') quoted = true;
        if (c == ')') out += ' ';
        out += c;
        if (c == '(' || c == ',') out += ' ';
    }
    return out;
}

std::string emit_literal(const Literal& l, const Layout& layout) {
    auto text = render_literal(l);
    return layout.spaced ? space_out(text) : text;
}

std::string emit_rule(const DraftRule& d) {
    const auto& r = d.rule;
    const auto& L = d.layout;
    std::string head;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) head += L.head_sep;
        head += emit_literal(r.head[i], L);
    }
    std::string body;
    for (std::size_t k = 0; k < d.body.size(); ++k) {
        if (k) body += L.body_sep;
        std::size_t i = d.body[k];
        body += i < r.pos_body.size() ? emit_literal(r.pos_body[i], L) : "not " + emit_literal(r.neg_body[i - r.pos_body.size()], L);
    }
    std::string out;
    if (r.weak) {
        out = ":~ " + body + ".";
        if (r.weak_weight || r.weak_level)
            out += " [" + (r.weak_weight ? r.weak_weight->name : std::string()) + ":" +
                   (r.weak_level ? r.weak_level->name : std::string()) + "]";
    } else if (body.empty()) {
        out = head + ".";
    } else if (head.empty()) {
        auto neck = L.neck.substr(L.neck.find_first_not_of(' '));
        out       = neck + body + ".";
    } else {
        out = head + L.neck + body + ".";
    }
    return out + L.end;
}

std::string snippet(const DraftRule& d) {
    DraftRule plain{d.rule, d.body, {}};
    auto      s = emit_rule(plain);
    s.pop_back();
    return s;
}

class Camouflage {
public:
    Camouflage(const Program& p, std::uint64_t seed) : rng_(seed) {
        for (const auto& c : p.comments) preamble_.push_back(c.text);
        for (const auto& d : p.directives) preamble_.push_back(d.text);
        std::vector<const Rule*> ordered;
        for (const auto& r : p.rules) ordered.push_back(&r);
        std::stable_sort(ordered.begin(), ordered.end(), [](const Rule* a, const Rule* b) { return a->span.begin < b->span.begin; });
        for (const auto* r : ordered) rules_.push_back(draft_of(*r));
        for (const auto& d : rules_) collect_names(d.rule);
    }

    void apply(Transform t) {
        switch (t) {
        case Transform::permute_rules: permute_rules(); break;
        case Transform::permute_literals: permute_literals(); break;
        case Transform::rename_variables: rename_variables(); break;
        case Transform::rename_predicates: rename_predicates(); break;
        case Transform::rewrite_builtins: rewrite_builtins(); break;
        case Transform::swap_commutative_args: swap_commutative_args(); break;
        case Transform::inject_dummy_rule: inject_dummy_rule(); break;
        case Transform::reformat: reformat(); break;
        }
    }

    [[nodiscard]] std::string source() const {
        std::string out;
        for (const auto& line : preamble_) out += line + "\n";
        for (const auto& d : rules_) out += emit_rule(d);
        return out;
    }

    std::vector<EditStep> script;

private:
    void note(Transform t, std::string detail) { script.push_back({t, std::move(detail)}); }

    void collect_names(const Rule& r) {
        for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
            for (const auto& l : *set) {
                for_each_atom(l, [&](const Literal& a) {
                    if (!a.has_fixed_predicate()) predicate_names_.insert(a.predicate);
                });
                for_each_term(l, [&](const Term& t) {
                    if (t.is_variable()) variable_names_.insert(t.name);
                });
            }
    }

    std::string fresh_predicate(const std::string& stem) {
        static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyz0123456789";
        for (std::size_t len = 2;; ++len) {
            std::string name = stem;
            name += letters[rng_.below(26)];
            for (std::size_t i = 1; i < len; ++i) name += letters[rng_.below(letters.size())];
            if (predicate_names_.insert(name).second) return name;
        }
    }

    std::string fresh_variable(const std::set<std::string>& avoid) {
        for (std::size_t attempt = 0;; ++attempt) {
            std::string name(1, static_cast<char>('A' + rng_.below(26)));
            if (attempt >= 8) name += std::to_string(rng_.below(100));
            if (!variable_names_.contains(name) && !avoid.contains(name)) return name;
        }
    }

    template <class Fn>
    void each_body_literal(Fn&& fn) {
        for (std::size_t k = 0; k < rules_.size(); ++k) {
            for (auto& l : rules_[k].rule.pos_body) fn(k, l);
            for (auto& l : rules_[k].rule.neg_body) fn(k, l);
        }
    }

    void permute_rules() {
        rng_.shuffle(rules_);
        note(Transform::permute_rules, "shuffled " + std::to_string(rules_.size()) + " rules");
    }

    void permute_literals() {
        for (auto& d : rules_) {
            rng_.shuffle(d.rule.head);
            rng_.shuffle(d.body);
        }
        note(Transform::permute_literals, "shuffled literals of " + std::to_string(rules_.size()) + " rules");
    }

    void rename_variables() {
        std::size_t renamed = 0;
        for (auto& d : rules_) {
            std::set<std::string>              taken;
            std::map<std::string, std::string> map;
            for (const auto& v : rule_variables(d.rule)) {
                if (v.starts_with("_")) continue;
                auto target = fresh_variable(taken);
                taken.insert(target);
                map[v] = target;
            }
            if (map.empty()) continue;
            auto apply = [&](Term& t) {
                if (!t.is_variable()) return;
                if (auto it = map.find(t.name); it != map.end()) t.name = it->second;
            };
            for (auto* set : {&d.rule.head, &d.rule.pos_body, &d.rule.neg_body})
                for (auto& l : *set) for_each_term(l, apply);
            if (d.rule.weak_weight) apply(*d.rule.weak_weight);
            if (d.rule.weak_level) apply(*d.rule.weak_level);
            renamed += map.size();
        }
        note(Transform::rename_variables, "renamed " + std::to_string(renamed) + " variable occurrences across rules");
    }

    void rename_predicates() {
        std::set<std::pair<std::string, std::size_t>> symbols;
        for (const auto& d : rules_)
            for (const auto* set : {&d.rule.head, &d.rule.pos_body, &d.rule.neg_body})
                for (const auto& l : *set)
                    for_each_atom(l, [&](const Literal& a) {
                        if (!a.has_fixed_predicate()) symbols.emplace(a.predicate, a.arity());
                    });
        if (symbols.empty()) {
            note(Transform::rename_predicates, "no predicates to rename");
            return;
        }
        std::vector<std::pair<std::string, std::size_t>> pool(symbols.begin(), symbols.end());
        rng_.shuffle(pool);
        pool.resize(1 + rng_.below(pool.size()));
        std::sort(pool.begin(), pool.end());
        std::map<std::pair<std::string, std::size_t>, std::string> map;
        std::string                                                detail;
        for (const auto& sym : pool) {
            auto target = fresh_predicate(std::string(1, sym.first.front()));
            map[sym]    = target;
            if (!detail.empty()) detail += ", ";
            detail += sym.first + "/" + std::to_string(sym.second) + "->" + target;
        }
        for (auto& d : rules_)
            for (auto* set : {&d.rule.head, &d.rule.pos_body, &d.rule.neg_body})
                for (auto& l : *set)
                    for_each_atom(l, [&](Literal& a) {
                        if (a.has_fixed_predicate()) return;
                        if (auto it = map.find({a.predicate, a.arity()}); it != map.end()) a.predicate = it->second;
                    });
        note(Transform::rename_predicates, detail);
    }

    static bool rewritable(const Literal& l) {
        if (!l.is_builtin()) return false;
        return is_arithmetic(l.builtin) ? l.args.size() == 3 : l.args.size() == 2;
    }

    void rewrite_builtins() {
        std::vector<Literal*> targets;
        each_body_literal([&](std::size_t, Literal& l) {
            if (rewritable(l)) targets.push_back(&l);
        });
        std::size_t count = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (!rng_.chance(1, 2) && !(count == 0 && i + 1 == targets.size())) continue;
            Literal& l = *targets[i];
            static const std::map<Builtin, Builtin> mirrored{
                {Builtin::lt, Builtin::gt}, {Builtin::gt, Builtin::lt}, {Builtin::le, Builtin::ge}, {Builtin::ge, Builtin::le}};
            if (auto m = mirrored.find(l.builtin); m != mirrored.end() && rng_.chance(2, 3)) {
                l.builtin   = m->second;
                l.predicate = std::string(builtin_symbol(l.builtin));
                std::swap(l.args[0], l.args[1]);
                if (rng_.chance(1, 3)) l.infix = !l.infix;
            } else {
                l.infix = !l.infix;
            }
            ++count;
        }
        note(Transform::rewrite_builtins, "rewrote " + std::to_string(count) + " built-in literals");
    }

    void swap_commutative_args() {
        std::vector<Literal*> targets;
        each_body_literal([&](std::size_t, Literal& l) {
            if (!rewritable(l)) return;
            if (l.builtin == Builtin::eq || l.builtin == Builtin::neq || is_arithmetic(l.builtin)) targets.push_back(&l);
        });
        std::size_t count = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (!rng_.chance(1, 2) && !(count == 0 && i + 1 == targets.size())) continue;
            std::swap(targets[i]->args[0], targets[i]->args[1]);
            ++count;
        }
        note(Transform::swap_commutative_args, "swapped arguments of " + std::to_string(count) + " literals");
    }

    void inject_dummy_rule() {
        std::vector<std::size_t> donors;
        for (std::size_t k = 0; k < rules_.size(); ++k)
            if (!rules_[k].rule.pos_body.empty() && !rules_[k].rule.weak) donors.push_back(k);
        Rule dummy;
        Literal head;
        head.predicate = fresh_predicate("aux");
        if (!donors.empty()) {
            const Rule& donor = rules_[rng_.pick(donors)].rule;
            for (const auto& l : donor.pos_body)
                if (!l.is_builtin() && !l.is_aggregate()) dummy.pos_body.push_back(l);
            if (dummy.pos_body.empty()) dummy.pos_body = donor.pos_body;
            std::set<std::string> vars;
            for (const auto& l : dummy.pos_body)
                for_each_term(l, [&](const Term& t) {
                    if (t.is_variable() && !t.name.starts_with("_")) vars.insert(t.name);
                });
            std::vector<std::string> pool(vars.begin(), vars.end());
            rng_.shuffle(pool);
            pool.resize(std::min<std::size_t>(pool.size(), 2));
            std::sort(pool.begin(), pool.end());
            for (const auto& v : pool) head.args.push_back(Term::variable(v));
        }
        dummy.head.push_back(head);
        DraftRule d = draft_of(dummy);
        if (!rules_.empty()) d.layout = rules_[rng_.below(rules_.size())].layout;
        std::size_t at = rng_.below(rules_.size() + 1);
        rules_.insert(rules_.begin() + static_cast<std::ptrdiff_t>(at), d);
        note(Transform::inject_dummy_rule, "inserted " + snippet(rules_[at]) + " at position " + std::to_string(at));
    }

    void reformat() {
        static const std::vector<std::string> necks{" :- ", ":-", " :-\n    ", "  :-  ", " :-\n\t"};
        static const std::vector<std::string> seps{", ", ",", ",\n    ", " , ", ",\n\t\t"};
        static const std::vector<std::string> heads{" v ", "  v  ", " | ", "|"};
        static const std::vector<std::string> ends{"\n", "\n\n", "\n   \n", "\n"};
        for (auto& d : rules_) {
            d.layout.neck     = rng_.pick(necks);
            d.layout.body_sep = rng_.pick(seps);
            d.layout.head_sep = rng_.pick(heads);
            d.layout.end      = rng_.pick(ends);
            d.layout.spaced   = rng_.chance(1, 3);
        }
        note(Transform::reformat, "changed the layout of " + std::to_string(rules_.size()) + " rules");
    }

    Rng                      rng_;
    std::vector<std::string> preamble_;
    std::vector<DraftRule>   rules_;
    std::set<std::string>    predicate_names_;
    std::set<std::string>    variable_names_;
};

} // namespace

CamouflagedProgram generate_camouflaged(const Program& p, const std::vector<Transform>& transforms, std::uint64_t seed,
                                        std::string id) {
    Camouflage c(p, seed);
    for (auto t : transforms) c.apply(t);
    CamouflagedProgram out;
    out.source = c.source();
    out.script = std::move(c.script);
    if (id.empty()) id = p.id + "_copy";
    out.program = parse_program(out.source, std::move(id));
    return out;
}

// -- random programs ---------------------------------------------------------

namespace {

const std::vector<std::string> vocabulary{
    "node", "edge",  "arc",    "color", "assign", "path", "reach", "start", "goal",   "item",  "weight", "cost",
    "select", "chosen", "block", "on",   "move",   "time", "step",  "task",  "slot",   "room",  "person", "likes",
    "friend", "inp",  "outp",  "val",   "level",  "pos",  "cell",  "adj",   "free",   "busy",  "holds",  "open",
    "next",  "prev",  "comp",  "ab",    "link",   "part", "owner", "left",  "right",  "up"};
const std::vector<std::string> constants{"a", "b", "c", "d", "e", "1", "2", "3", "4", "5"};
const std::vector<std::string> variable_pool{"X", "Y", "Z", "W", "V", "U", "T"};
const std::vector<std::string> comment_words{"compute", "the",    "reachable", "nodes",   "guess",  "check",
                                             "assignment", "every", "component", "output", "constraint", "no",
                                             "two",     "adjacent", "share",     "a",       "colour", "choose"};

struct Pred {
    std::string name;
    std::size_t arity;
};

std::string atom_text(const Pred& p, const std::vector<std::string>& args) {
    std::string s = p.name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
    return s + ")";
}

} // namespace

std::string random_program_source(Rng& rng, std::size_t min_rules, std::size_t max_rules) {
    if (max_rules < min_rules) std::swap(min_rules, max_rules);
    std::vector<std::string> names = vocabulary;
    rng.shuffle(names);
    std::vector<Pred> preds;
    const std::size_t np = 4 + rng.below(5);
    for (std::size_t i = 0; i < np; ++i) preds.push_back({names[i], 1 + rng.below(3)});

    std::string out;
    for (std::size_t c = 0, nc = 1 + rng.below(2); c < nc; ++c) {
        out += "%";
        for (std::size_t w = 0, nw = 3 + rng.below(6); w < nw; ++w) out += " " + rng.pick(comment_words);
        out += "\n";
    }

    const std::size_t total = min_rules + rng.below(max_rules - min_rules + 1);
    const std::size_t facts = 1 + rng.below(3);
    for (std::size_t f = 0; f < facts && f < total; ++f) {
        const Pred&              p = preds[rng.below(2)];
        std::vector<std::string> args;
        for (std::size_t i = 0; i < p.arity; ++i) args.push_back(rng.pick(constants));
        out += atom_text(p, args) + ".\n";
    }

    for (std::size_t r = facts; r < total; ++r) {
        std::vector<std::string> body;
        std::set<std::string>    bound;
        auto var_args = [&](const Pred& p, bool fresh_ok) {
            std::vector<std::string> args;
            for (std::size_t i = 0; i < p.arity; ++i) {
                if (fresh_ok && rng.chance(1, 7)) {
                    args.push_back(rng.pick(constants));
                    continue;
                }
                if (!fresh_ok && !bound.empty()) {
                    std::vector<std::string> b(bound.begin(), bound.end());
                    args.push_back(rng.pick(b));
                    continue;
                }
                args.push_back(variable_pool[rng.below(std::min<std::size_t>(variable_pool.size(), 2 + body.size() * 2))]);
            }
            if (fresh_ok && std::none_of(args.begin(), args.end(), [](const std::string& a) { return std::isupper(a[0]); }))
                args[0] = "X";
            return args;
        };
        for (std::size_t b = 0, nb = 1 + rng.below(3); b < nb; ++b) {
            const Pred& p    = rng.pick(preds);
            auto        args = var_args(p, true);
            body.push_back(atom_text(p, args));
            for (const auto& a : args)
                if (std::isupper(static_cast<unsigned char>(a[0]))) bound.insert(a);
        }
        std::vector<std::string> vars(bound.begin(), bound.end());
        if (rng.chance(1, 3)) {
            const Pred& p = rng.pick(preds);
            body.push_back("not " + atom_text(p, var_args(p, false)));
        }
        if (rng.chance(1, 3)) {
            static const std::vector<std::string> ops{"<", "<=", ">", ">=", "!=", "="};
            std::string lhs = rng.pick(vars);
            std::string rhs = vars.size() > 1 && rng.chance(1, 2) ? rng.pick(vars) : constants[5 + rng.below(5)];
            body.push_back(lhs + " " + rng.pick(ops) + " " + rhs);
        }
        if (rng.chance(1, 5)) {
            std::string fresh = "N";
            std::string lhs   = rng.pick(vars);
            std::string rhs   = rng.chance(1, 2) ? rng.pick(vars) : constants[5 + rng.below(5)];
            body.push_back(fresh + " = " + lhs + (rng.chance(1, 2) ? " + " : " * ") + rhs);
            bound.insert(fresh);
            vars.push_back(fresh);
        }
        std::string joined;
        for (std::size_t i = 0; i < body.size(); ++i) joined += (i ? ", " : "") + body[i];

        if (rng.chance(1, 6)) {
            if (rng.chance(1, 3)) {
                const Pred& p = rng.pick(preds);
                std::vector<std::string> args;
                for (std::size_t i = 0; i < p.arity; ++i) args.push_back(i == 0 ? vars.front() : "Y" + std::to_string(i));
                std::string agg_var = p.arity > 1 ? args[1] : args[0];
                joined += ", #count{" + agg_var + " : " + atom_text(p, args) + "} > " + constants[5 + rng.below(3)];
            }
            out += ":- " + joined + ".\n";
            continue;
        }
        auto head_atom = [&] {
            const Pred&              p = rng.pick(preds);
            std::vector<std::string> args;
            for (std::size_t i = 0; i < p.arity; ++i) args.push_back(rng.pick(vars));
            return atom_text(p, args);
        };
        std::string head = head_atom();
        if (rng.chance(1, 8)) head += " v " + head_atom();
        out += head + " :- " + joined + ".\n";
    }
    return out;
}

// -- synthetic corpora -------------------------------------------------------

SyntheticCorpus generate_synthetic_corpus(const SyntheticOptions& options, std::uint64_t seed) {
    if (options.copies > options.originals) throw std::invalid_argument("more copies than originals");
    Rng               rng(seed);
    const std::size_t n = options.originals + options.copies;
    std::vector<std::size_t> slots = iota(n);
    rng.shuffle(slots);
    const int width = n <= 1000 ? 3 : static_cast<int>(std::to_string(n - 1).size());
    auto id_of = [&](std::size_t k) {
        std::string digits = std::to_string(slots[k]);
        return "sub" + std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0') + digits;
    };

    SyntheticCorpus        corpus;
    std::vector<Program>   originals;
    for (std::size_t i = 0; i < options.originals; ++i) {
        SyntheticProgram sp;
        sp.id     = id_of(i);
        sp.source = random_program_source(rng, options.min_rules, options.max_rules);
        originals.push_back(parse_program(sp.source, sp.id));
        corpus.programs.push_back(std::move(sp));
    }

    std::vector<std::size_t> chosen = iota(options.originals);
    rng.shuffle(chosen);
    chosen.resize(options.copies);
    for (std::size_t c = 0; c < options.copies; ++c) {
        const Program&         orig = originals[chosen[c]];
        std::vector<Transform> chain;
        for (auto t : all_transforms()) {
            if (t == Transform::rename_predicates && !options.rename_predicates) continue;
            if (rng.chance(1, 2)) chain.push_back(t);
        }
        if (chain.empty()) chain.push_back(Transform::reformat);
        SyntheticProgram sp;
        sp.id       = id_of(options.originals + c);
        auto made   = generate_camouflaged(orig, chain, rng.next(), sp.id);
        sp.source   = std::move(made.source);
        sp.copy_of  = orig.id;
        sp.script   = std::move(made.script);
        corpus.labels.insert(make_id_pair(orig.id, sp.id));
        corpus.programs.push_back(std::move(sp));
    }
    std::sort(corpus.programs.begin(), corpus.programs.end(),
              [](const SyntheticProgram& a, const SyntheticProgram& b) { return a.id < b.id; });
    return corpus;
}

std::string edit_scripts_json(const SyntheticCorpus& corpus) {
    nlohmann::ordered_json doc;
    doc["schema"] = "asplag.edit_scripts/1";
    auto& copies  = doc["copies"] = nlohmann::ordered_json::array();
    for (const auto& p : corpus.programs) {
        if (!p.copy_of) continue;
        nlohmann::ordered_json steps = nlohmann::ordered_json::array();
        for (const auto& s : p.script) steps.push_back({{"transform", transform_name(s.transform)}, {"detail", s.detail}});
        copies.push_back({{"id", p.id}, {"copy_of", *p.copy_of}, {"script", steps}});
    }
    return doc.dump(2) + "\n";
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write " + path.string());
    out << text;
    if (!out) throw CorpusError("cannot write " + path.string());
}

} // namespace

void write_synthetic_corpus(const SyntheticCorpus& corpus, const fs::path& dir) {
    fs::path clean = dir.lexically_normal();
    if (clean.filename().empty()) clean = clean.parent_path();
    std::error_code ec;
    fs::create_directories(clean, ec);
    if (ec) throw CorpusError("cannot create " + clean.string() + ": " + ec.message());
    for (const auto& p : corpus.programs) write_text(clean / (p.id + ".lp"), p.source);
    const auto stem = clean.filename().string();
    write_text(clean.parent_path() / (stem + ".labels.csv"), labels_csv(corpus.labels));
    write_text(clean.parent_path() / (stem + ".scripts.json"), edit_scripts_json(corpus));
}

} // namespace asplag
