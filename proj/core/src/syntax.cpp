#include <asplag/syntax.hpp>

#include <algorithm>
#include <cctype>
#include <tuple>

namespace asplag {

std::string_view builtin_symbol(Builtin b) noexcept {
    switch (b) {
        case Builtin::eq: return "=";
        case Builtin::neq: return "!=";
        case Builtin::lt: return "<";
        case Builtin::le: return "<=";
        case Builtin::gt: return ">";
        case Builtin::ge: return ">=";
        case Builtin::plus: return "+";
        case Builtin::times: return "*";
        case Builtin::none: break;
    }
    return "";
}

bool is_comparison(Builtin b) noexcept {
    return b == Builtin::eq || b == Builtin::neq || b == Builtin::lt || b == Builtin::le || b == Builtin::gt ||
           b == Builtin::ge;
}

bool is_arithmetic(Builtin b) noexcept { return b == Builtin::plus || b == Builtin::times; }

bool Literal::has_fixed_predicate() const noexcept {
    return is_builtin() || is_aggregate() || (!predicate.empty() && predicate.front() == '#');
}

bool operator==(const AggregateElement& a, const AggregateElement& b) {
    return a.terms == b.terms && a.condition == b.condition && a.neg_condition == b.neg_condition;
}
std::strong_ordering operator<=>(const AggregateElement& a, const AggregateElement& b) {
    if (auto c = a.terms <=> b.terms; c != 0) return c;
    if (auto c = a.condition <=> b.condition; c != 0) return c;
    return a.neg_condition <=> b.neg_condition;
}

bool operator==(const Aggregate& a, const Aggregate& b) {
    return a.function == b.function && a.lower == b.lower && a.upper == b.upper && a.elements == b.elements;
}
std::strong_ordering operator<=>(const Aggregate& a, const Aggregate& b) {
    if (auto c = a.function <=> b.function; c != 0) return c;
    if (auto c = a.lower <=> b.lower; c != 0) return c;
    if (auto c = a.upper <=> b.upper; c != 0) return c;
    return a.elements <=> b.elements;
}

bool operator==(const Literal& a, const Literal& b) {
    return a.classically_negated == b.classically_negated && a.predicate == b.predicate && a.builtin == b.builtin &&
           a.infix == b.infix && a.args == b.args && a.aggregate == b.aggregate;
}
std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.predicate <=> b.predicate; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    if (auto c = a.classically_negated <=> b.classically_negated; c != 0) return c;
    if (auto c = a.builtin <=> b.builtin; c != 0) return c;
    if (auto c = a.infix <=> b.infix; c != 0) return c;
    if (auto c = a.args <=> b.args; c != 0) return c;
    return a.aggregate <=> b.aggregate;
}

void sort_unique(std::vector<Literal>& lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

void Rule::normalize() {
    sort_unique(head);
    sort_unique(pos_body);
    sort_unique(neg_body);
}

bool operator==(const Rule& a, const Rule& b) {
    return a.weak == b.weak && a.head == b.head && a.pos_body == b.pos_body && a.neg_body == b.neg_body &&
           a.weak_weight == b.weak_weight && a.weak_level == b.weak_level;
}
std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
    if (auto c = a.head <=> b.head; c != 0) return c;
    if (auto c = a.pos_body <=> b.pos_body; c != 0) return c;
    if (auto c = a.neg_body <=> b.neg_body; c != 0) return c;
    if (auto c = a.weak <=> b.weak; c != 0) return c;
    if (auto c = a.weak_weight <=> b.weak_weight; c != 0) return c;
    return a.weak_level <=> b.weak_level;
}

ParseError::ParseError(std::string file, std::size_t line, std::size_t column, std::string token,
                       const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string() : " near '" + token + "'"))
    , file_(std::move(file))
    , line_(line)
    , column_(column)
    , token_(std::move(token)) {}

// -- rendering ---------------------------------------------------------------

std::string render_term(const Term& t) { return t.name; }

namespace {
std::string join_terms(const std::vector<Term>& ts) {
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ',';
        out += ts[i].name;
    }
    return out;
}

std::string render_conjunction(const std::vector<Literal>& pos, const std::vector<Literal>& neg, bool sorted) {
    std::vector<std::string> parts;
    parts.reserve(pos.size() + neg.size());
    std::vector<std::string> p, n;
    for (const auto& l : pos) p.push_back(render_literal(l));
    for (const auto& l : neg) n.push_back("not " + render_literal(l));
    if (sorted) {
        std::sort(p.begin(), p.end());
        std::sort(n.begin(), n.end());
    }
    std::string out;
    for (const auto* group : {&p, &n})
        for (const auto& s : *group) {
            if (!out.empty()) out += ", ";
            out += s;
        }
    return out;
}

std::string render_aggregate(const Aggregate& agg) {
    std::string out;
    if (agg.lower) out += agg.lower->bound.name + " " + std::string(builtin_symbol(agg.lower->op)) + " ";
    out += agg.function + "{";
    for (std::size_t i = 0; i < agg.elements.size(); ++i) {
        const auto& el = agg.elements[i];
        if (i) out += "; ";
        out += join_terms(el.terms);
        if (!el.condition.empty() || !el.neg_condition.empty())
            out += " : " + render_conjunction(el.condition, el.neg_condition, false);
    }
    out += "}";
    if (agg.upper) out += " " + std::string(builtin_symbol(agg.upper->op)) + " " + agg.upper->bound.name;
    return out;
}

std::string render_rule_impl(const Rule& r, bool sorted) {
    std::vector<std::string> head;
    for (const auto& l : r.head) head.push_back(render_literal(l));
    if (sorted) std::sort(head.begin(), head.end());
    std::string out;
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (i) out += " v ";
        out += head[i];
    }
    auto body = render_conjunction(r.pos_body, r.neg_body, sorted);
    if (r.weak) {
        out += ":~ " + body + ".";
        if (r.weak_weight || r.weak_level)
            out += " [" + (r.weak_weight ? r.weak_weight->name : std::string()) + ":" +
                   (r.weak_level ? r.weak_level->name : std::string()) + "]";
        return out;
    }
    if (!body.empty()) out += (head.empty() ? ":- " : " :- ") + body;
    out += ".";
    return out;
}
} // namespace

std::string render_literal(const Literal& l) {
    if (l.is_aggregate()) return render_aggregate(l.aggregate.front());
    if (l.is_builtin()) {
        auto sym = std::string(builtin_symbol(l.builtin));
        if (l.infix) {
            if (is_arithmetic(l.builtin) && l.args.size() == 3)
                return l.args[2].name + " = " + l.args[0].name + " " + sym + " " + l.args[1].name;
            if (l.args.size() == 2) return l.args[0].name + " " + sym + " " + l.args[1].name;
        }
        return sym + "(" + join_terms(l.args) + ")";
    }
    std::string out = l.classically_negated ? "-" : "";
    out += l.predicate;
    if (!l.args.empty()) out += "(" + join_terms(l.args) + ")";
    return out;
}

std::string render_rule(const Rule& r) { return render_rule_impl(r, true); }
std::string render_rule_verbatim(const Rule& r) { return render_rule_impl(r, false); }

std::vector<std::string> rule_variables(const Rule& r) {
    std::vector<std::string> vars;
    auto collect = [&](const Term& t) {
        if (t.is_variable()) vars.push_back(t.name);
    };
    for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
        for (const auto& l : *set) for_each_term(l, collect);
    if (r.weak_weight) collect(*r.weak_weight);
    if (r.weak_level) collect(*r.weak_level);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

// -- text preprocessing ------------------------------------------------------

std::string cleanse(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (c == '\\' && i + 1 < text.size()) {
                out += c;
                c = text[++i];
            } else if (c == '"') {
                in_string = false;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) out += c;
            continue;
        }
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == '"') in_string = true;
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
}

std::string extract_comments(const Program& program) {
    std::string out;
    bool        first = true;
    for (const auto& c : program.comments) {
        std::string_view body = c.text;
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
        if (!body.empty() && body.front() == '%') body.remove_prefix(1);
        std::string collapsed;
        bool        pending_space = false;
        for (char ch : body) {
            if (std::isspace(static_cast<unsigned char>(ch))) {
                pending_space = !collapsed.empty();
                continue;
            }
            if (pending_space) collapsed += ' ';
            pending_space = false;
            collapsed += ch;
        }
        if (!first) out += '\n';
        out += collapsed;
        first = false;
    }
    return out;
}

} // namespace asplag
