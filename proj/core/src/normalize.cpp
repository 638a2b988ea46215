#include <asplag/similarity.hpp>

#include "detail.hpp"

#include <algorithm>

namespace asplag {

namespace detail {
void resort_aggregates(Literal& l) {
    for (auto& agg : l.aggregate) {
        for (auto& el : agg.elements) {
            for (auto& c : el.condition) resort_aggregates(c);
            for (auto& c : el.neg_condition) resort_aggregates(c);
            sort_unique(el.condition);
            sort_unique(el.neg_condition);
        }
        std::sort(agg.elements.begin(), agg.elements.end());
        agg.elements.erase(std::unique(agg.elements.begin(), agg.elements.end()), agg.elements.end());
    }
}

void normalize_deep(Rule& r) {
    for (auto* set : {&r.head, &r.pos_body, &r.neg_body})
        for (auto& l : *set) resort_aggregates(l);
    r.normalize();
}
} // namespace detail

namespace {
template <class Fn>
Rule map_literals(Rule r, Fn&& fn) {
    for (auto* set : {&r.head, &r.pos_body, &r.neg_body})
        for (auto& l : *set) l = fn(std::move(l));
    r.normalize();
    return r;
}

template <class Fn>
void map_inner(Literal& l, Fn& fn) {
    for (auto& agg : l.aggregate)
        for (auto& el : agg.elements) {
            for (auto& c : el.condition) c = fn(std::move(c));
            for (auto& c : el.neg_condition) c = fn(std::move(c));
        }
}
} // namespace

SimilarityScore rule_similarity(const Rule& r, const Rule& s) {
    std::size_t hits = 0;
    auto count = [&](const std::vector<Literal>& a, const std::vector<Literal>& b) {
        for (const auto& l : a)
            if (std::binary_search(b.begin(), b.end(), l)) ++hits;
    };
    count(r.head, s.head);
    count(r.pos_body, s.pos_body);
    count(r.neg_body, s.neg_body);
    std::size_t total = r.literal_count();
    return {hits, total == 0 ? 1 : total};
}

Literal canonise_literal(Literal l) {
    map_inner(l, canonise_literal);
    detail::resort_aggregates(l);
    if (!l.is_builtin()) return l;
    if (l.builtin == Builtin::ge || l.builtin == Builtin::gt) {
        std::swap(l.args[0], l.args[1]);
        l.builtin = l.builtin == Builtin::ge ? Builtin::le : Builtin::lt;
    }
    l.predicate = std::string(builtin_symbol(l.builtin));
    l.infix     = false;
    return l;
}

Rule canonise_builtins(Rule r) { return map_literals(std::move(r), canonise_literal); }

Literal order_literal(Literal l) {
    map_inner(l, order_literal);
    detail::resort_aggregates(l);
    switch (l.builtin) {
        case Builtin::eq:
        case Builtin::neq:
        case Builtin::plus:
        case Builtin::times:
            if (l.args.size() >= 2 && l.args[1].name < l.args[0].name) std::swap(l.args[0], l.args[1]);
            break;
        default: break;
    }
    return l;
}

Rule order_commutative_args(Rule r) { return map_literals(std::move(r), order_literal); }

Rule normalize_for(const Technique& t, Rule r) {
    if (t.contains(TechniqueKind::canonise_builtins)) r = canonise_builtins(std::move(r));
    if (t.contains(TechniqueKind::order_commutative)) r = order_commutative_args(std::move(r));
    return r;
}

Rule rename_variables(const Rule& r, const RenamingMap& map) {
    Rule out   = r;
    auto apply = [&](Term& t) {
        if (!t.is_variable()) return;
        if (const auto* e = map.find(t.name)) t.name = e->target;
    };
    for (auto* set : {&out.head, &out.pos_body, &out.neg_body})
        for (auto& l : *set) for_each_term(l, apply);
    if (out.weak_weight) apply(*out.weak_weight);
    if (out.weak_level) apply(*out.weak_level);
    detail::normalize_deep(out);
    return out;
}

Rule rename_predicates(const Rule& r, const RenamingMap& map) {
    Rule out   = r;
    auto apply = [&](Literal& l) {
        if (l.has_fixed_predicate()) return;
        if (const auto* e = map.find(l.predicate, l.arity())) l.predicate = e->target;
    };
    for (auto* set : {&out.head, &out.pos_body, &out.neg_body})
        for (auto& l : *set) for_each_atom(l, apply);
    detail::normalize_deep(out);
    return out;
}

Program rename_predicates(const Program& p, const RenamingMap& map) {
    Program out = p;
    for (auto& r : out.rules) r = rename_predicates(r, map);
    std::stable_sort(out.rules.begin(), out.rules.end());
    out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
    return out;
}

} // namespace asplag
