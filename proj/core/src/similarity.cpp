#include <asplag/similarity.hpp>

#include "detail.hpp"

#include <algorithm>

namespace asplag {
namespace {

RenamingMap identity_variables(const Rule& r) {
    RenamingMap map;
    map.kind = RenamingKind::variable;
    for (auto& v : rule_variables(r)) map.entries.push_back({v, 0, v, false});
    return map;
}

const PredicateContext& require_context(const Technique& t) {
    const auto* ctx = t.context();
    if (!ctx) throw TechniqueError("predicate renaming needs a bound program pair");
    return *ctx;
}

// Renames variables of `first` towards `second` when the chain asks for it.
TransformedPair finish(const Technique& t, Rule first, Rule second, const SearchOptions& options) {
    TransformedPair out;
    if (t.contains(TechniqueKind::variable_renaming)) {
        const bool reorder = t.contains(TechniqueKind::order_commutative);
        auto       res     = detail::VariableSearch(first, second, reorder).solve(options.variable_node_budget);
        first              = rename_variables(first, res.map);
        if (reorder) first = order_commutative_args(std::move(first));
        out.variables   = std::move(res.map);
        out.approximate = res.approximate;
    } else {
        out.variables = identity_variables(first);
    }
    out.first  = std::move(first);
    out.second = std::move(second);
    return out;
}

std::vector<bool> match_flags(const Rule& a, const Rule& b) {
    std::vector<bool> flags;
    auto mark = [&](const std::vector<Literal>& x, const std::vector<Literal>& y) {
        for (const auto& l : x) flags.push_back(std::binary_search(y.begin(), y.end(), l));
    };
    mark(a.head, b.head);
    mark(a.pos_body, b.pos_body);
    mark(a.neg_body, b.neg_body);
    return flags;
}

} // namespace

VariableRenamingResult best_variable_renaming(const Rule& r, const Rule& s, const Technique& scoring,
                                              const SearchOptions& options) {
    const Technique canon = scoring.canonical_part();
    Rule            rn    = normalize_for(canon, r);
    Rule            sn    = normalize_for(canon, s);
    return detail::VariableSearch(rn, sn, canon.contains(TechniqueKind::order_commutative)).solve(options.variable_node_budget);
}

TransformedPair apply_technique(const Technique& t, const Rule& r, const Rule& s, Orientation orientation,
                                const SearchOptions& options) {
    Rule first  = normalize_for(t, r);
    Rule second = normalize_for(t, s);
    if (t.contains(TechniqueKind::predicate_renaming)) {
        const auto& ctx = require_context(t);
        if (orientation == Orientation::forward)
            first = rename_predicates(first, ctx.renaming);
        else
            second = rename_predicates(second, ctx.renaming);
    }
    return finish(t, std::move(first), std::move(second), options);
}

Technique bind_context(const Technique& t, const Program& p, const Program& q, const SearchOptions& options) {
    if (!t.contains(TechniqueKind::predicate_renaming)) return t;
    if (const auto* ctx = t.context(); ctx && ctx->first_id == p.id && ctx->second_id == q.id) return t;
    auto res = best_predicate_renaming(p, q, t.canonical_part(), options);
    return t.with_context({p.id, q.id, std::move(res.map), res.score, res.approximate});
}

ProgramSimilarity program_similarity(const Program& p, const Program& q, const Technique& t, const SearchOptions& options) {
    ProgramSimilarity out;
    Technique         bound = t;
    Orientation       orientation = Orientation::forward;
    const bool        renames_predicates = t.contains(TechniqueKind::predicate_renaming);
    if (renames_predicates) {
        if (!bound.context()) bound = bind_context(t, p, q, options);
        const auto& ctx = *bound.context();
        if (ctx.first_id == p.id && ctx.second_id == q.id)
            orientation = Orientation::forward;
        else if (ctx.first_id == q.id && ctx.second_id == p.id)
            orientation = Orientation::reverse;
        else
            throw TechniqueError("technique is bound to programs '" + ctx.first_id + "' and '" + ctx.second_id +
                                 "', not '" + p.id + "' and '" + q.id + "'");
        out.predicates    = ctx.renaming;
        out.renamed_first = orientation == Orientation::forward;
        out.approximate   = ctx.approximate;
    }

    std::vector<Rule> firsts, seconds;
    for (const auto& r : p.rules) firsts.push_back(normalize_for(t, r));
    for (const auto& s : q.rules) seconds.push_back(normalize_for(t, s));
    if (renames_predicates) {
        auto& side = orientation == Orientation::forward ? firsts : seconds;
        for (auto& r : side) r = rename_predicates(r, bound.context()->renaming);
    }

    const bool renames_variables = t.contains(TechniqueKind::variable_renaming);
    const bool reorder           = t.contains(TechniqueKind::order_commutative);
    Rational   sum(0);
    for (std::size_t i = 0; i < firsts.size(); ++i) {
        RuleMatch m;
        m.rule                 = i;
        m.score.denominator    = std::max<std::size_t>(firsts[i].literal_count(), 1);
        std::optional<VariableRenamingResult> best_map;
        for (std::size_t j = 0; j < seconds.size(); ++j) {
            if (renames_variables) {
                detail::VariableSearch search(firsts[i], seconds[j], reorder);
                if (m.partner && search.optimistic_bound() <= m.score.numerator) continue;
                auto res = search.solve(options.variable_node_budget);
                if (!m.partner || res.score.numerator > m.score.numerator) {
                    m.partner = j;
                    m.score   = res.score;
                    best_map  = std::move(res);
                }
            } else {
                auto sc = rule_similarity(firsts[i], seconds[j]);
                if (!m.partner || sc.numerator > m.score.numerator) {
                    m.partner = j;
                    m.score   = sc;
                }
            }
            if (m.score.numerator == m.score.denominator) break;
        }
        m.image = firsts[i];
        if (best_map) {
            m.approximate = best_map->approximate;
            m.image       = rename_variables(firsts[i], best_map->map);
            if (reorder) m.image = order_commutative_args(std::move(m.image));
            m.variables = std::move(best_map->map);
        } else {
            m.variables = identity_variables(firsts[i]);
        }
        if (m.partner) {
            m.partner_image   = seconds[*m.partner];
            m.matched         = match_flags(m.image, m.partner_image);
            m.partner_matched = match_flags(m.partner_image, m.image);
        } else {
            m.matched.assign(m.image.literal_count(), false);
        }
        out.approximate = out.approximate || m.approximate;
        sum += m.score.value();
        out.rules.push_back(std::move(m));
    }
    out.value = firsts.empty() ? Rational(0) : sum / Rational(static_cast<std::int64_t>(firsts.size()));
    return out;
}

PairSimilarity pair_similarity(const Program& p, const Program& q, const Technique& t, const SearchOptions& options) {
    if (!t.contains(TechniqueKind::predicate_renaming))
        return {program_similarity(p, q, t, options), program_similarity(q, p, t, options)};
    auto from_p = bind_context(t, p, q, options);
    PairSimilarity fwd{program_similarity(p, q, from_p, options), program_similarity(q, p, from_p, options)};
    if (p.id == q.id) return fwd;
    auto from_q = bind_context(t, q, p, options);
    PairSimilarity rev{program_similarity(p, q, from_q, options), program_similarity(q, p, from_q, options)};
    auto key = [](const PairSimilarity& s) {
        return std::pair{std::max(s.ab.value, s.ba.value), std::min(s.ab.value, s.ba.value)};
    };
    auto kf = key(fwd), kr = key(rev);
    if (kr > kf || (kr == kf && q.id < p.id)) return rev;
    return fwd;
}

} // namespace asplag
