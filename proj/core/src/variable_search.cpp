#include "detail.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace asplag::detail {

namespace {
constexpr char kMask = '\x01';

int index_of(const std::vector<std::string>& sorted, const std::string& name) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
    return static_cast<int>(it - sorted.begin());
}

bool commutable(const Literal& l) {
    switch (l.builtin) {
        case Builtin::eq:
        case Builtin::neq:
        case Builtin::plus:
        case Builtin::times: return true;
        default: return false;
    }
}
} // namespace

LiteralShape shape_of(const Literal& l) {
    LiteralShape out;
    Literal      masked = l;
    for_each_term(masked, [&](Term& t) {
        if (!t.is_variable()) return;
        out.vars.push_back(t.name);
        t.name = std::string(1, kMask);
    });
    out.shape = render_literal(masked);
    return out;
}

std::string aggregate_key(const Literal& l) {
    Literal masked = l;
    for_each_term(masked, [&](Term& t) {
        if (t.is_variable()) t.name = std::string(1, kMask);
    });
    resort_aggregates(masked);
    return render_literal(masked);
}

VariableSearch::VariableSearch(const Rule& r, const Rule& s, bool reorder) : reorder_(reorder) {
    total_ = r.literal_count();
    rvars_ = rule_variables(r);
    svars_ = rule_variables(s);

    const std::vector<Literal>* rsets[3] = {&r.head, &r.pos_body, &r.neg_body};
    const std::vector<Literal>* ssets[3] = {&s.head, &s.pos_body, &s.neg_body};

    struct Target {
        int         compartment;
        std::string shape;
        std::string key;
    };
    std::vector<Target> targets;
    for (int c = 0; c < 3; ++c)
        for (const auto& m : *ssets[c]) {
            Target t{c, {}, {}};
            std::vector<int> seq;
            if (m.is_aggregate()) {
                t.key = aggregate_key(m);
            } else {
                auto sh = shape_of(m);
                t.shape = std::move(sh.shape);
                for (const auto& v : sh.vars) seq.push_back(index_of(svars_, v));
            }
            slits_.push_back(&m);
            sseq_.push_back(std::move(seq));
            targets.push_back(std::move(t));
        }

    for (int c = 0; c < 3; ++c)
        for (const auto& l : *rsets[c]) {
            Source src;
            src.lit       = &l;
            src.aggregate = l.is_aggregate();
            for_each_term(l, [&](const Term& t) {
                if (t.is_variable()) src.distinct_vars.push_back(index_of(rvars_, t.name));
            });
            std::sort(src.distinct_vars.begin(), src.distinct_vars.end());
            src.distinct_vars.erase(std::unique(src.distinct_vars.begin(), src.distinct_vars.end()), src.distinct_vars.end());

            if (src.aggregate) {
                auto key = aggregate_key(l);
                for (std::size_t j = 0; j < targets.size(); ++j)
                    if (targets[j].compartment == c && targets[j].key == key)
                        src.cands.push_back({static_cast<int>(j), {}});
            } else {
                std::vector<Literal> variants{l};
                if (reorder_ && commutable(l) && l.args.size() >= 2 && l.args[0] != l.args[1]) {
                    Literal swapped = l;
                    std::swap(swapped.args[0], swapped.args[1]);
                    variants.push_back(std::move(swapped));
                }
                for (const auto& v : variants) {
                    auto             sh = shape_of(v);
                    std::vector<int> seq;
                    for (const auto& name : sh.vars) seq.push_back(index_of(rvars_, name));
                    for (std::size_t j = 0; j < targets.size(); ++j)
                        if (targets[j].compartment == c && !slits_[j]->is_aggregate() && targets[j].shape == sh.shape)
                            src.cands.push_back({static_cast<int>(j), seq});
                }
            }
            lits_.push_back(std::move(src));
        }

    assign_.assign(rvars_.size(), -1);
    used_.assign(svars_.size(), 0);
}

bool VariableSearch::unify(const std::vector<int>& rv, const std::vector<int>& sv, bool commit) {
    if (rv.size() != sv.size()) return false;
    local_.clear();
    const int fresh = static_cast<int>(svars_.size());
    for (std::size_t k = 0; k < rv.size(); ++k) {
        int a = rv[k], b = sv[k];
        if (assign_[a] >= 0) {
            if (assign_[a] == fresh || assign_[a] != b) return false;
            continue;
        }
        bool bound = false;
        for (auto [x, y] : local_) {
            if (x == a) {
                if (y != b) return false;
                bound = true;
                break;
            }
            if (y == b) return false; // b already taken by another local variable
        }
        if (bound) continue;
        if (used_[b]) return false;
        local_.emplace_back(a, b);
    }
    if (commit)
        for (auto [x, y] : local_) {
            assign_[x] = y;
            used_[y]   = 1;
        }
    return true;
}

bool VariableSearch::aggregate_matches(const Source& src, const Candidate& c) const {
    const int fresh = static_cast<int>(svars_.size());
    for (int v : src.distinct_vars)
        if (assign_[v] < 0) return true; // undecided: optimistic
    Literal renamed = *src.lit;
    for_each_term(renamed, [&](Term& t) {
        if (!t.is_variable()) return;
        int a = assign_[index_of(rvars_, t.name)];
        t.name = a == fresh ? std::string(1, kMask) + t.name : svars_[a];
    });
    resort_aggregates(renamed);
    if (reorder_) renamed = order_literal(std::move(renamed));
    return renamed == *slits_[c.target];
}

bool VariableSearch::matchable(const Source& src) {
    for (const auto& c : src.cands) {
        if (src.aggregate) {
            if (aggregate_matches(src, c)) return true;
        } else if (unify(c.vars, sseq_[c.target], false)) {
            return true;
        }
    }
    return false;
}

std::size_t VariableSearch::bound() {
    std::size_t n = 0;
    for (const auto& src : lits_)
        if (matchable(src)) ++n;
    return n;
}

std::size_t VariableSearch::optimistic_bound() {
    std::fill(assign_.begin(), assign_.end(), -1);
    std::fill(used_.begin(), used_.end(), 0);
    return bound();
}

void VariableSearch::greedy() {
    std::fill(assign_.begin(), assign_.end(), -1);
    std::fill(used_.begin(), used_.end(), 0);
    std::vector<std::size_t> order(lits_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lits_[a].cands.size() < lits_[b].cands.size(); });
    for (auto i : order) {
        const auto& src = lits_[i];
        if (src.aggregate) continue;
        for (const auto& c : src.cands)
            if (unify(c.vars, sseq_[c.target], true)) break;
    }
    const int fresh = static_cast<int>(svars_.size());
    for (auto& a : assign_)
        if (a < 0) a = fresh;
    best_        = bound();
    best_assign_ = assign_;
}

void VariableSearch::dfs(std::size_t depth) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
        aborted_ = true;
        return;
    }
    std::size_t b = bound();
    if (b < best_ || (found_ && b <= best_)) return;
    if (depth == rvars_.size()) {
        best_        = b;
        best_assign_ = assign_;
        found_       = true;
        return;
    }
    const int v = static_cast<int>(depth);
    for (int t = 0; t < static_cast<int>(svars_.size()); ++t) {
        if (used_[t]) continue;
        assign_[v] = t;
        used_[t]   = 1;
        dfs(depth + 1);
        used_[t]   = 0;
        assign_[v] = -1;
        if (aborted_) return;
    }
    assign_[v] = static_cast<int>(svars_.size());
    dfs(depth + 1);
    assign_[v] = -1;
}

RenamingMap VariableSearch::make_map(const std::vector<int>& assign) const {
    RenamingMap map;
    map.kind = RenamingKind::variable;
    std::unordered_set<std::string> taken(svars_.begin(), svars_.end());
    const int                       fresh = static_cast<int>(svars_.size());
    for (std::size_t i = 0; i < rvars_.size(); ++i) {
        RenamingEntry e;
        e.source = rvars_[i];
        if (assign[i] >= 0 && assign[i] < fresh) {
            e.target = svars_[assign[i]];
        } else {
            std::string name = rvars_[i];
            for (int k = 1; taken.contains(name); ++k) name = rvars_[i] + "_" + std::to_string(k);
            taken.insert(name);
            e.target = name;
            e.fresh  = true;
        }
        map.entries.push_back(std::move(e));
    }
    return map;
}

VariableRenamingResult VariableSearch::solve(std::uint64_t budget) {
    budget_  = budget;
    nodes_   = 0;
    aborted_ = false;
    found_   = false;
    greedy();
    std::fill(assign_.begin(), assign_.end(), -1);
    std::fill(used_.begin(), used_.end(), 0);
    dfs(0);
    VariableRenamingResult out;
    out.map         = make_map(best_assign_);
    out.score       = {best_, total_ == 0 ? 1 : total_};
    out.approximate = aborted_;
    out.nodes       = nodes_;
    return out;
}

} // namespace asplag::detail
