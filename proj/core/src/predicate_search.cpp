#include <asplag/similarity.hpp>

#include "detail.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

namespace asplag {
namespace {

constexpr char kMask = '\x01';

struct Symbol {
    std::string name;
    std::size_t arity = 0;

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

void collect_symbols(const Rule& r, std::set<Symbol>& out) {
    for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
        for (const auto& l : *set)
            for_each_atom(l, [&](const Literal& a) {
                if (!a.has_fixed_predicate()) out.insert({a.predicate, a.arity()});
            });
}

int symbol_index(const std::vector<Symbol>& syms, const Literal& l) {
    auto it = std::lower_bound(syms.begin(), syms.end(), Symbol{l.predicate, l.arity()});
    return static_cast<int>(it - syms.begin());
}

// Literal summary used by the optimistic bound: a top-level atom whose predicate
// may still be renamed is compared with its predicate masked.
struct LitInfo {
    int         compartment = 0;
    int         symbol      = -1; // -1: fixed predicate or aggregate
    bool        aggregate   = false;
    std::string shape;
};

std::vector<LitInfo> summarize(const Rule& r, const std::vector<Symbol>& syms) {
    std::vector<LitInfo> out;
    const std::vector<Literal>* sets[3] = {&r.head, &r.pos_body, &r.neg_body};
    for (int c = 0; c < 3; ++c)
        for (const auto& l : *sets[c]) {
            LitInfo info;
            info.compartment = c;
            if (l.is_aggregate()) {
                info.aggregate = true;
            } else {
                Literal masked = l;
                if (!l.has_fixed_predicate()) {
                    info.symbol      = symbol_index(syms, l);
                    masked.predicate = std::string(1, kMask);
                }
                info.shape = detail::shape_of(masked).shape;
            }
            out.push_back(std::move(info));
        }
    return out;
}

class PredicateSearch {
public:
    PredicateSearch(const Program& p, const Program& q, const Technique& scoring, const SearchOptions& options)
        : options_(options), reorder_(scoring.contains(TechniqueKind::order_commutative)) {
        for (const auto& r : p.rules) prules_.push_back(normalize_for(scoring, r));
        for (const auto& s : q.rules) qrules_.push_back(normalize_for(scoring, s));

        std::set<Symbol> ps, qs;
        for (const auto& r : prules_) collect_symbols(r, ps);
        for (const auto& s : qrules_) collect_symbols(s, qs);
        sources_.assign(ps.begin(), ps.end());
        targets_.assign(qs.begin(), qs.end());
        fresh_ = static_cast<int>(targets_.size());

        std::unordered_set<std::string> taken;
        for (const auto& s : targets_) taken.insert(s.name);
        std::unordered_set<std::string> qnames = taken;
        for (const auto& s : sources_) taken.insert(s.name);
        for (const auto& s : sources_) {
            if (!qnames.contains(s.name)) {
                fresh_names_.push_back({s.name, false});
                continue;
            }
            std::string name;
            for (int k = 1;; ++k) {
                name = s.name + "_" + std::to_string(k);
                if (!taken.contains(name)) break;
            }
            taken.insert(name);
            fresh_names_.push_back({name, true});
        }

        options_of_.resize(sources_.size());
        for (std::size_t i = 0; i < sources_.size(); ++i)
            for (std::size_t j = 0; j < targets_.size(); ++j)
                if (targets_[j].arity == sources_[i].arity) options_of_[i].push_back(static_cast<int>(j));

        for (const auto& r : prules_) {
            std::set<Symbol> syms;
            collect_symbols(r, syms);
            std::vector<int> idx;
            for (const auto& s : syms)
                idx.push_back(static_cast<int>(std::lower_bound(sources_.begin(), sources_.end(), s) - sources_.begin()));
            rule_syms_.push_back(std::move(idx));
            psum_.push_back(summarize(r, sources_));
        }
        for (const auto& s : qrules_) qsum_.push_back(summarize(s, targets_));
        memo_.resize(prules_.size());
    }

    PredicateRenamingResult run() {
        PredicateRenamingResult out;
        out.map.kind = RenamingKind::predicate;
        if (prules_.empty()) {
            out.score = Rational(0);
            out.map   = make_map(std::vector<int>{});
            return out;
        }

        bool exhaustive = true;
        std::map<std::size_t, std::size_t> per_arity;
        for (const auto& s : sources_)
            if (++per_arity[s.arity] > options_.exhaustive_arity_limit) exhaustive = false;

        hill_climb();
        if (exhaustive) {
            assign_.assign(sources_.size(), -1);
            used_.assign(targets_.size(), 0);
            found_ = false;
            dfs(0);
        }
        out.approximate = !exhaustive || aborted_ || inexact_;
        out.map         = make_map(best_assign_);
        out.score       = best_ / Rational(static_cast<std::int64_t>(prules_.size()));
        return out;
    }

private:
    // Exact per-rule best σ under the current (complete on this rule) assignment.
    Rational exact(std::size_t ri) {
        std::vector<int> key;
        key.reserve(rule_syms_[ri].size());
        for (int s : rule_syms_[ri]) key.push_back(assign_[s]);
        auto& memo = memo_[ri];
        if (auto it = memo.find(key); it != memo.end()) return it->second;

        RenamingMap map;
        map.kind = RenamingKind::predicate;
        for (std::size_t k = 0; k < key.size(); ++k) {
            const auto& src = sources_[rule_syms_[ri][k]];
            map.entries.push_back({src.name, src.arity, target_name(rule_syms_[ri][k], key[k]), false});
        }
        Rule        renamed = rename_predicates(prules_[ri], map);
        std::size_t best    = 0;
        std::size_t total   = renamed.literal_count();
        for (const auto& s : qrules_) {
            detail::VariableSearch search(renamed, s, reorder_);
            if (search.optimistic_bound() <= best) continue;
            auto res = search.solve(options_.variable_node_budget);
            if (res.approximate) inexact_ = true;
            best = std::max(best, res.score.numerator);
            if (best == total) break;
        }
        Rational value = total == 0 ? Rational(1) : Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(total));
        memo.emplace(std::move(key), value);
        return value;
    }

    bool compatible(const LitInfo& l, const LitInfo& m) const {
        if (l.compartment != m.compartment || l.aggregate != m.aggregate) return false;
        if (l.aggregate) return true;
        if ((l.symbol < 0) != (m.symbol < 0) || l.shape != m.shape) return false;
        if (l.symbol < 0) return true;
        if (targets_[m.symbol].arity != sources_[l.symbol].arity) return false;
        int a = assign_[l.symbol];
        if (a < 0) return !used_[m.symbol];
        return a == m.symbol;
    }

    Rational rule_bound(std::size_t ri) {
        bool complete = std::all_of(rule_syms_[ri].begin(), rule_syms_[ri].end(), [&](int s) { return assign_[s] >= 0; });
        if (complete) return exact(ri);
        const auto& lits  = psum_[ri];
        std::size_t best  = 0;
        for (const auto& ms : qsum_) {
            std::size_t n = 0;
            for (const auto& l : lits)
                if (std::any_of(ms.begin(), ms.end(), [&](const LitInfo& m) { return compatible(l, m); })) ++n;
            best = std::max(best, n);
            if (best == lits.size()) break;
        }
        if (lits.empty()) return Rational(1);
        return Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(lits.size()));
    }

    Rational bound() {
        Rational sum(0);
        for (std::size_t ri = 0; ri < prules_.size(); ++ri) sum += rule_bound(ri);
        return sum;
    }

    void dfs(std::size_t depth) {
        if (aborted_) return;
        if (++nodes_ > options_.predicate_node_budget) {
            aborted_ = true;
            return;
        }
        Rational b = bound();
        if (b < best_ || (found_ && b <= best_)) return;
        if (depth == sources_.size()) {
            best_        = b;
            best_assign_ = assign_;
            found_       = true;
            return;
        }
        for (int t : options_of_[depth]) {
            if (used_[t]) continue;
            assign_[depth] = t;
            used_[t]       = 1;
            dfs(depth + 1);
            used_[t]       = 0;
            assign_[depth] = -1;
            if (aborted_) return;
        }
        assign_[depth] = fresh_;
        dfs(depth + 1);
        assign_[depth] = -1;
    }

    Rational evaluate() {
        Rational sum(0);
        for (std::size_t ri = 0; ri < prules_.size(); ++ri) sum += exact(ri);
        return sum;
    }

    void rebuild_used() {
        used_.assign(targets_.size(), 0);
        for (int a : assign_)
            if (a >= 0 && a < fresh_) used_[a] = 1;
    }

    // Deterministic first-improvement local search; seeds the exact search with a lower bound.
    void hill_climb() {
        assign_.assign(sources_.size(), fresh_);
        used_.assign(targets_.size(), 0);
        for (std::size_t i = 0; i < sources_.size(); ++i) {
            auto it = std::lower_bound(targets_.begin(), targets_.end(), sources_[i]);
            if (it != targets_.end() && *it == sources_[i]) {
                int j      = static_cast<int>(it - targets_.begin());
                assign_[i] = j;
                used_[j]   = 1;
            }
        }
        Rational current = evaluate();
        for (std::size_t iter = 0; iter < options_.hill_climb_max_iterations; ++iter) {
            bool improved = false;
            for (std::size_t i = 0; i < sources_.size(); ++i) {
                std::vector<int> moves = options_of_[i];
                moves.push_back(fresh_);
                for (int t : moves) {
                    if (t == assign_[i]) continue;
                    std::vector<int> saved = assign_;
                    if (t != fresh_) {
                        auto holder = std::find(assign_.begin(), assign_.end(), t);
                        if (holder != assign_.end()) *holder = assign_[i];
                    }
                    assign_[i] = t;
                    Rational v = evaluate();
                    if (current < v) {
                        current  = v;
                        improved = true;
                    } else {
                        assign_ = std::move(saved);
                    }
                }
            }
            if (!improved) break;
        }
        rebuild_used();
        best_        = current;
        best_assign_ = assign_;
    }

    std::string target_name(int source, int target) const {
        if (target >= 0 && target < fresh_) return targets_[target].name;
        return fresh_names_[source].first;
    }

    RenamingMap make_map(const std::vector<int>& assign) const {
        RenamingMap map;
        map.kind = RenamingKind::predicate;
        for (std::size_t i = 0; i < assign.size(); ++i) {
            const int t     = assign[i];
            const bool mapped = t >= 0 && t < fresh_;
            map.entries.push_back({sources_[i].name, sources_[i].arity, target_name(static_cast<int>(i), t),
                                   !mapped && fresh_names_[i].second});
        }
        return map;
    }

    SearchOptions options_;
    bool          reorder_;

    std::vector<Rule>                          prules_, qrules_;
    std::vector<Symbol>                        sources_, targets_;
    std::vector<std::pair<std::string, bool>>  fresh_names_; // name used when a source maps to no target
    std::vector<std::vector<int>>              options_of_;
    std::vector<std::vector<int>>              rule_syms_;
    std::vector<std::vector<LitInfo>>          psum_, qsum_;
    std::vector<std::map<std::vector<int>, Rational>> memo_;
    int                                        fresh_ = 0;

    std::vector<int>  assign_;
    std::vector<char> used_;
    std::vector<int>  best_assign_;
    Rational          best_;
    bool              found_   = false;
    bool              aborted_ = false;
    bool              inexact_ = false; // some rule pair hit the variable search budget
    std::uint64_t     nodes_   = 0;
};

} // namespace

PredicateRenamingResult best_predicate_renaming(const Program& p, const Program& q, const Technique& scoring,
                                                const SearchOptions& options) {
    if (scoring.contains(TechniqueKind::predicate_renaming))
        throw TechniqueError("predicate renaming cannot score itself");
    return PredicateSearch(p, q, scoring.canonical_part(), options).run();
}

} // namespace asplag
