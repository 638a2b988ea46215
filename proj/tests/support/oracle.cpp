#include "oracle.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace asplag;

namespace oracle {
namespace {

std::vector<std::string> variables_of(const Rule& r) {
    std::set<std::string> out;
    for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
        for (const auto& l : *set)
            for_each_term(l, [&](const Term& t) {
                if (t.kind == TermKind::variable) out.insert(t.name);
            });
    return {out.begin(), out.end()};
}

Rule substitute(const Rule& r, const std::map<std::string, std::string>& theta) {
    Rule out = r;
    for (auto* set : {&out.head, &out.pos_body, &out.neg_body}) {
        for (auto& l : *set)
            for_each_term(l, [&](Term& t) {
                if (t.kind != TermKind::variable) return;
                if (auto it = theta.find(t.name); it != theta.end()) t.name = it->second;
            });
    }
    // rebuild through the parser so every set and aggregate is re-sorted
    return parse_rule(render_rule(out));
}

Rule prepare(Rule r, bool canonise, bool order) {
    if (canonise) r = canonise_builtins(std::move(r));
    if (order) r = order_commutative_args(std::move(r));
    return r;
}

std::size_t hits(const Rule& r, const Rule& s) {
    std::size_t n = 0;
    auto count = [&](const std::vector<Literal>& a, const std::vector<Literal>& b) {
        for (const auto& l : a)
            if (std::find(b.begin(), b.end(), l) != b.end()) ++n;
    };
    count(r.head, s.head);
    count(r.pos_body, s.pos_body);
    count(r.neg_body, s.neg_body);
    return n;
}

struct Sym {
    std::string name;
    std::size_t arity;
    auto operator<=>(const Sym&) const = default;
};

std::set<Sym> symbols_of(const Program& p) {
    std::set<Sym> out;
    for (const auto& r : p.rules)
        for (const auto* set : {&r.head, &r.pos_body, &r.neg_body})
            for (const auto& l : *set)
                for_each_atom(l, [&](const Literal& a) {
                    if (!a.has_fixed_predicate()) out.insert({a.predicate, a.arity()});
                });
    return out;
}

Rule rename_preds(const Rule& r, const std::map<Sym, std::string>& theta) {
    Rule out = r;
    for (auto* set : {&out.head, &out.pos_body, &out.neg_body})
        for (auto& l : *set)
            for_each_atom(l, [&](Literal& a) {
                if (a.has_fixed_predicate()) return;
                if (auto it = theta.find({a.predicate, a.arity()}); it != theta.end()) a.predicate = it->second;
            });
    return parse_rule(render_rule(out));
}

} // namespace

VariableOracle brute_variable_renaming(const Rule& r0, const Rule& s0, bool canonise, bool order) {
    const Rule r = prepare(r0, canonise, order);
    const Rule s = prepare(s0, canonise, order);
    const auto rv = variables_of(r);
    const auto sv = variables_of(s);

    VariableOracle out;
    out.total = r.literal_count();
    bool                               any = false;
    std::map<std::string, std::string> theta;
    MapKey                             key;
    std::vector<bool>                  used(sv.size(), false);
    std::size_t                        fresh = 0;

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == rv.size()) {
            Rule        image = prepare(substitute(r, theta), false, order);
            std::size_t n     = hits(image, s);
            if (!any || n > out.best) {
                any       = true;
                out.best  = n;
                out.least = key;
            }
            return;
        }
        for (std::size_t j = 0; j < sv.size(); ++j) {
            if (used[j]) continue;
            used[j]      = true;
            theta[rv[i]] = sv[j];
            key.push_back({rv[i], {0, sv[j]}});
            self(self, i + 1);
            key.pop_back();
            used[j] = false;
        }
        theta[rv[i]] = "Fresh_" + std::to_string(fresh++);
        key.push_back({rv[i], {1, ""}});
        self(self, i + 1);
        key.pop_back();
        --fresh;
        theta.erase(rv[i]);
    };
    rec(rec, 0);
    return out;
}

PredicateOracle brute_predicate_renaming(const Program& p, const Program& q, bool canonise, bool order) {
    const auto ps = symbols_of(p);
    const auto qs = symbols_of(q);
    const std::vector<Sym> sources(ps.begin(), ps.end());
    const std::vector<Sym> targets(qs.begin(), qs.end());

    PredicateOracle out;
    if (p.rules.empty()) return out;
    bool                       any = false;
    std::map<Sym, std::string> theta;
    MapKey                     key;
    std::vector<bool>          used(targets.size(), false);
    std::map<std::vector<std::string>, Rational> seen;

    auto score = [&]() {
        Rational sum(0);
        for (const auto& r : p.rules) {
            Rule        renamed = rename_preds(r, theta);
            std::size_t best    = 0;
            for (const auto& s : q.rules) best = std::max(best, brute_variable_renaming(renamed, s, canonise, order).best);
            sum += Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(renamed.literal_count()));
        }
        return sum / Rational(static_cast<std::int64_t>(p.rules.size()));
    };

    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == sources.size()) {
            Rational v = score();
            if (!any || out.best < v) {
                any       = true;
                out.best  = v;
                out.least = key;
            }
            return;
        }
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (used[j] || targets[j].arity != sources[i].arity) continue;
            used[j]           = true;
            theta[sources[i]] = targets[j].name;
            key.push_back({sources[i].name, {0, targets[j].name}});
            self(self, i + 1);
            key.pop_back();
            used[j] = false;
        }
        theta[sources[i]] = "fresh_" + std::to_string(i);
        key.push_back({sources[i].name, {1, ""}});
        self(self, i + 1);
        key.pop_back();
        theta.erase(sources[i]);
    };
    rec(rec, 0);
    return out;
}

MapKey key_of(const RenamingMap& map, const std::vector<std::string>& space) {
    MapKey out;
    for (const auto& e : map.entries) {
        bool real = std::find(space.begin(), space.end(), e.target) != space.end();
        out.push_back({e.source, real ? std::pair{0, e.target} : std::pair{1, std::string()}});
    }
    return out;
}

std::vector<std::string> predicate_names(const Program& q) {
    std::set<std::string> names;
    for (const auto& s : symbols_of(q)) names.insert(s.name);
    return {names.begin(), names.end()};
}

std::size_t lcs_dp(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    return t[a.size()][b.size()];
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(ASPLAG_TEST_DATA_DIR) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace oracle
