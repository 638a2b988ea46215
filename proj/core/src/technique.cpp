#include <asplag/technique.hpp>

#include <algorithm>
#include <array>

namespace asplag {
namespace {
constexpr std::array kKindNames{
    std::pair{TechniqueKind::canonise_builtins, std::string_view{"canonise_builtins"}},
    std::pair{TechniqueKind::order_commutative, std::string_view{"order_commutative"}},
    std::pair{TechniqueKind::predicate_renaming, std::string_view{"predicate_renaming"}},
    std::pair{TechniqueKind::variable_renaming, std::string_view{"variable_renaming"}},
};

using K = TechniqueKind;
const std::vector<K> kTau2{K::variable_renaming};
const std::vector<K> kTau3{K::canonise_builtins, K::order_commutative, K::variable_renaming};
const std::vector<K> kTau4{K::canonise_builtins, K::order_commutative, K::predicate_renaming, K::variable_renaming};
} // namespace

std::string_view kind_name(TechniqueKind k) noexcept {
    for (auto [kind, name] : kKindNames)
        if (kind == k) return name;
    return "?";
}

std::optional<TechniqueKind> kind_from_name(std::string_view name) noexcept {
    for (auto [kind, n] : kKindNames)
        if (n == name) return kind;
    return std::nullopt;
}

const RenamingEntry* RenamingMap::find(std::string_view source, std::size_t arity) const noexcept {
    auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{source, arity}, [](const RenamingEntry& e, const auto& key) {
        return std::pair<std::string_view, std::size_t>{e.source, e.arity} < key;
    });
    if (it != entries.end() && it->source == source && it->arity == arity) return &*it;
    return nullptr;
}

bool RenamingMap::is_identity() const noexcept {
    return std::all_of(entries.begin(), entries.end(), [](const RenamingEntry& e) { return e.source == e.target; });
}

std::string RenamingMap::describe() const {
    std::string out;
    for (const auto& e : entries) {
        if (e.source == e.target) continue;
        if (!out.empty()) out += ", ";
        out += e.source;
        if (kind == RenamingKind::predicate) out += "/" + std::to_string(e.arity);
        out += "->" + e.target;
        if (e.fresh) out += " (fresh)";
    }
    return out;
}

Technique::Technique(std::vector<TechniqueKind> chain) : chain_(std::move(chain)) {
    for (std::size_t i = 1; i < chain_.size(); ++i) {
        if (chain_[i] == chain_[i - 1])
            throw TechniqueError("technique kind '" + std::string(kind_name(chain_[i])) + "' repeated");
        if (chain_[i] < chain_[i - 1])
            throw TechniqueError("technique kind '" + std::string(kind_name(chain_[i])) + "' must precede '" +
                                 std::string(kind_name(chain_[i - 1])) +
                                 "' (pipeline order: canonise_builtins, order_commutative, predicate_renaming, "
                                 "variable_renaming)");
    }
}

bool Technique::contains(TechniqueKind k) const noexcept {
    return std::find(chain_.begin(), chain_.end(), k) != chain_.end();
}

std::string Technique::spec() const {
    if (chain_.empty()) return "tau1";
    if (chain_ == kTau2) return "tau2";
    if (chain_ == kTau3) return "tau3";
    if (chain_ == kTau4) return "tau4";
    std::string out = "custom:";
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        if (i) out += ',';
        out += kind_name(chain_[i]);
    }
    return out;
}

Technique Technique::canonical_part() const {
    std::vector<TechniqueKind> kinds;
    for (auto k : chain_)
        if (k == K::canonise_builtins || k == K::order_commutative) kinds.push_back(k);
    return Technique(std::move(kinds));
}

Technique Technique::with_context(PredicateContext ctx) const {
    Technique t = *this;
    t.context_  = std::make_shared<const PredicateContext>(std::move(ctx));
    return t;
}

Technique compose(const Technique& outer, const Technique& inner) {
    std::vector<TechniqueKind> merged = inner.chain();
    for (auto k : outer.chain()) {
        if (inner.contains(k)) throw TechniqueError("cannot compose: kind '" + std::string(kind_name(k)) + "' repeated");
        merged.push_back(k);
    }
    std::sort(merged.begin(), merged.end());
    Technique result(std::move(merged));
    const PredicateContext* a = outer.context();
    const PredicateContext* b = inner.context();
    if (a && b && (a->first_id != b->first_id || a->second_id != b->second_id))
        throw TechniqueError("cannot compose techniques bound to different program pairs");
    if (a) return result.with_context(*a);
    if (b) return result.with_context(*b);
    return result;
}

Technique technique_from_spec(std::string_view spec) {
    if (spec == "tau1") return Technique();
    if (spec == "tau2") return Technique(kTau2);
    if (spec == "tau3") return Technique(kTau3);
    if (spec == "tau4") return Technique(kTau4);
    constexpr std::string_view prefix = "custom:";
    if (!spec.starts_with(prefix)) throw TechniqueError("unknown technique '" + std::string(spec) + "' (expected tau1..tau4 or custom:<kinds>)");
    spec.remove_prefix(prefix.size());
    std::vector<TechniqueKind> kinds;
    while (!spec.empty()) {
        auto comma = spec.find(',');
        auto name  = spec.substr(0, comma);
        if (name != "identity") {
            auto k = kind_from_name(name);
            if (!k) throw TechniqueError("unknown technique kind '" + std::string(name) + "'");
            kinds.push_back(*k);
        }
        if (comma == std::string_view::npos) break;
        spec.remove_prefix(comma + 1);
    }
    return Technique(std::move(kinds));
}

namespace techniques {
Technique identity() { return Technique(); }
Technique variables() { return Technique(kTau2); }
Technique canonical() { return Technique(kTau3); }
Technique full() { return Technique(kTau4); }
} // namespace techniques

} // namespace asplag
