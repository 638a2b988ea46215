#pragma once

#include <asplag/similarity.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace asplag::detail {

void resort_aggregates(Literal& l);
/// Re-sorts aggregate contents and the three literal sets after a renaming.
void normalize_deep(Rule& r);

struct LiteralShape {
    std::string              shape; // rendering with every variable masked
    std::vector<std::string> vars;  // variable names in traversal order
};
[[nodiscard]] LiteralShape shape_of(const Literal& l);
/// Renaming-invariant key for aggregate literals (masked, contents re-sorted).
[[nodiscard]] std::string aggregate_key(const Literal& l);

/// Branch-and-bound search over injective maps vars(r) -> vars(s) + fresh.
/// Both rules must already be in the canonical form the scoring asks for.
class VariableSearch {
public:
    VariableSearch(const Rule& r, const Rule& s, bool reorder);

    [[nodiscard]] std::size_t total() const noexcept { return total_; }
    /// Literals of r that have a structurally compatible partner in s.
    [[nodiscard]] std::size_t optimistic_bound();

    [[nodiscard]] VariableRenamingResult solve(std::uint64_t budget);

private:
    struct Candidate {
        int              target = 0; // index into s literals
        std::vector<int> vars;       // r variable indices in traversal order of this variant
    };
    struct Source {
        const Literal*         lit         = nullptr;
        bool                   aggregate   = false;
        std::vector<int>       distinct_vars;
        std::vector<Candidate> cands;
    };

    bool        unify(const std::vector<int>& rv, const std::vector<int>& sv, bool commit);
    bool        aggregate_matches(const Source& src, const Candidate& c) const;
    bool        matchable(const Source& src);
    std::size_t bound();
    void        greedy();
    void        dfs(std::size_t depth);
    [[nodiscard]] RenamingMap make_map(const std::vector<int>& assign) const;

    std::vector<std::string>      rvars_, svars_;
    std::vector<Source>           lits_;
    std::vector<const Literal*>   slits_;
    std::vector<std::vector<int>> sseq_;
    std::vector<int>              assign_;
    std::vector<char>             used_;
    std::vector<std::pair<int, int>> local_;
    bool                          reorder_;
    std::size_t                   total_ = 0;

    std::size_t      best_  = 0;
    bool             found_ = false;
    std::vector<int> best_assign_;
    std::uint64_t    nodes_   = 0;
    std::uint64_t    budget_  = 0;
    bool             aborted_ = false;
};

} // namespace asplag::detail
