#pragma once

// Exhaustive reference implementations used to check the search engines.

#include <asplag/rational.hpp>
#include <asplag/similarity.hpp>
#include <asplag/syntax.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// A map as a comparable key: (source, (0, target)) or (source, (1, "")) for a fresh target,
// so fresh targets sort after every real one.
using MapKey = std::vector<std::pair<std::string, std::pair<int, std::string>>>;

struct VariableOracle {
    std::size_t best  = 0;
    std::size_t total = 0;
    MapKey      least; // least map reaching `best`
};

/// Tries every injective map vars(r) -> vars(s) + fresh.
VariableOracle brute_variable_renaming(const asplag::Rule& r, const asplag::Rule& s, bool canonise, bool order);

struct PredicateOracle {
    asplag::Rational best;
    MapKey           least;
};

/// Tries every arity-preserving injective predicate map preds(P) -> preds(Q) + fresh,
/// scoring each with brute_variable_renaming.
PredicateOracle brute_predicate_renaming(const asplag::Program& p, const asplag::Program& q, bool canonise, bool order);

/// Keys an engine map; targets outside `space` count as fresh.
MapKey key_of(const asplag::RenamingMap& map, const std::vector<std::string>& space);

/// Symbol names of the second program that a predicate map may target.
std::vector<std::string> predicate_names(const asplag::Program& q);

/// Quadratic dynamic-programming LCS over bytes.
std::size_t lcs_dp(const std::string& a, const std::string& b);

/// Program text of a fixture under tests/data.
std::string read_fixture(const std::string& name);

} // namespace oracle
