#pragma once

#include <cstdint>
#include <optional>

#include "foldwork/foldcore.hpp"
#include "foldwork/layerdp.hpp"
#include "foldwork/rational.hpp"

namespace foldwork {

struct OracleBudget {
    std::uint64_t max_states = 1'000'000;
};

/// Product of the per-cell factorials, saturating at UINT64_MAX.
std::uint64_t layering_space(const FoldedArrangement& fa);

/// Exhaustive search over global layerings (cells by id, each cell's
/// permutations in lexicographic order), cutting a prefix once an edge
/// between two assigned cells fails. Throws BudgetExceeded after
/// `max_states` partial layerings.
bool oracle_decide(const FoldedArrangement& fa, const OracleBudget& budget = {});
/// First layering in search order, if any.
std::optional<GlobalLayering> oracle_witness(const FoldedArrangement& fa, const OracleBudget& budget = {});
BigInt oracle_count(const FoldedArrangement& fa, const OracleBudget& budget = {});
bool oracle_check(const FoldedArrangement& fa, const GlobalLayering& layering);

}  // namespace foldwork
