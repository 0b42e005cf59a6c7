#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "foldwork/geometry.hpp"

namespace foldwork {

/// Hinge a -> b; the flap square lies left of it on side 0, right on side 1.
struct Hinge {
    Point a, b;
};

struct FlapInstance {
    Rat side = 5;
    std::vector<Hinge> flaps;

    int size() const { return static_cast<int>(flaps.size()); }
    /// Hinge lengths equal `side`; hinges meet at most in shared endpoints.
    /// Throws InvalidInput.
    void check() const;
};

/// Order bit of an overlapping pair, i < j.
struct PairOrder {
    int i = 0, j = 0;
    bool i_above = false;

    friend bool operator==(const PairOrder&, const PairOrder&) = default;
};

struct FlapState {
    std::vector<int> sides;         // 0 or 1 per flap
    std::vector<PairOrder> orders;  // sorted by (i, j)

    /// Side bits, then order bits ('a' when i is above j).
    std::string key() const;
    friend bool operator==(const FlapState&, const FlapState&) = default;
};

/// Closed square of flap f on the given side, counterclockwise.
Polygon placed_square(const FlapInstance& inst, int f, int side);

/// Hinge rule, per-point acyclicity, and the order list matching exactly the
/// pairs that overlap in positive area.
bool validate_state(const FlapInstance& inst, const FlapState& st);

struct FlapBudget {
    int max_flaps = 20;
    std::size_t max_states = 1'000'000;
};

/// All valid states, sides in lexicographic order, deterministic.
std::vector<FlapState> enumerate_states(const FlapInstance& inst, const FlapBudget& budget = {});
std::size_t count_states(const FlapInstance& inst, const FlapBudget& budget = {});

/// Valid states with the given sides. Pairs whose flaps both keep their side
/// in `hint` keep its order bit when possible.
std::vector<FlapState> completions(const FlapInstance& inst, const std::vector<int>& sides,
                                   const FlapState* hint = nullptr);

/// Valid states that differ from st only in one flap's side and/or the order
/// bits of pairs containing that flap. Deduplicated, st excluded.
std::vector<FlapState> moves(const FlapInstance& inst, const FlapState& st);

bool reachable(const FlapInstance& inst, const FlapState& s, const FlapState& t, const FlapBudget& budget = {});
/// Components of the flip graph over all valid states, as indices into
/// enumerate_states order; each sorted, ordered by smallest index.
std::vector<std::vector<int>> flap_components(const FlapInstance& inst, const FlapBudget& budget = {});
bool globally_connected(const FlapInstance& inst, const FlapBudget& budget = {});

/// States written as one letter per flap, 'L' for side 0 and 'R' for side 1.
std::string side_string(const FlapState& st);

}  // namespace foldwork
