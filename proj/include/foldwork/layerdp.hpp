#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "foldwork/foldcore.hpp"
#include "foldwork/rational.hpp"
#include "foldwork/treedecomp.hpp"

namespace foldwork {

/// Facet ids of one cell, top to bottom.
using Layering = std::vector<int>;
/// One Layering per cell, indexed by cell id.
using GlobalLayering = std::vector<Layering>;

/// The four conditions at one arrangement edge: spanning layers keep their
/// order across the edge, no spanning layer sits inside a folded pair, folded
/// pairs in one cell nest or are disjoint, and (when `labeled`) each labeled
/// pair is ordered by its mountain/valley label. `left`/`right` are the
/// layerings of the edge's left and right cells.
bool check_edge(const ArrangementEdge& edge, const Layering& left, const Layering& right, bool labeled);

/// The part of check_edge that reads only `cell`'s layering: taco-tortilla,
/// taco-taco and labels for the folded pairs in that cell.
bool check_edge_side(const ArrangementEdge& edge, int cell, const Layering& layers, bool labeled);
/// The edge's spanning layers in the order `layers` stacks them. check_edge
/// holds iff both sides pass check_edge_side and their spanning orders agree.
std::vector<int> spanning_order(const ArrangementEdge& edge, const Layering& layers);

enum class DpMode { Decide, Count, Witness };

struct DpOptions {
    DpMode mode = DpMode::Count;
    int ply_cap = 8;
    int threads = 1;
};

struct DpResult {
    bool foldable = false;
    BigInt count = 0;  // exact in Count and Witness modes, 0/1 in Decide mode
    std::optional<GlobalLayering> witness;
    int width = -1;
    std::size_t max_bag_states = 0;  // largest table over all nodes
};

/// Throws DecompositionInvalid when ntd does not decompose the cell
/// adjacency graph, BudgetExceeded when some cell exceeds the ply cap.
DpResult run_dp(const FoldedArrangement& fa, const NiceTreeDecomposition& ntd, const DpOptions& options = {});

/// Decomposes the cell adjacency graph and runs the dynamic program.
DpResult run_dp(const FoldedArrangement& fa, const DpOptions& options = {});

/// Witness from a Witness-mode result; throws NoWitness when unfoldable.
GlobalLayering extract_witness(const DpResult& result);

}  // namespace foldwork
