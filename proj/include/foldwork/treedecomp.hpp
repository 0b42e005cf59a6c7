#pragma once

#include <vector>

#include "foldwork/graph.hpp"

namespace foldwork {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // each sorted ascending
    std::vector<int> parent;             // -1 at the root
    int root = 0;

    int size() const { return static_cast<int>(bags.size()); }
    int width() const;
    std::vector<std::vector<int>> children() const;
};

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    std::vector<int> bag;  // sorted
    int vertex = -1;       // Leaf, Introduce, Forget
    std::vector<int> children;
};

/// Every Leaf holds one vertex; the root bag is empty.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int size() const { return static_cast<int>(nodes.size()); }
    int width() const;
    /// Children before parents.
    std::vector<int> postorder() const;
    TreeDecomposition plain() const;
};

/// Decomposition from an elimination ordering: the bag of v is v plus its
/// later neighbors in the fill graph.
TreeDecomposition from_elimination_order(const Graph& g, const std::vector<int>& order);

/// Greedy min-fill ordering, ties to the lowest vertex id.
std::vector<int> min_fill_order(const Graph& g);
/// Optimal ordering by dynamic programming over vertex subsets.
std::vector<int> exact_order(const Graph& g);
int exact_treewidth(const Graph& g);

constexpr int kExactLimit = 12;

/// Exact for graphs with at most kExactLimit vertices, min-fill otherwise.
TreeDecomposition decompose(const Graph& g);

NiceTreeDecomposition make_nice(const TreeDecomposition& td);

bool validate(const TreeDecomposition& td, const Graph& g);
/// Decomposition axioms plus the node-shape rules of a nice decomposition.
bool validate(const NiceTreeDecomposition& ntd, const Graph& g);

}  // namespace foldwork
