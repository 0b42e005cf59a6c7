#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "foldwork/rational.hpp"

namespace foldwork {

enum class NclColor { Red, Blue };

inline int ncl_weight(NclColor c) { return c == NclColor::Blue ? 2 : 1; }

struct NclEdge {
    int u = 0;
    int v = 0;
    NclColor color = NclColor::Red;
};

/// Constraint graph. Parallel edges are allowed, loops are not. Every vertex
/// has degree 3 with one or three blue edges, except terminals: degree-1
/// free ends of stub edges that carry no constraint.
struct NclGraph {
    int num_vertices = 0;
    std::vector<NclEdge> edges;
    std::vector<int> terminals;  // sorted

    int num_edges() const { return static_cast<int>(edges.size()); }
    bool is_terminal(int v) const;
    /// Throws InvalidInput when the degree or color rules fail.
    void check() const;
};

/// Bit e clear: edge e points u -> v. Bit e set: v -> u.
using Orientation = std::uint64_t;

int head(const NclGraph& g, Orientation o, int e);
int in_weight(const NclGraph& g, Orientation o, int v);

/// Incoming weight at least 2 at every non-terminal vertex.
bool validate(const NclGraph& g, Orientation o);

/// Satisfying orientations one edge reversal away, by increasing edge id.
std::vector<Orientation> moves(const NclGraph& g, Orientation o);

struct NclBudget {
    int max_edges = 24;
    std::size_t max_states = std::size_t{1} << 22;
};

/// Every satisfying orientation in increasing order. Exhaustive over 2^m.
std::vector<Orientation> satisfying_orientations(const NclGraph& g, const NclBudget& budget = {});
std::uint64_t count_orientations(const NclGraph& g, const NclBudget& budget = {});

/// BFS from s; s and t must both be satisfying for a true answer.
bool reachable(const NclGraph& g, Orientation s, Orientation t, const NclBudget& budget = {});
/// Connected components of the move graph, each sorted, ordered by their
/// smallest orientation.
std::vector<std::vector<Orientation>> components(const NclGraph& g, const NclBudget& budget = {});
/// True when the satisfying orientations form one component (or none exist).
bool globally_connected(const NclGraph& g, const NclBudget& budget = {});

/// Left-by-right matrix of edge multiplicities of a bipartite multigraph.
using Biadjacency = std::vector<std::vector<int>>;

/// Perfect matchings counted with multiplicity (the permanent).
BigInt count_matchings(const Biadjacency& b);

/// Left vertices become all-blue vertices 0..n-1; right vertex j becomes the
/// red triangle n+3j, n+3j+1, n+3j+2, its k-th incident edge in row-major
/// order attached to corner k. Blue edges come first in row-major order,
/// then each triangle's red edges.
NclGraph matchings_to_ncl(const Biadjacency& b);

/// Closed instance with `or_vertices` all-blue and `and_vertices`
/// blue-red-red vertices, stubs paired uniformly at random (no loops).
NclGraph random_ncl(int or_vertices, int and_vertices, std::mt19937& rng);

}  // namespace foldwork
