#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "foldwork/flaps.hpp"
#include "foldwork/ncl.hpp"

namespace foldwork {

// Integer flap: hinge from a to a + (-d.y, d.x); side 1 lies along d, |d| = 5.
struct GridFlap {
    int ax = 0, ay = 0, dx = 0, dy = 0;

    Hinge hinge() const;
    /// Same hinge traversed the other way, so the two sides swap.
    GridFlap reversed() const;
    friend bool operator==(const GridFlap&, const GridFlap&) = default;
};

enum class GadgetKind {
    Edge,       // straight chain of k flaps
    And,        // blue port S, red ports W and E
    AndCorner,  // blue port W, red ports E and N
    Or,         // blue ports W, E and S
    Turn,       // chain entering eastward, leaving northward
    Crossover,  // eastward chain crossing a northward chain
};

/// A chain of flaps leaving the gadget. For vertex gadgets the first flap is
/// the central one and side 1 of every flap faces away from the vertex;
/// elsewhere side 1 faces the direction of travel.
struct GadgetPort {
    std::string name;
    NclColor color = NclColor::Blue;
    std::vector<int> chain;
    int out_side = 1;  // side of chain.front() that faces out of the gadget
};

struct GadgetBlueprint {
    GadgetKind kind = GadgetKind::Edge;
    std::vector<GridFlap> flaps;
    std::vector<GadgetPort> ports;
    std::vector<std::vector<int>> chains;  // each in travel order

    FlapInstance instance() const;
};

/// k is only read for Edge.
GadgetBlueprint make_gadget(GadgetKind kind, int k = 1);
const char* gadget_name(GadgetKind kind);
GadgetKind parse_gadget_kind(const std::string& s);

/// Bit p set when port p's first flap faces out of the gadget; for a vertex
/// gadget that is the edge pointing into the vertex.
std::set<unsigned> port_patterns(const GadgetBlueprint& bp, const FlapBudget& budget = {});

/// Each chain reads 0...01...1 along travel order.
bool chains_monotone(const std::vector<std::vector<int>>& chains, const FlapState& st);

struct GridPoint {
    int x = 0, y = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// Hand-drawn grid embedding of an NCL graph. Paths run from edge.u to
/// edge.v through axis-parallel segments; two paths may share a grid point
/// only where both pass straight through at right angles.
struct GridRouting {
    int scale = 30;  // flap units per grid step
    std::vector<GridPoint> positions;
    std::vector<std::vector<GridPoint>> paths;
};

struct CompiledNcl {
    NclGraph graph;
    FlapInstance inst;
    /// Per NCL edge, flaps from the u end to the v end; side 1 faces v.
    std::vector<std::vector<int>> edge_flaps;
};

/// Range of red-edge flap counts k that compile_ncl accepts.
std::pair<int, int> red_length_range(const NclGraph& g, const GridRouting& r);

/// Throws RoutingInvalid.
CompiledNcl compile_ncl(const NclGraph& g, const GridRouting& r, int k);

struct Canonical {
    FlapState state;
    Orientation orientation = 0;
};

/// Two-tailed edge chains get their arrowhead at v (all flaps to side 0);
/// every other flap keeps its side. Throws InvalidInput when some edge chain
/// is not of the form 0...01...1.
Canonical canonicalize(const CompiledNcl& c, const FlapState& st);

/// The canonical state for an orientation. Throws NoWitness when the
/// orientation does not satisfy the graph.
FlapState encode(const CompiledNcl& c, Orientation o);

struct CorrespondenceReport {
    std::size_t states = 0;        // valid flap states
    std::size_t canonical = 0;     // of those, canonical
    std::size_t orientations = 0;  // satisfying NCL orientations
    std::size_t flap_components = 0, ncl_components = 0;
    bool monotone = true;          // every edge chain reads 0...01...1
    bool bijection = false;        // canonical states <-> satisfying orientations
    bool components_match = false; // flip components <-> NCL move components

    bool ok() const { return monotone && bijection && components_match; }
};

/// Exhaustive check of a compiled instance against its graph.
CorrespondenceReport verify_compiled(const CompiledNcl& c, const FlapBudget& budget = {400, 2'000'000});

}  // namespace foldwork
