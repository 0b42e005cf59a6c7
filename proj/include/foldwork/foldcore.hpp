#pragma once

#include <optional>
#include <vector>

#include "foldwork/errors.hpp"
#include "foldwork/geometry.hpp"
#include "foldwork/graph.hpp"
#include "foldwork/subdivision.hpp"

namespace foldwork {

enum class FoldLabel { Mountain, Valley };

/// A crease is the open segment ab, or the open ray from a through b when
/// `ray` is set (rays are only allowed on unbounded paper).
struct Crease {
    Point a, b;
    bool ray = false;
    std::optional<FoldLabel> label;
};

/// Paper region plus creases. An empty boundary means the paper is the whole
/// plane; this is how single-vertex fans are modeled.
struct CreasePattern {
    Polygon boundary;
    std::vector<Crease> creases;

    bool unbounded() const { return boundary.empty(); }
    bool labeled() const;
    /// Throws InvalidInput describing the first violated condition.
    void validate() const;
    /// Copy with the boundary in counterclockwise order.
    CreasePattern normalized() const;
};

struct FacetSide {
    enum class Kind { Crease, Boundary, Infinity };
    Segment seg;  // the facet lies to the left
    Kind kind = Kind::Boundary;
    int crease = -1;
    int neighbor = -1;  // facet across a crease
};

struct Facet {
    int face = -1;  // face of LocalFlatFolding::paper
    std::vector<FacetSide> sides;
    Isometry map;
};

struct LocalFlatFolding {
    Subdivision paper;               // creases + boundary (or clipping box)
    std::vector<int> facet_of_face;  // -1 for faces outside the paper
    std::vector<Facet> facets;
    std::optional<Rat> box;  // half-width of the clipping box on unbounded paper

    int num_facets() const { return static_cast<int>(facets.size()); }
    /// Facet whose interior strictly contains p, or -1.
    int facet_at(const Point& p) const;
};

/// Throws NoLocalFolding when facet maps disagree around some cycle.
LocalFlatFolding build_local_flat_folding(const CreasePattern& cp);

struct CreaseEvent {
    enum class Kind { Spanning, Folded, BoundaryEnd };
    Kind kind = Kind::Spanning;
    int cell = -1;  // Folded and BoundaryEnd: the cell holding the layers
    int a = -1;     // facet (the spanning layer, the boundary layer, or the first of a pair)
    int b = -1;     // Folded: second facet, a < b
    int crease = -1;
    std::optional<FoldLabel> label;
    int positive = -1;  // Folded: whichever of a, b has an orientation-preserving map
};

struct ArrangementEdge {
    int edge = -1;  // edge of FoldedArrangement::sub
    int left = -1, right = -1;  // cells
    std::vector<CreaseEvent> events;
};

struct Cell {
    int face = -1;
    std::vector<int> preimages;  // facet ids, ascending
    Point sample;                // strictly interior point (unset for the outer cell)
};

struct FoldedArrangement {
    LocalFlatFolding lff;
    Subdivision sub;
    std::vector<int> cell_of_face;  // -1 for the region outside the frame
    std::vector<Cell> cells;
    std::vector<ArrangementEdge> edges;
    bool labeled = false;

    int num_cells() const { return static_cast<int>(cells.size()); }
    int ply(int cell) const { return static_cast<int>(cells[static_cast<std::size_t>(cell)].preimages.size()); }
    /// Edges between a and b (either orientation).
    std::vector<int> edges_between(int a, int b) const;
};

FoldedArrangement fold_arrangement(const CreasePattern& cp, const LocalFlatFolding& lff);
/// Validates, builds the local folding and the arrangement.
FoldedArrangement fold_arrangement(const CreasePattern& cp);

int ply(const FoldedArrangement& fa);
Graph cell_adjacency_graph(const FoldedArrangement& fa);

}  // namespace foldwork
