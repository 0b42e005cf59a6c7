#pragma once

#include <span>
#include <vector>

#include "foldwork/geometry.hpp"

namespace foldwork {

/// Planar subdivision induced by a set of segments, stored as a half-edge
/// structure. Half-edge 2e runs along edge e from u to v, half-edge 2e+1 runs
/// back; each half-edge has its face on the left. Face 0 is the unbounded
/// face.
struct Subdivision {
    struct Edge {
        int u = -1, v = -1;
        int left = -1, right = -1;  // faces on either side of u -> v
        std::vector<int> sources;   // indices of the input segments containing it
    };
    struct HalfEdge {
        int origin = -1;
        int next = -1;
        int face = -1;
    };
    struct Face {
        std::vector<int> outer;               // half-edge cycle, empty for face 0
        std::vector<std::vector<int>> holes;  // inner boundary cycles
        Rat area;                             // zero for face 0
    };

    std::vector<Point> vertices;
    std::vector<Edge> edges;
    std::vector<HalfEdge> half_edges;
    std::vector<Face> faces;

    static constexpr int kUnbounded = 0;

    int num_faces() const { return static_cast<int>(faces.size()); }
    int twin(int h) const { return h ^ 1; }
    int edge_of(int h) const { return h >> 1; }
    int dest(int h) const { return half_edges[static_cast<std::size_t>(twin(h))].origin; }
    Segment edge_segment(int e) const {
        const auto& ed = edges[static_cast<std::size_t>(e)];
        return {vertices[static_cast<std::size_t>(ed.u)], vertices[static_cast<std::size_t>(ed.v)]};
    }
    Segment half_edge_segment(int h) const;
    std::vector<Point> cycle_points(std::span<const int> cycle) const;
    /// Every half-edge bounding face f (outer cycle and holes).
    std::vector<int> face_half_edges(int f) const;
    /// A point strictly inside bounded face f.
    Point interior_point(int f) const;
};

Subdivision build_subdivision(std::span<const Segment> segments);

struct Location {
    enum class Kind { Vertex, Edge, Face };
    Kind kind;
    int id;

    friend bool operator==(const Location&, const Location&) = default;
};

Location locate(const Subdivision& sub, const Point& p);

}  // namespace foldwork
