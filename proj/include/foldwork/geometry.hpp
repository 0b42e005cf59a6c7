#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "foldwork/rational.hpp"

namespace foldwork {

struct Point {
    Rat x, y;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

inline Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
inline Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator*(const Rat& s, const Point& p) { return {s * p.x, s * p.y}; }

inline Rat dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }
inline Rat cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }
inline Point midpoint(const Point& p, const Point& q) { return Rat(1, 2) * (p + q); }
inline Rat norm2(const Point& v) { return dot(v, v); }

/// Sign of the turn p -> q -> r: +1 left, -1 right, 0 collinear.
int orient(const Point& p, const Point& q, const Point& r);

struct Segment {
    Point a, b;

    Segment() = default;
    Segment(Point a_, Point b_);  // throws if a_ == b_
    Point direction() const { return b - a; }
    Segment reversed() const { return {b, a}; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Line a*x + b*y + c = 0, scaled so that the first nonzero of (a, b) is 1.
struct Line {
    Rat a, b, c;

    static Line through(const Point& p, const Point& q);
    static Line of(const Segment& s) { return through(s.a, s.b); }
    Rat eval(const Point& p) const { return a * p.x + b * p.y + c; }
    int side(const Point& p) const { return eval(p).sign(); }

    friend bool operator==(const Line&, const Line&) = default;
    friend auto operator<=>(const Line&, const Line&) = default;
};

Point reflect(const Point& p, const Line& l);

/// True when p lies on the closed segment s.
bool on_segment(const Point& p, const Segment& s);
/// True when p lies on s but is not one of its endpoints.
bool in_segment_interior(const Point& p, const Segment& s);

/// Intersection of two non-collinear segments (closed); nullopt when they
/// miss or are collinear.
std::optional<Point> intersect(const Segment& s, const Segment& t);
/// Intersection of the supporting lines; nullopt when parallel.
std::optional<Point> intersect_lines(const Line& l, const Line& m);

/// Parameter t with p = s.a + t * (s.b - s.a), for p on the supporting line.
Rat param_on(const Point& p, const Segment& s);

using Polygon = std::vector<Point>;

/// Twice the signed area would lose the factor; this is the true signed area.
Rat signed_area(std::span<const Point> poly);
inline Rat area(std::span<const Point> poly) { return abs(signed_area(poly)); }
/// Winding number of the closed walk around p (p must not lie on the walk).
int winding_number(std::span<const Point> walk, const Point& p);
/// -1 outside, 0 on boundary, +1 inside, for a simple polygon.
int classify(std::span<const Point> poly, const Point& p);

/// Intersection of two convex polygons. The result is a convex polygon in
/// counterclockwise order, possibly degenerate (two points for a segment, one
/// for a point) or empty.
Polygon convex_polygon_intersection(const Polygon& P, const Polygon& Q);

/// Rigid motion x -> M x + t with rational orthogonal M.
struct Isometry {
    Rat m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    Point t{0, 0};

    static Isometry identity() { return {}; }
    static Isometry reflection(const Line& l);
    static Isometry translation(const Point& v) { Isometry r; r.t = v; return r; }

    Point operator()(const Point& p) const {
        return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
    }
    Point apply_linear(const Point& v) const {
        return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
    }
    /// (*this)(other(x))
    Isometry compose(const Isometry& other) const;
    Isometry inverse() const;
    /// +1 for orientation preserving, -1 for a reflection.
    int parity() const { return (m00 * m11 - m01 * m10).sign(); }
    bool is_orthogonal() const;

    friend bool operator==(const Isometry&, const Isometry&) = default;
};

}  // namespace foldwork
