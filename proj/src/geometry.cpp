#include "foldwork/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace foldwork {

int orient(const Point& p, const Point& q, const Point& r) {
    return cross(q - p, r - p).sign();
}

Segment::Segment(Point a_, Point b_) : a(std::move(a_)), b(std::move(b_)) {
    if (a == b) throw std::invalid_argument("Segment: endpoints coincide");
}

Line Line::through(const Point& p, const Point& q) {
    if (p == q) throw std::invalid_argument("Line::through: points coincide");
    Rat a = q.y - p.y;
    Rat b = p.x - q.x;
    Rat c = -(a * p.x + b * p.y);
    Rat s = a.is_zero() ? b : a;
    return {a / s, b / s, c / s};
}

Point reflect(const Point& p, const Line& l) {
    Rat d = l.eval(p) / (l.a * l.a + l.b * l.b);
    return {p.x - 2 * l.a * d, p.y - 2 * l.b * d};
}

bool on_segment(const Point& p, const Segment& s) {
    if (orient(s.a, s.b, p) != 0) return false;
    return min(s.a.x, s.b.x) <= p.x && p.x <= max(s.a.x, s.b.x) &&
           min(s.a.y, s.b.y) <= p.y && p.y <= max(s.a.y, s.b.y);
}

bool in_segment_interior(const Point& p, const Segment& s) {
    return p != s.a && p != s.b && on_segment(p, s);
}

Rat param_on(const Point& p, const Segment& s) {
    Point d = s.direction();
    return dot(p - s.a, d) / norm2(d);
}

std::optional<Point> intersect_lines(const Line& l, const Line& m) {
    Rat det = l.a * m.b - l.b * m.a;
    if (det.is_zero()) return std::nullopt;
    return Point{(l.b * m.c - m.b * l.c) / det, (m.a * l.c - l.a * m.c) / det};
}

std::optional<Point> intersect(const Segment& s, const Segment& t) {
    int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
    int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
    if (o1 == 0 && o2 == 0) return std::nullopt;  // collinear
    if (o1 * o2 > 0 || o3 * o4 > 0) return std::nullopt;
    if (o1 == 0) return t.a;
    if (o2 == 0) return t.b;
    if (o3 == 0) return s.a;
    if (o4 == 0) return s.b;
    return intersect_lines(Line::of(s), Line::of(t));
}

Rat signed_area(std::span<const Point> poly) {
    Rat acc = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        acc += cross(poly[i], poly[(i + 1) % poly.size()]);
    }
    return acc / 2;
}

int winding_number(std::span<const Point> walk, const Point& p) {
    int w = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Point& u = walk[i];
        const Point& v = walk[(i + 1) % walk.size()];
        if (u.y <= p.y) {
            if (v.y > p.y && orient(u, v, p) > 0) ++w;
        } else {
            if (v.y <= p.y && orient(u, v, p) < 0) --w;
        }
    }
    return w;
}

int classify(std::span<const Point> poly, const Point& p) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& u = poly[i];
        const Point& v = poly[(i + 1) % poly.size()];
        if (u != v && on_segment(p, Segment(u, v))) return 0;
    }
    return winding_number(poly, p) != 0 ? 1 : -1;
}

namespace {

// Convex hull (counterclockwise, collinear points dropped) of a small point set.
Polygon hull(Polygon pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    Polygon h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    if (h.size() == 2 && h[0] == h[1]) h.resize(1);
    return h;
}

}  // namespace

Polygon convex_polygon_intersection(const Polygon& P, const Polygon& Q) {
    Polygon a = hull(P), b = hull(Q);
    if (a.empty() || b.empty()) return {};
    // Closed-membership test against a convex hull of any dimension.
    auto contains = [](const Polygon& h, const Point& x) {
        if (h.size() == 1) return h[0] == x;
        if (h.size() == 2) return on_segment(x, Segment(h[0], h[1]));
        for (std::size_t i = 0; i < h.size(); ++i) {
            if (orient(h[i], h[(i + 1) % h.size()], x) < 0) return false;
        }
        return true;
    };
    auto edges = [](const Polygon& h) {
        std::vector<Segment> e;
        if (h.size() == 2) e.emplace_back(h[0], h[1]);
        if (h.size() >= 3) {
            for (std::size_t i = 0; i < h.size(); ++i) e.emplace_back(h[i], h[(i + 1) % h.size()]);
        }
        return e;
    };
    Polygon pts;
    for (const auto& x : a) if (contains(b, x)) pts.push_back(x);
    for (const auto& x : b) if (contains(a, x)) pts.push_back(x);
    for (const auto& s : edges(a)) {
        for (const auto& t : edges(b)) {
            if (auto x = intersect(s, t)) pts.push_back(*x);
        }
    }
    return hull(std::move(pts));
}

Isometry Isometry::reflection(const Line& l) {
    Rat n2 = l.a * l.a + l.b * l.b;
    Isometry r;
    r.m00 = 1 - 2 * l.a * l.a / n2;
    r.m01 = -2 * l.a * l.b / n2;
    r.m10 = r.m01;
    r.m11 = 1 - 2 * l.b * l.b / n2;
    r.t = {-2 * l.a * l.c / n2, -2 * l.b * l.c / n2};
    return r;
}

Isometry Isometry::compose(const Isometry& o) const {
    Isometry r;
    r.m00 = m00 * o.m00 + m01 * o.m10;
    r.m01 = m00 * o.m01 + m01 * o.m11;
    r.m10 = m10 * o.m00 + m11 * o.m10;
    r.m11 = m10 * o.m01 + m11 * o.m11;
    r.t = (*this)(o.t);
    return r;
}

Isometry Isometry::inverse() const {
    Isometry r;
    r.m00 = m00;
    r.m01 = m10;
    r.m10 = m01;
    r.m11 = m11;
    r.t = -1 * r.apply_linear(t);
    return r;
}

bool Isometry::is_orthogonal() const {
    return m00 * m00 + m10 * m10 == 1 && m01 * m01 + m11 * m11 == 1 &&
           m00 * m01 + m10 * m11 == 0;
}

}  // namespace foldwork
