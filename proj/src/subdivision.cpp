#include "foldwork/subdivision.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace foldwork {

namespace {

struct Merged {
    Point lo, hi;
    std::vector<int> sources;
    std::vector<Point> splits;
};

// Position along a line: x for non-vertical lines, y otherwise.
Rat key_along(const Line& l, const Point& p) { return l.b.is_zero() ? p.y : p.x; }

int half_plane(const Point& d) {
    return (d.y.sign() > 0 || (d.y.is_zero() && d.x.sign() > 0)) ? 0 : 1;
}

bool angle_less(const Point& a, const Point& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b).sign() > 0;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[static_cast<std::size_t>(x)] == x ? x : p[static_cast<std::size_t>(x)] = find(p[static_cast<std::size_t>(x)]); }
    void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

Segment Subdivision::half_edge_segment(int h) const {
    return {vertices[static_cast<std::size_t>(half_edges[static_cast<std::size_t>(h)].origin)],
            vertices[static_cast<std::size_t>(dest(h))]};
}

std::vector<Point> Subdivision::cycle_points(std::span<const int> cycle) const {
    std::vector<Point> pts;
    pts.reserve(cycle.size());
    for (int h : cycle) pts.push_back(vertices[static_cast<std::size_t>(half_edges[static_cast<std::size_t>(h)].origin)]);
    return pts;
}

std::vector<int> Subdivision::face_half_edges(int f) const {
    const Face& face = faces[static_cast<std::size_t>(f)];
    std::vector<int> out = face.outer;
    for (const auto& hole : face.holes) out.insert(out.end(), hole.begin(), hole.end());
    return out;
}

Point Subdivision::interior_point(int f) const {
    if (f == kUnbounded) throw std::invalid_argument("interior_point: unbounded face");
    std::vector<int> hs = face_half_edges(f);
    std::vector<Rat> ys;
    for (int h : hs) ys.push_back(vertices[static_cast<std::size_t>(half_edges[static_cast<std::size_t>(h)].origin)].y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        Rat c = (ys[i] + ys[i + 1]) / 2;
        std::vector<std::pair<Rat, bool>> xs;  // crossing x, face lies to its right
        for (int h : hs) {
            Segment s = half_edge_segment(h);
            if ((s.a.y < c) == (s.b.y < c)) continue;
            Rat x = s.a.x + (c - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
            xs.emplace_back(x, s.b.y < s.a.y);
        }
        for (const auto& [x1, right] : xs) {
            if (!right) continue;
            std::optional<Rat> x2;
            for (const auto& [x, r] : xs) {
                if (x > x1 && (!x2 || x < *x2)) x2 = x;
            }
            if (x2) return {(x1 + *x2) / 2, c};
        }
    }
    throw std::logic_error("interior_point: face has no interior");
}

Subdivision build_subdivision(std::span<const Segment> segments) {
    // Merge collinear overlapping input into maximal pieces.
    std::map<Line, std::vector<int>> by_line;
    for (std::size_t i = 0; i < segments.size(); ++i) by_line[Line::of(segments[i])].push_back(static_cast<int>(i));

    std::vector<Merged> merged;
    std::vector<Line> merged_line;
    for (auto& [line, ids] : by_line) {
        const Line& l = line;
        auto lo_hi = [&](int i) {
            const Segment& s = segments[static_cast<std::size_t>(i)];
            return key_along(l, s.a) < key_along(l, s.b) ? std::pair{s.a, s.b} : std::pair{s.b, s.a};
        };
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return key_along(l, lo_hi(a).first) < key_along(l, lo_hi(b).first);
        });
        for (int i : ids) {
            auto [lo, hi] = lo_hi(i);
            if (!merged.empty() && merged_line.back() == l &&
                key_along(l, lo) <= key_along(l, merged.back().hi)) {
                Merged& m = merged.back();
                if (key_along(l, hi) > key_along(l, m.hi)) m.hi = hi;
                m.sources.push_back(i);
                m.splits.push_back(lo);
                m.splits.push_back(hi);
            } else {
                merged.push_back({lo, hi, {i}, {lo, hi}});
                merged_line.push_back(l);
            }
        }
    }

    for (std::size_t i = 0; i < merged.size(); ++i) {
        for (std::size_t j = i + 1; j < merged.size(); ++j) {
            if (merged_line[i] == merged_line[j]) continue;  // disjoint after merging
            if (auto x = intersect(Segment(merged[i].lo, merged[i].hi), Segment(merged[j].lo, merged[j].hi))) {
                merged[i].splits.push_back(*x);
                merged[j].splits.push_back(*x);
            }
        }
    }

    Subdivision sub;
    std::map<Point, int> vid;
    auto vertex = [&](const Point& p) {
        auto [it, fresh] = vid.try_emplace(p, static_cast<int>(sub.vertices.size()));
        if (fresh) sub.vertices.push_back(p);
        return it->second;
    };
    for (std::size_t i = 0; i < merged.size(); ++i) {
        Merged& m = merged[i];
        const Line& l = merged_line[i];
        std::sort(m.splits.begin(), m.splits.end(), [&](const Point& a, const Point& b) {
            return key_along(l, a) < key_along(l, b);
        });
        m.splits.erase(std::unique(m.splits.begin(), m.splits.end()), m.splits.end());
        for (std::size_t k = 0; k + 1 < m.splits.size(); ++k) {
            Subdivision::Edge e;
            e.u = vertex(m.splits[k]);
            e.v = vertex(m.splits[k + 1]);
            Point mid = midpoint(m.splits[k], m.splits[k + 1]);
            for (int s : m.sources) {
                if (on_segment(mid, segments[static_cast<std::size_t>(s)])) e.sources.push_back(s);
            }
            std::sort(e.sources.begin(), e.sources.end());
            sub.edges.push_back(std::move(e));
        }
    }

    const std::size_t nv = sub.vertices.size();
    const std::size_t ne = sub.edges.size();
    sub.half_edges.resize(2 * ne);
    std::vector<std::vector<int>> around(nv);
    for (std::size_t e = 0; e < ne; ++e) {
        sub.half_edges[2 * e].origin = sub.edges[e].u;
        sub.half_edges[2 * e + 1].origin = sub.edges[e].v;
        around[static_cast<std::size_t>(sub.edges[e].u)].push_back(static_cast<int>(2 * e));
        around[static_cast<std::size_t>(sub.edges[e].v)].push_back(static_cast<int>(2 * e + 1));
    }
    std::vector<int> pos(2 * ne);
    for (std::size_t v = 0; v < nv; ++v) {
        auto& hs = around[v];
        std::sort(hs.begin(), hs.end(), [&](int a, int b) {
            return angle_less(sub.half_edge_segment(a).direction(), sub.half_edge_segment(b).direction());
        });
        for (std::size_t k = 0; k < hs.size(); ++k) pos[static_cast<std::size_t>(hs[k])] = static_cast<int>(k);
    }
    for (std::size_t h = 0; h < 2 * ne; ++h) {
        int t = sub.twin(static_cast<int>(h));
        const auto& hs = around[static_cast<std::size_t>(sub.half_edges[static_cast<std::size_t>(t)].origin)];
        int k = pos[static_cast<std::size_t>(t)];
        int n = static_cast<int>(hs.size());
        sub.half_edges[h].next = hs[static_cast<std::size_t>((k - 1 + n) % n)];
    }

    UnionFind uf(nv);
    for (const auto& e : sub.edges) uf.unite(e.u, e.v);

    struct Cycle {
        std::vector<int> hs;
        Rat area;
        int component;
    };
    std::vector<Cycle> cycles;
    std::vector<bool> seen(2 * ne, false);
    for (std::size_t h0 = 0; h0 < 2 * ne; ++h0) {
        if (seen[h0]) continue;
        Cycle c;
        for (int h = static_cast<int>(h0); !seen[static_cast<std::size_t>(h)]; h = sub.half_edges[static_cast<std::size_t>(h)].next) {
            seen[static_cast<std::size_t>(h)] = true;
            c.hs.push_back(h);
        }
        c.area = signed_area(sub.cycle_points(c.hs));
        c.component = uf.find(sub.half_edges[h0].origin);
        cycles.push_back(std::move(c));
    }

    sub.faces.push_back({});
    std::vector<int> cycle_face(cycles.size(), -1);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (cycles[i].area.sign() > 0) {
            cycle_face[i] = static_cast<int>(sub.faces.size());
            sub.faces.push_back({cycles[i].hs, {}, cycles[i].area});
        }
    }
    const std::vector<int> outer_face = cycle_face;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (outer_face[i] >= 0) continue;
        const Point& q = sub.vertices[static_cast<std::size_t>(sub.half_edges[static_cast<std::size_t>(cycles[i].hs[0])].origin)];
        int best = Subdivision::kUnbounded;
        std::optional<Rat> best_area;
        for (std::size_t j = 0; j < cycles.size(); ++j) {
            if (outer_face[j] < 0 || cycles[j].component == cycles[i].component) continue;
            if (best_area && cycles[j].area >= *best_area) continue;
            if (winding_number(sub.cycle_points(cycles[j].hs), q) != 0) {
                best = outer_face[j];
                best_area = cycles[j].area;
            }
        }
        cycle_face[i] = best;
        auto& face = sub.faces[static_cast<std::size_t>(best)];
        face.holes.push_back(cycles[i].hs);
        if (best != Subdivision::kUnbounded) face.area += cycles[i].area;
    }
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        for (int h : cycles[i].hs) sub.half_edges[static_cast<std::size_t>(h)].face = cycle_face[i];
    }
    for (std::size_t e = 0; e < ne; ++e) {
        sub.edges[e].left = sub.half_edges[2 * e].face;
        sub.edges[e].right = sub.half_edges[2 * e + 1].face;
    }
    return sub;
}

Location locate(const Subdivision& sub, const Point& p) {
    for (std::size_t v = 0; v < sub.vertices.size(); ++v) {
        if (sub.vertices[v] == p) return {Location::Kind::Vertex, static_cast<int>(v)};
    }
    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
        if (on_segment(p, sub.edge_segment(static_cast<int>(e)))) return {Location::Kind::Edge, static_cast<int>(e)};
    }
    int best = Subdivision::kUnbounded;
    std::optional<Rat> best_area;
    for (int f = 1; f < sub.num_faces(); ++f) {
        const auto& face = sub.faces[static_cast<std::size_t>(f)];
        Rat outer_area = signed_area(sub.cycle_points(face.outer));
        if (best_area && outer_area >= *best_area) continue;
        if (winding_number(sub.cycle_points(face.outer), p) != 0) {
            best = f;
            best_area = outer_area;
        }
    }
    return {Location::Kind::Face, best};
}

}  // namespace foldwork
