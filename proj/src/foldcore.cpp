#include "foldwork/foldcore.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace foldwork {

namespace {

// Closed segment, or closed ray from a through b.
struct Piece {
    Point a, b;
    bool ray = false;

    friend auto operator<=>(const Piece&, const Piece&) = default;
};

bool piece_contains(const Piece& p, const Point& x) {
    if (orient(p.a, p.b, x) != 0) return false;
    Rat t = param_on(x, Segment(p.a, p.b));
    return t.sign() >= 0 && (p.ray || t <= 1);
}

bool is_endpoint(const Piece& p, const Point& x) { return x == p.a || (!p.ray && x == p.b); }

struct Hit {
    bool overlap = false;
    std::optional<Point> point;
};

Hit hit(const Piece& p, const Piece& q) {
    Point d = p.b - p.a;
    if (cross(d, q.b - q.a).is_zero()) {
        if (orient(p.a, p.b, q.a) != 0) return {};
        Segment sp(p.a, p.b);
        Rat ta = param_on(q.a, sp), tb = param_on(q.b, sp);
        std::optional<Rat> qlo, qhi;
        if (q.ray) {
            if (tb > ta) qlo = ta; else qhi = ta;
        } else {
            qlo = min(ta, tb);
            qhi = max(ta, tb);
        }
        Rat lo = qlo ? max(*qlo, Rat(0)) : Rat(0);
        std::optional<Rat> hi = qhi;
        if (!p.ray) hi = hi ? min(*hi, Rat(1)) : Rat(1);
        if (!hi || lo < *hi) return {true, {}};
        if (lo == *hi) return {false, p.a + lo * d};
        return {};
    }
    auto x = intersect_lines(Line::through(p.a, p.b), Line::through(q.a, q.b));
    if (x && piece_contains(p, *x) && piece_contains(q, *x)) return {false, x};
    return {};
}

Piece piece_of(const Crease& c) { return {c.a, c.b, c.ray}; }

struct Rect {
    Point lo, hi;
};

std::vector<Segment> rect_edges(const Rect& r) {
    Point a = r.lo, b{r.hi.x, r.lo.y}, c = r.hi, d{r.lo.x, r.hi.y};
    return {Segment(a, b), Segment(b, c), Segment(c, d), Segment(d, a)};
}

// Where the ray from a (strictly inside r) through b leaves r.
Point clip_ray(const Point& a, const Point& b, const Rect& r) {
    Point d = b - a;
    std::optional<Rat> t;
    auto consider = [&](const Rat& num, const Rat& den) {
        if (den.is_zero()) return;
        Rat s = num / den;
        if (s.sign() > 0 && (!t || s < *t)) t = s;
    };
    consider(r.hi.x - a.x, d.x);
    consider(r.lo.x - a.x, d.x);
    consider(r.hi.y - a.y, d.y);
    consider(r.lo.y - a.y, d.y);
    return a + *t * d;
}

bool on_rect(const Point& p, const Rect& r) {
    return p.x == r.lo.x || p.x == r.hi.x || p.y == r.lo.y || p.y == r.hi.y;
}

Rect centered(const Rat& R) { return {{-R, -R}, {R, R}}; }

LocalFlatFolding build_with_box(const CreasePattern& cp, const std::optional<Rat>& R) {
    const std::size_t nc = cp.creases.size();
    std::vector<Segment> segs;
    for (const auto& c : cp.creases) {
        segs.emplace_back(c.a, c.ray ? clip_ray(c.a, c.b, centered(*R)) : c.b);
    }
    if (R) {
        for (const auto& s : rect_edges(centered(*R))) segs.push_back(s);
    } else {
        for (std::size_t i = 0; i < cp.boundary.size(); ++i) {
            segs.emplace_back(cp.boundary[i], cp.boundary[(i + 1) % cp.boundary.size()]);
        }
    }

    LocalFlatFolding lff;
    lff.box = R;
    lff.paper = build_subdivision(segs);
    const Subdivision& sub = lff.paper;
    lff.facet_of_face.assign(static_cast<std::size_t>(sub.num_faces()), -1);
    for (int f = 1; f < sub.num_faces(); ++f) {
        if (R || classify(cp.boundary, sub.interior_point(f)) > 0) {
            lff.facet_of_face[static_cast<std::size_t>(f)] = lff.num_facets();
            lff.facets.push_back({f, {}, {}});
        }
    }
    for (auto& facet : lff.facets) {
        for (int h : sub.face_half_edges(facet.face)) {
            FacetSide side;
            side.seg = sub.half_edge_segment(h);
            side.kind = R ? FacetSide::Kind::Infinity : FacetSide::Kind::Boundary;
            for (int s : sub.edges[static_cast<std::size_t>(sub.edge_of(h))].sources) {
                if (static_cast<std::size_t>(s) < nc) {
                    side.kind = FacetSide::Kind::Crease;
                    side.crease = s;
                }
            }
            if (side.kind == FacetSide::Kind::Crease) {
                int across = sub.half_edges[static_cast<std::size_t>(sub.twin(h))].face;
                side.neighbor = lff.facet_of_face[static_cast<std::size_t>(across)];
                if (side.neighbor < 0) throw std::logic_error("crease bordering the outside of the paper");
            }
            facet.sides.push_back(side);
        }
    }

    if (lff.facets.empty()) throw InvalidInput("paper has no interior");
    std::vector<std::optional<Isometry>> maps(lff.facets.size());
    maps[0] = Isometry::identity();
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (const auto& side : lff.facets[static_cast<std::size_t>(f)].sides) {
            if (side.kind != FacetSide::Kind::Crease) continue;
            Isometry expect = maps[static_cast<std::size_t>(f)]->compose(Isometry::reflection(Line::of(side.seg)));
            auto& target = maps[static_cast<std::size_t>(side.neighbor)];
            if (!target) {
                target = expect;
                queue.push_back(side.neighbor);
            } else if (*target != expect) {
                throw NoLocalFolding("reflections around crease " + std::to_string(side.crease) +
                                     " do not close up");
            }
        }
    }
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!maps[i]) throw std::logic_error("facet unreachable through creases");
        lff.facets[i].map = *maps[i];
    }
    return lff;
}

// Images of every facet side, as segments or (for sides reaching the
// clipping box) rays.
std::vector<Piece> image_pieces(const LocalFlatFolding& lff) {
    std::set<Piece> out;
    for (const auto& facet : lff.facets) {
        for (const auto& side : facet.sides) {
            if (side.kind == FacetSide::Kind::Infinity) continue;
            Point a = facet.map(side.seg.a), b = facet.map(side.seg.b);
            bool at_a = lff.box && on_rect(side.seg.a, centered(*lff.box));
            bool at_b = lff.box && on_rect(side.seg.b, centered(*lff.box));
            if (at_a && at_b) throw std::logic_error("crease piece spans the clipping box");
            if (at_a) out.insert({b, a, true});
            else if (at_b) out.insert({a, b, true});
            else out.insert(b < a ? Piece{b, a, false} : Piece{a, b, false});
        }
    }
    return {out.begin(), out.end()};
}

// Box strictly containing every finite feature of the image pieces.
Rect image_frame(const std::vector<Piece>& pieces) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        pts.push_back(pieces[i].a);
        if (!pieces[i].ray) pts.push_back(pieces[i].b);
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            if (auto h = hit(pieces[i], pieces[j]); h.point) pts.push_back(*h.point);
        }
    }
    if (pts.empty()) pts.push_back({0, 0});
    Rect r{pts[0], pts[0]};
    for (const auto& p : pts) {
        r.lo = {min(r.lo.x, p.x), min(r.lo.y, p.y)};
        r.hi = {max(r.hi.x, p.x), max(r.hi.y, p.y)};
    }
    Rat margin = max(Rat(1), max(r.hi.x - r.lo.x, r.hi.y - r.lo.y));
    r.lo = r.lo - Point{margin, margin};
    r.hi = r.hi + Point{margin, margin};
    return r;
}

}  // namespace

bool CreasePattern::labeled() const {
    return std::any_of(creases.begin(), creases.end(), [](const Crease& c) { return c.label.has_value(); });
}

CreasePattern CreasePattern::normalized() const {
    CreasePattern out = *this;
    if (!out.boundary.empty() && signed_area(out.boundary).sign() < 0) {
        std::reverse(out.boundary.begin(), out.boundary.end());
    }
    return out;
}

void CreasePattern::validate() const {
    const std::size_t n = boundary.size();
    std::vector<Piece> edges;
    if (!unbounded()) {
        if (n < 3) throw InvalidInput("boundary needs at least 3 vertices");
        for (std::size_t i = 0; i < n; ++i) {
            if (boundary[i] == boundary[(i + 1) % n]) throw InvalidInput("repeated boundary vertex");
            edges.push_back({boundary[i], boundary[(i + 1) % n], false});
        }
        if (signed_area(boundary).is_zero()) throw InvalidInput("boundary has zero area");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
                Hit h = hit(edges[i], edges[j]);
                if (h.overlap || (!adjacent && h.point)) throw InvalidInput("boundary is not a simple polygon");
            }
        }
    }
    for (std::size_t i = 0; i < creases.size(); ++i) {
        const Crease& c = creases[i];
        const std::string name = "crease " + std::to_string(i);
        if (c.a == c.b) throw InvalidInput(name + " is degenerate");
        if (unbounded()) continue;
        if (c.ray) throw InvalidInput(name + " is a ray on bounded paper");
        if (classify(boundary, c.a) < 0 || classify(boundary, c.b) < 0 ||
            classify(boundary, midpoint(c.a, c.b)) <= 0) {
            throw InvalidInput(name + " leaves the paper");
        }
        for (const auto& e : edges) {
            Hit h = hit(piece_of(c), e);
            if (h.overlap) throw InvalidInput(name + " runs along the boundary");
            if (h.point && !is_endpoint(piece_of(c), *h.point)) throw InvalidInput(name + " crosses the boundary");
        }
    }
    for (std::size_t i = 0; i < creases.size(); ++i) {
        for (std::size_t j = i + 1; j < creases.size(); ++j) {
            Piece p = piece_of(creases[i]), q = piece_of(creases[j]);
            Hit h = hit(p, q);
            if (h.overlap || (h.point && !(is_endpoint(p, *h.point) && is_endpoint(q, *h.point)))) {
                throw InvalidInput("creases " + std::to_string(i) + " and " + std::to_string(j) +
                                   " meet away from a shared endpoint");
            }
        }
    }
}

int LocalFlatFolding::facet_at(const Point& p) const {
    Location loc = locate(paper, p);
    if (loc.kind != Location::Kind::Face) return -1;
    return facet_of_face[static_cast<std::size_t>(loc.id)];
}

LocalFlatFolding build_local_flat_folding(const CreasePattern& input) {
    CreasePattern cp = input.normalized();
    cp.validate();
    if (!cp.unbounded()) return build_with_box(cp, std::nullopt);

    // Clip the plane to a box large enough that everything the frame of the
    // folded image sees comes from inside the box.
    Rat extent = 1;
    for (const auto& c : cp.creases) {
        for (const Point& p : {c.a, c.b}) extent = max(extent, max(abs(p.x), abs(p.y)));
    }
    Rat R = 2 * extent + 2;
    for (;;) {
        LocalFlatFolding lff = build_with_box(cp, R);
        Rect frame = image_frame(image_pieces(lff));
        Rat need = 0;
        for (const auto& facet : lff.facets) {
            Isometry inv = facet.map.inverse();
            for (const Point& corner : {frame.lo, frame.hi, Point{frame.lo.x, frame.hi.y}, Point{frame.hi.x, frame.lo.y}}) {
                Point q = inv(corner);
                need = max(need, max(abs(q.x), abs(q.y)));
            }
        }
        if (need < R) return lff;
        R = 2 * need + 2;
    }
}

std::vector<int> FoldedArrangement::edges_between(int a, int b) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if ((e.left == a && e.right == b) || (e.left == b && e.right == a)) out.push_back(static_cast<int>(i));
    }
    return out;
}

FoldedArrangement fold_arrangement(const CreasePattern& cp, const LocalFlatFolding& lff) {
    FoldedArrangement fa;
    fa.lff = lff;
    fa.labeled = cp.labeled();

    std::vector<Piece> pieces = image_pieces(lff);
    std::vector<Segment> segs;
    std::optional<Rect> frame;
    if (lff.box) frame = image_frame(pieces);
    for (const auto& p : pieces) segs.emplace_back(p.a, p.ray ? clip_ray(p.a, p.b, *frame) : p.b);
    const std::size_t frame_first = segs.size();
    if (frame) {
        for (const auto& s : rect_edges(*frame)) segs.push_back(s);
    }
    fa.sub = build_subdivision(segs);
    const Subdivision& sub = fa.sub;

    fa.cell_of_face.assign(static_cast<std::size_t>(sub.num_faces()), -1);
    for (int f = 0; f < sub.num_faces(); ++f) {
        if (frame && f == Subdivision::kUnbounded) continue;
        fa.cell_of_face[static_cast<std::size_t>(f)] = fa.num_cells();
        Cell cell;
        cell.face = f;
        if (f != Subdivision::kUnbounded) cell.sample = sub.interior_point(f);
        fa.cells.push_back(std::move(cell));
    }

    std::vector<Isometry> inverse;
    for (const auto& facet : lff.facets) inverse.push_back(facet.map.inverse());
    for (auto& cell : fa.cells) {
        if (cell.face == Subdivision::kUnbounded) continue;  // outside every facet image
        for (int f = 0; f < lff.num_facets(); ++f) {
            if (lff.facet_at(inverse[static_cast<std::size_t>(f)](cell.sample)) == f) cell.preimages.push_back(f);
        }
    }

    for (std::size_t e = 0; e < sub.edges.size(); ++e) {
        const auto& edge = sub.edges[e];
        bool on_frame = std::any_of(edge.sources.begin(), edge.sources.end(),
                                    [&](int s) { return static_cast<std::size_t>(s) >= frame_first; });
        if (on_frame) continue;
        ArrangementEdge ae;
        ae.edge = static_cast<int>(e);
        ae.left = fa.cell_of_face[static_cast<std::size_t>(edge.left)];
        ae.right = fa.cell_of_face[static_cast<std::size_t>(edge.right)];
        const auto& pa = fa.cells[static_cast<std::size_t>(ae.left)].preimages;
        const auto& pb = fa.cells[static_cast<std::size_t>(ae.right)].preimages;
        std::vector<int> all;
        std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(all));
        Segment es = sub.edge_segment(static_cast<int>(e));
        std::set<std::pair<int, int>> pairs;
        for (int f : all) {
            bool in_a = std::binary_search(pa.begin(), pa.end(), f);
            bool in_b = std::binary_search(pb.begin(), pb.end(), f);
            if (in_a && in_b) {
                ae.events.push_back({CreaseEvent::Kind::Spanning, -1, f});
                continue;
            }
            int cell = in_a ? ae.left : ae.right;
            const Facet& facet = lff.facets[static_cast<std::size_t>(f)];
            const FacetSide* along = nullptr;
            for (const auto& side : facet.sides) {
                Segment img(facet.map(side.seg.a), facet.map(side.seg.b));
                if (on_segment(es.a, img) && on_segment(es.b, img)) along = &side;
            }
            if (!along || along->kind == FacetSide::Kind::Infinity) {
                throw std::logic_error("facet image ends on an edge without a matching side");
            }
            if (along->kind == FacetSide::Kind::Boundary) {
                ae.events.push_back({CreaseEvent::Kind::BoundaryEnd, cell, f});
                continue;
            }
            int g = along->neighbor;
            if (!pairs.insert({std::min(f, g), std::max(f, g)}).second) continue;
            CreaseEvent ev{CreaseEvent::Kind::Folded, cell, std::min(f, g), std::max(f, g), along->crease};
            ev.label = cp.creases[static_cast<std::size_t>(along->crease)].label;
            ev.positive = facet.map.parity() > 0 ? f : g;
            ae.events.push_back(ev);
        }
        fa.edges.push_back(std::move(ae));
    }
    return fa;
}

FoldedArrangement fold_arrangement(const CreasePattern& cp) {
    CreasePattern norm = cp.normalized();
    return fold_arrangement(norm, build_local_flat_folding(norm));
}

int ply(const FoldedArrangement& fa) {
    int p = 0;
    for (int c = 0; c < fa.num_cells(); ++c) p = std::max(p, fa.ply(c));
    return p;
}

Graph cell_adjacency_graph(const FoldedArrangement& fa) {
    Graph g(fa.num_cells());
    for (const auto& e : fa.edges) g.add_edge(e.left, e.right);
    return g;
}

}  // namespace foldwork
