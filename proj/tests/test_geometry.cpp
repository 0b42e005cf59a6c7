#include <random>

#include "doctest.h"
#include "foldwork/geometry.hpp"
#include "foldwork/subdivision.hpp"

using namespace foldwork;

namespace {

Point P(long x, long y) { return {Rat(x), Rat(y)}; }

Rat random_rat(std::mt19937& rng, int lo = -6, int hi = 6) {
    std::uniform_int_distribution<int> num(lo * 4, hi * 4), den(1, 4);
    return Rat(num(rng), den(rng));
}

Point random_point(std::mt19937& rng) { return {random_rat(rng), random_rat(rng)}; }

std::vector<Segment> unit_square_edges() {
    return {Segment(P(0, 0), P(1, 0)), Segment(P(1, 0), P(1, 1)),
            Segment(P(1, 1), P(0, 1)), Segment(P(0, 1), P(0, 0))};
}

// Face lookup by full containment (outer walk minus holes), independent of
// the smallest-enclosing-cycle rule used by locate.
int naive_face(const Subdivision& sub, const Point& p) {
    for (int f = 1; f < sub.num_faces(); ++f) {
        const auto& face = sub.faces[static_cast<std::size_t>(f)];
        if (winding_number(sub.cycle_points(face.outer), p) == 0) continue;
        bool in_hole = false;
        for (const auto& hole : face.holes) {
            if (winding_number(sub.cycle_points(hole), p) != 0) in_hole = true;
        }
        if (!in_hole) return f;
    }
    return Subdivision::kUnbounded;
}

}  // namespace

TEST_CASE("rationals are normalized") {
    Rat r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rat::parse("-1.25") == Rat(-5, 4));
    CHECK(Rat::parse("7/21") == Rat(1, 3));
    CHECK_THROWS(Rat::parse("abc"));
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("reflect") {
    CHECK(reflect(P(0, 0), Line::through(P(1, 0), P(1, 1))) == P(2, 0));
    CHECK(reflect(P(1, 2), Line::through(P(0, 0), P(1, 1))) == P(2, 1));

    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        Point p = random_point(rng);
        Point a = random_point(rng), b = random_point(rng);
        if (a == b) continue;
        Line l = Line::through(a, b);
        CHECK(reflect(reflect(p, l), l) == p);
        CHECK(Isometry::reflection(l)(p) == reflect(p, l));
        CHECK(Isometry::reflection(l).is_orthogonal());
    }
}

TEST_CASE("isometry composition and inverse") {
    Line l1 = Line::through(P(0, 0), P(3, 4));
    Line l2 = Line::through(P(1, 0), P(1, 1));
    Isometry r = Isometry::reflection(l1).compose(Isometry::reflection(l2));
    CHECK(r.parity() == 1);
    CHECK(r.is_orthogonal());
    Point p{Rat(2, 7), Rat(-5, 3)};
    CHECK(r.inverse()(r(p)) == p);
    CHECK(Isometry::reflection(l1).parity() == -1);
}

TEST_CASE("segment intersection") {
    Segment s(P(0, 0), P(2, 2)), t(P(0, 2), P(2, 0));
    CHECK(*intersect(s, t) == P(1, 1));
    CHECK_FALSE(intersect(s, Segment(P(3, 0), P(4, 0))).has_value());
    CHECK(*intersect(s, Segment(P(2, 2), P(3, 0))) == P(2, 2));
}

TEST_CASE("build_subdivision examples") {
    SUBCASE("empty") {
        Subdivision sub = build_subdivision({});
        CHECK(sub.num_faces() == 1);
    }
    SUBCASE("cross") {
        std::vector<Segment> segs{Segment(P(0, 0), P(2, 2)), Segment(P(0, 2), P(2, 0))};
        Subdivision sub = build_subdivision(segs);
        CHECK(sub.num_faces() == 1);
        CHECK(sub.vertices.size() == 5);
        CHECK(sub.edges.size() == 4);
        CHECK(sub.faces[0].holes.size() == 1);
        CHECK(sub.faces[0].holes[0].size() == 8);
    }
    SUBCASE("unit square") {
        auto segs = unit_square_edges();
        Subdivision sub = build_subdivision(segs);
        CHECK(sub.num_faces() == 2);
        CHECK(sub.faces[1].area == 1);
    }
    SUBCASE("collinear overlaps merge") {
        std::vector<Segment> segs{Segment(P(0, 0), P(3, 0)), Segment(P(1, 0), P(5, 0)),
                                  Segment(P(5, 0), P(4, 0))};
        Subdivision sub = build_subdivision(segs);
        // pieces split at every original endpoint, never doubled
        CHECK(sub.edges.size() == 4);
        for (const auto& e : sub.edges) CHECK(!e.sources.empty());
    }
    SUBCASE("nested components") {
        auto segs = unit_square_edges();
        for (auto s : unit_square_edges()) {
            segs.emplace_back(Point{s.a.x * 5 - 2, s.a.y * 5 - 2}, Point{s.b.x * 5 - 2, s.b.y * 5 - 2});
        }
        Subdivision sub = build_subdivision(segs);
        REQUIRE(sub.num_faces() == 3);
        int ring = locate(sub, {Rat(-1), Rat(-1)}).id;
        CHECK(sub.faces[static_cast<std::size_t>(ring)].holes.size() == 1);
        CHECK(sub.faces[static_cast<std::size_t>(ring)].area == 24);
    }
}

TEST_CASE("locate in unit square") {
    auto segs = unit_square_edges();
    Subdivision sub = build_subdivision(segs);
    Location in = locate(sub, {Rat(1, 2), Rat(1, 2)});
    CHECK(in.kind == Location::Kind::Face);
    CHECK(in.id != Subdivision::kUnbounded);
    CHECK(locate(sub, P(2, 2)) == Location{Location::Kind::Face, Subdivision::kUnbounded});
    Location bottom = locate(sub, {Rat(1, 2), Rat(0)});
    REQUIRE(bottom.kind == Location::Kind::Edge);
    CHECK(sub.edge_segment(bottom.id).a.y == 0);
    CHECK(sub.edge_segment(bottom.id).b.y == 0);
    CHECK(locate(sub, P(1, 1)).kind == Location::Kind::Vertex);
}

TEST_CASE("convex polygon intersection") {
    std::vector<Point> sq{P(0, 0), P(1, 0), P(1, 1), P(0, 1)};
    CHECK(area(convex_polygon_intersection(sq, sq)) == 1);
    std::vector<Point> far{P(2, 0), P(3, 0), P(3, 1), P(2, 1)};
    CHECK(convex_polygon_intersection(sq, far).empty());
    std::vector<Point> half;
    for (const auto& p : sq) half.push_back({p.x + Rat(1, 2), p.y});
    auto r = convex_polygon_intersection(sq, half);
    CHECK(r.size() == 4);
    CHECK(area(r) == Rat(1, 2));
    std::vector<Point> touching;
    for (const auto& p : sq) touching.push_back({p.x + 1, p.y});
    CHECK(convex_polygon_intersection(sq, touching).size() == 2);
}

TEST_CASE("subdivision properties on random segments") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Segment> segs;
        int n = 2 + trial % 7;
        while (static_cast<int>(segs.size()) < n) {
            Point a = random_point(rng), b = random_point(rng);
            if (a != b) segs.emplace_back(a, b);
        }
        Subdivision sub = build_subdivision(segs);
        std::size_t n2 = static_cast<std::size_t>(n * n);
        CHECK(sub.vertices.size() <= 2 * n2 + 2 * static_cast<std::size_t>(n));
        CHECK(sub.edges.size() <= 2 * n2 + static_cast<std::size_t>(n));
        CHECK(sub.faces.size() <= n2 + 2);

        // Euler: V - E + F = 1 + C
        std::vector<int> comp(sub.vertices.size());
        for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
        std::function<int(int)> find = [&](int x) { return comp[static_cast<std::size_t>(x)] == x ? x : comp[static_cast<std::size_t>(x)] = find(comp[static_cast<std::size_t>(x)]); };
        for (const auto& e : sub.edges) comp[static_cast<std::size_t>(find(e.u))] = find(e.v);
        int c = 0;
        for (std::size_t i = 0; i < comp.size(); ++i) c += find(static_cast<int>(i)) == static_cast<int>(i);
        CHECK(static_cast<long>(sub.vertices.size()) - static_cast<long>(sub.edges.size()) +
                  static_cast<long>(sub.faces.size()) == 1 + c);

        for (int f = 1; f < sub.num_faces(); ++f) {
            Point q = sub.interior_point(f);
            CHECK(locate(sub, q) == Location{Location::Kind::Face, f});
        }

        for (int q = 0; q < 40; ++q) {
            Point p = random_point(rng);
            Location loc = locate(sub, p);
            if (loc.kind == Location::Kind::Face) CHECK(loc.id == naive_face(sub, p));
            if (loc.kind == Location::Kind::Edge) CHECK(on_segment(p, sub.edge_segment(loc.id)));
        }

        // exactness under a rational similarity: rotate by (3/5, 4/5), scale 2, shift
        auto sim = [](const Point& p) {
            return Point{2 * (Rat(3, 5) * p.x - Rat(4, 5) * p.y) + Rat(1, 3),
                         2 * (Rat(4, 5) * p.x + Rat(3, 5) * p.y) - 7};
        };
        std::vector<Segment> moved;
        for (const auto& s : segs) moved.emplace_back(sim(s.a), sim(s.b));
        Subdivision sub2 = build_subdivision(moved);
        CHECK(sub2.vertices.size() == sub.vertices.size());
        CHECK(sub2.edges.size() == sub.edges.size());
        REQUIRE(sub2.faces.size() == sub.faces.size());
        for (int f = 1; f < sub.num_faces(); ++f) {
            Location l2 = locate(sub2, sim(sub.interior_point(f)));
            CHECK(sub2.faces[static_cast<std::size_t>(l2.id)].area == 4 * sub.faces[static_cast<std::size_t>(f)].area);
        }
    }
}
