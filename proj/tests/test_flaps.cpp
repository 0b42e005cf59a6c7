#include <doctest.h>

#include <algorithm>
#include <set>

#include "foldwork/errors.hpp"
#include "foldwork/flaps.hpp"
#include "foldwork/gadgets.hpp"
#include "foldwork/geometry.hpp"

using namespace foldwork;

namespace {

FlapInstance of(std::initializer_list<GridFlap> fs) {
    FlapInstance in;
    for (const auto& f : fs) in.flaps.push_back(f.hinge());
    return in;
}

// collinear hinges 2 apart, side 1 facing +x
FlapInstance chain(int k, int x0 = 0, int y0 = 0) {
    FlapInstance in;
    for (int i = 0; i < k; ++i) in.flaps.push_back(GridFlap{x0 + 2 * i, y0, 5, 0}.hinge());
    return in;
}

const FlapState* find_sides(const std::vector<FlapState>& all, const std::string& s) {
    for (const auto& st : all)
        if (side_string(st) == s) return &st;
    return nullptr;
}

std::set<std::string> side_strings(const std::vector<FlapState>& v) {
    std::set<std::string> out;
    for (const auto& st : v) out.insert(side_string(st));
    return out;
}

bool positive_overlap(const Polygon& a, const Polygon& b) {
    auto x = convex_polygon_intersection(a, b);
    return x.size() >= 3 && area(x).sign() > 0;
}

// Every order-bit assignment over the pairs that overlap under `sides`.
std::vector<FlapState> all_bit_assignments(const FlapInstance& in, const std::vector<int>& sides) {
    FlapState base{sides, {}};
    for (int i = 0; i < in.size(); ++i)
        for (int j = i + 1; j < in.size(); ++j)
            if (positive_overlap(placed_square(in, i, sides[i]), placed_square(in, j, sides[j])))
                base.orders.push_back({i, j, false});
    std::vector<FlapState> out;
    for (unsigned m = 0; m < (1u << base.orders.size()); ++m) {
        auto st = base;
        for (std::size_t p = 0; p < st.orders.size(); ++p) st.orders[p].i_above = m >> p & 1;
        out.push_back(st);
    }
    return out;
}

void check_moves_symmetric(const FlapInstance& in) {
    auto all = enumerate_states(in);
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& s : all)
        for (const auto& t : moves(in, s)) {
            CHECK(validate_state(in, t));
            int changed = 0;
            for (int f = 0; f < in.size(); ++f) changed += s.sides[f] != t.sides[f];
            CHECK(changed <= 1);
            edges.insert({s.key(), t.key()});
        }
    for (const auto& [a, b] : edges) CHECK(edges.count({b, a}) == 1);
}

}  // namespace

TEST_CASE("one flap") {
    auto in = chain(1);
    auto all = enumerate_states(in);
    REQUIRE(all.size() == 2);
    CHECK(side_strings(all) == std::set<std::string>{"L", "R"});
    auto mv = moves(in, all[0]);
    REQUIRE(mv.size() == 1);
    CHECK(side_string(mv[0]) == "R");
    CHECK(globally_connected(in));
}

TEST_CASE("free chain of k flaps has k+1 states on a path") {
    for (int k = 1; k <= 6; ++k) {
        CAPTURE(k);
        auto in = chain(k);
        auto all = enumerate_states(in);
        CHECK(all.size() == static_cast<std::size_t>(k + 1));
        std::size_t deg_sum = 0, ends = 0;
        for (const auto& st : all) {
            CHECK(validate_state(in, st));
            // 0...01...1
            CHECK(std::is_sorted(st.sides.begin(), st.sides.end()));
            auto d = moves(in, st).size();
            deg_sum += d;
            ends += d == 1;
        }
        CHECK(deg_sum == 2 * static_cast<std::size_t>(k));
        CHECK(ends == 2);
        CHECK(globally_connected(in));
    }
}

TEST_CASE("chain of two: LL only flips the far flap") {
    auto in = chain(2);
    auto all = enumerate_states(in);
    CHECK(find_sides(all, "RL") == nullptr);
    auto mv = moves(in, *find_sides(all, "LL"));
    CHECK(side_strings(mv) == std::set<std::string>{"LR"});
}

TEST_CASE("chain of three: LLL reaches RRR") {
    auto in = chain(3);
    auto all = enumerate_states(in);
    CHECK(reachable(in, *find_sides(all, "LLL"), *find_sides(all, "RRR")));
    CHECK(reachable(in, all[0], all[0]));
}

TEST_CASE("far-apart pieces multiply") {
    CHECK(count_states(of({{0, 0, 5, 0}, {40, 0, 5, 0}})) == 4);
    FlapInstance in = chain(2);
    for (const auto& h : chain(3, 0, 30).flaps) in.flaps.push_back(h);
    CHECK(count_states(in) == 12);
    CHECK(globally_connected(in));
    check_moves_symmetric(in);
}

TEST_CASE("three central OR flaps all inward have no valid ordering") {
    // centres of the OR blueprint, side 0 faces the vertex
    auto in = of({{0, 0, -5, 0}, {2, 0, 4, 3}, {1, -4, 0, -5}});
    std::vector<int> inward{0, 0, 0};
    auto sq = [&](int f) { return placed_square(in, f, 0); };
    REQUIRE(positive_overlap(sq(0), sq(1)));
    REQUIRE(positive_overlap(sq(0), sq(2)));
    REQUIRE(positive_overlap(sq(1), sq(2)));
    auto tri = convex_polygon_intersection(convex_polygon_intersection(sq(0), sq(1)), sq(2));
    REQUIRE(tri.size() >= 3);
    REQUIRE(area(tri).sign() > 0);

    auto cands = all_bit_assignments(in, inward);
    REQUIRE(cands.size() == 8);
    for (const auto& st : cands) CHECK_FALSE(validate_state(in, st));
    CHECK(completions(in, inward).empty());
    // any two inward is fine
    for (int out = 0; out < 3; ++out) {
        auto s = inward;
        s[out] = 1;
        CHECK_FALSE(completions(in, s).empty());
    }
}

TEST_CASE("pairwise overlaps without a common area allow a cyclic order") {
    // found by search over small integer placements
    auto in = of({{0, 0, 5, 0}, {-6, -6, 4, 3}, {-6, -3, -3, -4}});
    std::vector<int> sides{0, 1, 0};
    auto sq = [&](int f) { return placed_square(in, f, sides[f]); };
    REQUIRE(positive_overlap(sq(0), sq(1)));
    REQUIRE(positive_overlap(sq(0), sq(2)));
    REQUIRE(positive_overlap(sq(1), sq(2)));
    auto tri = convex_polygon_intersection(convex_polygon_intersection(sq(0), sq(1)), sq(2));
    CHECK((tri.size() < 3 || area(tri).sign() == 0));

    int cyclic = 0;
    for (const auto& st : all_bit_assignments(in, sides)) {
        REQUIRE(st.orders.size() == 3);
        bool a01 = st.orders[0].i_above, a02 = st.orders[1].i_above, a12 = st.orders[2].i_above;
        bool cyc = (a01 && a12 && !a02) || (!a01 && !a12 && a02);
        if (cyc && validate_state(in, st)) ++cyclic;
    }
    CHECK(cyclic >= 1);
}

TEST_CASE("validate_state rejects malformed states") {
    auto in = chain(2);
    auto st = enumerate_states(in).front();
    auto bad = st;
    bad.sides.pop_back();
    CHECK_FALSE(validate_state(in, bad));
    bad = st;
    bad.orders.clear();
    CHECK_FALSE(validate_state(in, bad));
    bad = st;
    bad.orders.front().i_above = !bad.orders.front().i_above;  // lower flap on the upper hinge
    CHECK_FALSE(validate_state(in, bad));
    CHECK_THROWS_AS(moves(in, FlapState{{0}, {}}), InvalidInput);
}

TEST_CASE("instance checks and budgets") {
    FlapInstance crossing;
    crossing.flaps = {{Point(0, 0), Point(0, 5)}, {Point(-2, 2), Point(3, 2)}};
    CHECK_THROWS_AS(crossing.check(), InvalidInput);
    FlapInstance wrong;
    wrong.flaps = {{Point(0, 0), Point(0, 4)}};
    CHECK_THROWS_AS(wrong.check(), InvalidInput);
    CHECK_THROWS_AS(count_states(chain(21)), BudgetExceeded);
    CHECK(count_states(chain(21), FlapBudget{30, 100}) == 22);
    CHECK_THROWS_AS(count_states(chain(12), FlapBudget{20, 5}), BudgetExceeded);
}

TEST_CASE("completions") {
    auto in = chain(3);
    auto all = enumerate_states(in);
    for (const auto& st : all) {
        auto c = completions(in, st.sides);
        CHECK(std::find(c.begin(), c.end(), st) != c.end());
        auto h = completions(in, st.sides, &st);
        REQUIRE_FALSE(h.empty());
        CHECK(h.front() == st);
    }
    CHECK(completions(in, {1, 0, 0}).empty());
    CHECK_THROWS_AS(completions(in, {0, 2, 0}), InvalidInput);
}

TEST_CASE("AND gadget: reds are stuck while blue points out") {
    auto bp = make_gadget(GadgetKind::And);
    auto in = bp.instance();
    const auto& blue = bp.ports[0];
    REQUIRE(blue.color == NclColor::Blue);
    int checked = 0;
    for (const auto& st : enumerate_states(in, FlapBudget{40, 1'000'000})) {
        int b = blue.chain.front();
        if (st.sides[b] == blue.out_side) continue;  // blue edge points in
        for (const auto& t : moves(in, st))
            for (std::size_t p = 1; p < bp.ports.size(); ++p) {
                int r = bp.ports[p].chain.front();
                CHECK(t.sides[r] == st.sides[r]);
            }
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("move symmetry on gadgets") {
    check_moves_symmetric(chain(4));
    check_moves_symmetric(make_gadget(GadgetKind::Turn).instance());
    check_moves_symmetric(make_gadget(GadgetKind::Or).instance());
}
