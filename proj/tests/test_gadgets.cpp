#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "foldwork/errors.hpp"
#include "foldwork/gadgets.hpp"

using namespace foldwork;

namespace {

const FlapBudget kBig{400, 2'000'000};

// Independent count: every edge chain of L flaps is u->v, v->u, or one of
// L-1 two-tailed states; vertices need incoming weight 2.
long hand_count(const CompiledNcl& c) {
    const auto& g = c.graph;
    const int m = g.num_edges();
    long total = 0;
    std::vector<int> st(static_cast<std::size_t>(m), 0);  // 0: u->v, 1: v->u, 2: two tails
    while (true) {
        std::vector<int> in(static_cast<std::size_t>(g.num_vertices), 0);
        long w = 1;
        for (int e = 0; e < m; ++e) {
            const auto& ed = g.edges[static_cast<std::size_t>(e)];
            int wt = ed.color == NclColor::Blue ? 2 : 1;
            if (st[e] == 0) in[ed.v] += wt;
            if (st[e] == 1) in[ed.u] += wt;
            if (st[e] == 2) w *= static_cast<long>(c.edge_flaps[e].size()) - 1;
        }
        bool ok = true;
        for (int v = 0; v < g.num_vertices; ++v) ok = ok && (g.is_terminal(v) || in[v] >= 2);
        if (ok) total += w;
        int e = 0;
        while (e < m && st[e] == 2) st[e++] = 0;
        if (e == m) break;
        ++st[e];
    }
    return total;
}

NclGraph and_with_stubs() {
    NclGraph g;
    g.num_vertices = 4;
    g.terminals = {1, 2, 3};
    g.edges = {{0, 1, NclColor::Blue}, {0, 2, NclColor::Red}, {0, 3, NclColor::Red}};
    return g;
}

GridRouting and_routing(int scale) {
    GridRouting r;
    r.scale = scale;
    r.positions = {{0, 0}, {0, -1}, {-1, 0}, {1, 0}};
    r.paths = {{{0, 0}, {0, -1}}, {{0, 0}, {-1, 0}}, {{0, 0}, {1, 0}}};
    return r;
}

NclGraph red_stub() {
    NclGraph g;
    g.num_vertices = 2;
    g.terminals = {0, 1};
    g.edges = {{0, 1, NclColor::Red}};
    return g;
}

// Matching reduction of the one-vertex triple edge: an all-blue vertex 0 tied
// to the three corners of a red triangle.
NclGraph triple() { return matchings_to_ncl({{3}}); }

GridRouting triple_routing() {
    // corners 1 (0,0), 2 (2,0), 3 (1,1); blue vertex 0 at (1,-1)
    GridRouting r;
    r.positions = {{1, -1}, {0, 0}, {2, 0}, {1, 1}};
    r.paths = {
        {{1, -1}, {0, -1}, {0, 0}},
        {{1, -1}, {2, -1}, {2, 0}},
        {{1, -1}, {1, -2}, {-1, -2}, {-1, 2}, {1, 2}, {1, 1}},
        {{0, 0}, {2, 0}},
        {{2, 0}, {2, 1}, {1, 1}},
        {{0, 0}, {0, 1}, {1, 1}},
    };
    return r;
}

// bit set only when the whole chain faces u
Orientation orientation_of(const CompiledNcl& c, const FlapState& st) {
    Orientation o = 0;
    for (std::size_t e = 0; e < c.edge_flaps.size(); ++e)
        if (st.sides[c.edge_flaps[e].front()] == 1 && st.sides[c.edge_flaps[e].back()] == 1) o |= Orientation{1} << e;
    return o;
}

bool is_canonical(const CompiledNcl& c, const FlapState& st) {
    for (const auto& fl : c.edge_flaps)
        if (st.sides[fl.front()] != st.sides[fl.back()]) return false;
    return true;
}

// Canonical states match satisfying orientations one to one, and flap
// components map onto NCL components one to one.
void check_correspondence(const CompiledNcl& c) {
    auto states = enumerate_states(c.inst, kBig);
    CHECK(static_cast<long>(states.size()) == hand_count(c));
    auto sat = satisfying_orientations(c.graph);
    std::map<Orientation, int> canon;
    for (const auto& st : states) {
        CHECK(chains_monotone(c.edge_flaps, st));
        if (!is_canonical(c, st)) continue;
        auto o = orientation_of(c, st);
        CHECK(validate(c.graph, o));
        ++canon[o];
    }
    CHECK(canon.size() == sat.size());
    for (auto o : sat) CHECK(canon[o] == 1);

    auto ncl = components(c.graph);
    std::map<Orientation, int> ncl_comp;
    for (std::size_t i = 0; i < ncl.size(); ++i)
        for (auto o : ncl[i]) ncl_comp[o] = static_cast<int>(i);
    auto fc = flap_components(c.inst, kBig);
    std::set<int> seen;
    for (const auto& comp : fc) {
        std::set<int> hit;
        for (int i : comp) hit.insert(ncl_comp.at(orientation_of(c, states[i])));
        CHECK(hit.size() == 1);
        CHECK(seen.insert(*hit.begin()).second);
    }
    CHECK(seen.size() == ncl.size());
}

}  // namespace

TEST_CASE("edge gadget has k+1 states along a path") {
    for (int k = 1; k <= 6; ++k) {
        auto bp = make_gadget(GadgetKind::Edge, k);
        auto inst = bp.instance();
        auto states = enumerate_states(inst);
        CHECK(states.size() == static_cast<std::size_t>(k + 1));
        for (const auto& st : states) {
            CHECK(chains_monotone(bp.chains, st));
            CHECK(moves(inst, st).size() <= 2);
        }
        CHECK(globally_connected(inst));
    }
}

TEST_CASE("vertex gadget tables") {
    auto expected = [](const GadgetBlueprint& bp, bool and_gate) {
        long n = 0;
        for (unsigned p = 0; p < 8; ++p) {
            bool ok = and_gate ? (p & 1) || (p & 6) == 6 : p != 0;
            if (!ok) continue;
            long prod = 1;
            for (int q = 0; q < 3; ++q)
                if (!(p >> q & 1)) prod *= static_cast<long>(bp.ports[q].chain.size());
            n += prod;
        }
        return n;
    };
    for (auto kind : {GadgetKind::And, GadgetKind::AndCorner}) {
        auto bp = make_gadget(kind);
        CHECK(port_patterns(bp) == std::set<unsigned>{1, 3, 5, 6, 7});
        auto states = enumerate_states(bp.instance());
        CHECK(static_cast<long>(states.size()) == expected(bp, true));
        for (const auto& st : states) CHECK(chains_monotone(bp.chains, st));
    }
    auto bp = make_gadget(GadgetKind::Or);
    CHECK(port_patterns(bp) == std::set<unsigned>{1, 2, 3, 4, 5, 6, 7});
    CHECK(static_cast<long>(count_states(bp.instance())) == expected(bp, false));
}

TEST_CASE("turn and crossover behave as plain chains") {
    auto turn = make_gadget(GadgetKind::Turn);
    auto ts = enumerate_states(turn.instance());
    CHECK(ts.size() == 4);
    for (const auto& st : ts) CHECK(chains_monotone(turn.chains, st));

    auto cross = make_gadget(GadgetKind::Crossover);
    auto cs = enumerate_states(cross.instance());
    CHECK(cs.size() == 7 * 7);
    std::set<std::pair<std::string, std::string>> split;
    for (const auto& st : cs) {
        CHECK(chains_monotone(cross.chains, st));
        std::string h, v;
        for (int f : cross.chains[0]) h += static_cast<char>('0' + st.sides[f]);
        for (int f : cross.chains[1]) v += static_cast<char>('0' + st.sides[f]);
        split.insert({h, v});
    }
    CHECK(split.size() == 49);  // every pair of chain states exactly once
}

TEST_CASE("blueprint invariants") {
    for (auto kind : {GadgetKind::Edge, GadgetKind::And, GadgetKind::AndCorner, GadgetKind::Or, GadgetKind::Turn,
                      GadgetKind::Crossover}) {
        auto bp = make_gadget(kind, 3);
        for (const auto& f : bp.flaps) {
            CHECK(f.dx * f.dx + f.dy * f.dy == 25);
            CHECK(f.hinge().b == f.reversed().hinge().a);
        }
        CHECK_NOTHROW(bp.instance().check());
        CHECK(parse_gadget_kind(gadget_name(kind)) == kind);
    }
    CHECK_THROWS_AS(make_gadget(GadgetKind::Edge, 0), InvalidInput);
}

TEST_CASE("compiled red edge") {
    auto g = red_stub();
    GridRouting r;
    r.scale = 12;
    r.positions = {{0, 0}, {1, 0}};
    r.paths = {{{0, 0}, {1, 0}}};
    auto [lo, hi] = red_length_range(g, r);
    REQUIRE(lo <= hi);
    for (int k = lo; k <= hi; ++k) {
        auto c = compile_ncl(g, r, k);
        CHECK(c.inst.size() == k);
        CHECK(count_states(c.inst) == static_cast<std::size_t>(k + 1));
        check_correspondence(c);
        auto rep = verify_compiled(c);
        CHECK(rep.ok());
        CHECK(rep.canonical == 2);
    }
    CHECK_THROWS_AS(compile_ncl(g, r, hi + 1), RoutingInvalid);

    // read backwards the chain is 1...10...0, which the report must catch
    auto c = compile_ncl(g, r, lo);
    std::reverse(c.edge_flaps[0].begin(), c.edge_flaps[0].end());
    CHECK_FALSE(verify_compiled(c).ok());
}

TEST_CASE("compiled AND vertex with stubs") {
    auto g = and_with_stubs();
    auto r = and_routing(20);
    auto [lo, hi] = red_length_range(g, r);
    REQUIRE(lo <= hi);
    auto c = compile_ncl(g, r, lo);
    for (int e : {1, 2}) CHECK(static_cast<int>(c.edge_flaps[e].size()) == lo);
    check_correspondence(c);

    // canonical states are fixed points; two tails get their head at v
    auto states = enumerate_states(c.inst, kBig);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& st = states[i];
        auto can = canonicalize(c, st);
        CHECK(validate_state(c.inst, can.state));
        CHECK(is_canonical(c, can.state));
        if (is_canonical(c, st)) CHECK(can.state == st);
        for (std::size_t e = 0; e < c.edge_flaps.size(); ++e) {
            const auto& fl = c.edge_flaps[e];
            if (st.sides[fl.front()] != st.sides[fl.back()]) CHECK_FALSE((can.orientation >> e & 1));
        }
        if (i % 10 == 0) CHECK(reachable(c.inst, st, can.state, kBig));
    }
    for (auto o : satisfying_orientations(g)) CHECK(canonicalize(c, encode(c, o)).orientation == o);
    CHECK_THROWS_AS(encode(c, 0), NoWitness);  // every edge leaves the vertex
}

TEST_CASE("compiled OR vertex, turns and a crossing") {
    NclGraph g;
    g.num_vertices = 4;
    g.terminals = {1, 2, 3};
    g.edges = {{0, 1, NclColor::Blue}, {0, 2, NclColor::Blue}, {3, 0, NclColor::Blue}};
    GridRouting r;
    r.scale = 24;
    r.positions = {{0, 0}, {0, 2}, {-1, 0}, {2, -1}};
    r.paths = {{{0, 0}, {0, 2}}, {{0, 0}, {-1, 0}}, {{2, -1}, {2, 0}, {0, 0}}};
    auto c = compile_ncl(g, r, 0);
    check_correspondence(c);

    // two straight stubs through one crossover
    NclGraph x;
    x.num_vertices = 4;
    x.terminals = {0, 1, 2, 3};
    x.edges = {{0, 1, NclColor::Blue}, {2, 3, NclColor::Blue}};
    GridRouting xr;
    xr.scale = 24;
    xr.positions = {{-1, 0}, {1, 0}, {0, 1}, {0, -1}};
    xr.paths = {{{-1, 0}, {1, 0}}, {{0, 1}, {0, -1}}};
    auto cx = compile_ncl(x, xr, 0);
    auto n0 = cx.edge_flaps[0].size(), n1 = cx.edge_flaps[1].size();
    CHECK(count_states(cx.inst, kBig) == (n0 + 1) * (n1 + 1));
    check_correspondence(cx);
}

TEST_CASE("matching reduction compiles to (k+1) states per matching") {
    auto g = triple();
    auto r = triple_routing();
    auto [lo, hi] = red_length_range(g, r);
    REQUIRE(lo <= hi);
    for (int k : {lo, lo + 1}) {
        if (k > hi) break;
        auto c = compile_ncl(g, r, k);
        auto states = enumerate_states(c.inst, kBig);
        // three matchings, one free red edge each
        CHECK(static_cast<long>(states.size()) == 3 * (k + 1));
        CHECK(static_cast<long>(states.size()) == hand_count(c));
        auto comps = flap_components(c.inst, kBig);
        CHECK(comps.size() == 3);
        for (const auto& comp : comps) CHECK(static_cast<int>(comp.size()) == k + 1);
    }
}

TEST_CASE("routing errors") {
    auto g = and_with_stubs();
    auto ok = and_routing(20);
    auto k = red_length_range(g, ok).first;
    CHECK_NOTHROW(compile_ncl(g, ok, k));

    auto r = ok;
    r.paths[0] = {{0, 0}, {0, -2}};  // misses its terminal
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    r = ok;
    r.paths[0] = {{0, 0}, {1, -1}};
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    r = ok;
    r.positions[1] = {1, 0};  // terminal on top of another
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    r = ok;
    r.positions[1] = {1, 1};
    r.paths[0] = {{0, 0}, {1, 0}, {1, 1}};  // shares the segment to terminal 3
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    r = ok;
    r.paths.pop_back();
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    r = ok;
    r.scale = 8;
    CHECK_THROWS_AS(compile_ncl(g, r, k), RoutingInvalid);
    CHECK_THROWS_AS(compile_ncl(g, ok, 1), RoutingInvalid);

    // a path that turns where another crosses
    NclGraph x;
    x.num_vertices = 4;
    x.terminals = {0, 1, 2, 3};
    x.edges = {{0, 1, NclColor::Blue}, {2, 3, NclColor::Blue}};
    GridRouting xr;
    xr.positions = {{-1, 0}, {1, 0}, {0, 1}, {1, 1}};
    xr.paths = {{{-1, 0}, {1, 0}}, {{0, 1}, {0, 0}, {1, 0}, {1, 1}}};
    CHECK_THROWS_AS(compile_ncl(x, xr, 0), RoutingInvalid);
    xr.paths = {{{-1, 0}, {1, 0}}, {{0, 1}, {0, 0}, {0, -1}, {1, -1}, {1, 1}}};
    CHECK_THROWS_AS(compile_ncl(x, xr, 0), RoutingInvalid);
}
