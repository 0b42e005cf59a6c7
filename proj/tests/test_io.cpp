#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "foldwork/errors.hpp"
#include "foldwork/generators.hpp"
#include "foldwork/io.hpp"
#include "foldwork/svg.hpp"

using namespace foldwork;
using io::Json;

namespace {

int count_of(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

// parse -> write -> parse -> write must be stable after the first write
template <class Read>
void check_stable(const Json& j, Read read) {
    auto once = io::dump(io::to_json(read(j)));
    auto twice = io::dump(io::to_json(read(io::parse(once))));
    CHECK(once == twice);
}

}  // namespace

TEST_CASE("rationals are [num, den]") {
    CHECK(io::to_json(Rat(3, 4)) == Json::parse("[3,4]"));
    CHECK(io::to_json(Rat(-6, 4)) == Json::parse("[-3,2]"));
    CHECK(io::rat_from_json(Json::parse("[6,-4]")) == Rat(-3, 2));
    CHECK(io::rat_from_json(Json::parse("7")) == Rat(7));
    BigInt huge("123456789012345678901234567890");
    auto j = io::to_json(Rat(huge, BigInt(7)));
    CHECK(j[0].is_string());
    CHECK(io::rat_from_json(j) == Rat(huge, BigInt(7)));
    CHECK_THROWS_AS(io::rat_from_json(Json::parse("[1,0]")), InvalidInput);
    CHECK_THROWS_AS(io::rat_from_json(Json::parse("[1]")), InvalidInput);
    CHECK_THROWS_AS(io::rat_from_json(Json::parse("1.5")), InvalidInput);
}

TEST_CASE("crease pattern round trip") {
    for (const auto& cp : {gen::strip(3, {FoldLabel::Mountain, std::nullopt}), gen::map(2, 3),
                           gen::fan({Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, -1)})}) {
        auto j = io::to_json(cp);
        auto back = io::crease_pattern_from_json(j);
        CHECK(io::to_json(back) == j);
        check_stable(j, io::crease_pattern_from_json);
    }
    // clockwise boundary is normalized once, then stable
    auto j = io::parse(R"({"boundary":[[0,0],[0,1],[1,1],[1,0]],"creases":[]})");
    auto first = io::to_json(io::crease_pattern_from_json(j));
    CHECK(first != j);
    check_stable(j, io::crease_pattern_from_json);

    CHECK_THROWS_AS(io::crease_pattern_from_json(io::parse(R"({"creases":[]})")), InvalidInput);
    CHECK_THROWS_AS(io::crease_pattern_from_json(io::parse(
                        R"({"boundary":[[0,0],[1,0],[1,1]],"creases":[{"a":[0,0],"b":[1,1],"label":"X"}]})")),
                    InvalidInput);
}

TEST_CASE("flap instance and state round trip") {
    auto bp = make_gadget(GadgetKind::Turn);
    auto inst = bp.instance();
    auto j = io::to_json(inst);
    CHECK(io::to_json(io::flap_instance_from_json(j)) == j);
    check_stable(j, io::flap_instance_from_json);
    for (const auto& st : enumerate_states(inst)) {
        auto sj = io::to_json(st);
        CHECK(io::flap_state_from_json(sj) == st);
    }
    // reversed pair is flipped into (i, j) order
    auto st = io::flap_state_from_json(io::parse(R"({"sides":[0,1],"orders":[[1,0,"above"]]})"));
    REQUIRE(st.orders.size() == 1);
    CHECK(st.orders[0].i == 0);
    CHECK_FALSE(st.orders[0].i_above);
    CHECK_THROWS_AS(io::flap_state_from_json(io::parse(R"({"sides":[2],"orders":[]})")), InvalidInput);
    CHECK_THROWS_AS(io::flap_instance_from_json(io::parse(R"({"side":[5,1],"flaps":[{"a":[0,0],"b":[0,4]}]})")),
                    InvalidInput);
}

TEST_CASE("NCL graph, orientation and biadjacency round trip") {
    auto g = matchings_to_ncl({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    auto j = io::to_json(g);
    check_stable(j, io::ncl_graph_from_json);
    auto back = io::ncl_graph_from_json(j);
    CHECK(back.num_vertices == g.num_vertices);
    CHECK(back.num_edges() == g.num_edges());
    Orientation o = 0b1011;
    CHECK(io::orientation_from_json(g, io::orientation_json(g, o)) == o);
    Biadjacency b{{3}};
    CHECK(io::biadjacency_from_json(io::biadjacency_json(b)) == b);
    CHECK_THROWS_AS(io::biadjacency_from_json(io::parse("[[1,1],[1]]")), InvalidInput);
    CHECK_THROWS_AS(io::ncl_graph_from_json(io::parse(R"({"vertices":2,"edges":[{"u":0,"v":1,"color":"green"}]})")),
                    InvalidInput);
    CHECK_THROWS_AS(io::orientation_from_json(g, io::parse("[0,1]")), InvalidInput);
}

TEST_CASE("blueprint and routing round trip") {
    for (auto k : {GadgetKind::Edge, GadgetKind::And, GadgetKind::AndCorner, GadgetKind::Or, GadgetKind::Turn,
                   GadgetKind::Crossover}) {
        auto bp = make_gadget(k, 3);
        auto j = io::to_json(bp);
        auto back = io::blueprint_from_json(j);
        CHECK(back.flaps == bp.flaps);
        CHECK(back.chains == bp.chains);
        CHECK(io::to_json(back) == j);
    }
    GridRouting r;
    r.scale = 20;
    r.positions = {{0, 0}, {0, -1}};
    r.paths = {{{0, 0}, {0, -1}}};
    auto j = io::to_json(r);
    check_stable(j, io::routing_from_json);
    CHECK_THROWS_AS(io::blueprint_from_json(io::parse(R"({"kind":"and","flaps":[{"a":[0,0],"d":[1,1]}],"ports":[],"chains":[]})")),
                    InvalidInput);
}

TEST_CASE("parse errors are input errors") {
    CHECK_THROWS_AS(io::parse("{"), InvalidInput);
    CHECK_THROWS_AS(io::read_file("/nonexistent/x.json"), InvalidInput);
}

TEST_CASE("svg: ply shading") {
    auto one = svg::arrangement(fold_arrangement(gen::strip(1)));
    CHECK(count_of(one, "<title>cell") == 1);
    CHECK(count_of(one, "ply 1<") == 1);
    auto half = svg::arrangement(fold_arrangement(gen::strip(2)));
    CHECK(count_of(half, "<title>cell") == 1);
    CHECK(count_of(half, "ply 2<") == 1);
    auto map = svg::arrangement(fold_arrangement(gen::map(2, 2)));
    CHECK(count_of(map, "ply 4<") == 1);
    CHECK(svg::arrangement(fold_arrangement(gen::map(2, 2))) == map);
    CHECK(one.rfind("<?xml", 0) == 0);
    CHECK(count_of(svg::crease_pattern(gen::map(2, 2)), "<line") == gen::map_crease_count(2, 2));
}

TEST_CASE("svg: compiled AND gadget renders all hinges") {
    NclGraph g;
    g.num_vertices = 4;
    g.terminals = {1, 2, 3};
    g.edges = {{0, 1, NclColor::Blue}, {0, 2, NclColor::Red}, {0, 3, NclColor::Red}};
    GridRouting r;
    r.scale = 20;
    r.positions = {{0, 0}, {0, -1}, {-1, 0}, {1, 0}};
    r.paths = {{{0, 0}, {0, -1}}, {{0, 0}, {-1, 0}}, {{0, 0}, {1, 0}}};
    auto c = compile_ncl(g, r, red_length_range(g, r).first);
    auto doc = svg::flaps(c.inst);
    CHECK(count_of(doc, "<line") == c.inst.size());
    CHECK(svg::flaps(c.inst) == doc);

    std::ifstream in(FOLDWORK_GOLDEN_DIR "/and_compiled.svg");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == doc);

    auto st = encode(c, 0b111);
    auto placed = svg::flaps(c.inst, &st);
    CHECK(count_of(placed, "<title>flap") == c.inst.size());
}
