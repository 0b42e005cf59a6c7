#include "foldwork/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "foldwork/errors.hpp"

namespace foldwork::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput(what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object with '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

const Json& array(const Json& j, const char* what) {
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    return j;
}

int to_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    auto v = j.get<long long>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        bad(std::string(what) + " out of range");
    return static_cast<int>(v);
}

BigInt big_from(const Json& j) {
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        BigInt v;
        if (v.set_str(j.get<std::string>(), 10) != 0) bad("bad integer string '" + j.get<std::string>() + "'");
        return v;
    }
    bad("expected an integer");
}

const char* color_name(NclColor c) { return c == NclColor::Blue ? "blue" : "red"; }

NclColor color_from(const Json& j) {
    if (j == "blue") return NclColor::Blue;
    if (j == "red") return NclColor::Red;
    bad("color must be \"red\" or \"blue\"");
}

Json grid_point(const GridPoint& p) { return Json::array({p.x, p.y}); }

GridPoint grid_point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) bad("grid point must be [x, y]");
    return {to_int(j[0], "grid x"), to_int(j[1], "grid y")};
}

}  // namespace

Json bigint_json(const BigInt& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

Json to_json(const Rat& r) { return Json::array({bigint_json(r.num()), bigint_json(r.den())}); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_string()) return Rat(big_from(j), BigInt(1));
    if (!j.is_array() || j.size() != 2) bad("rational must be [num, den]");
    BigInt d = big_from(j[1]);
    if (d == 0) bad("zero denominator");
    return Rat(big_from(j[0]), d);
}

Json to_json(const Point& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

Point point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) bad("point must be [x, y]");
    return {rat_from_json(j[0]), rat_from_json(j[1])};
}

Json to_json(const CreasePattern& cp) {
    Json j;
    j["boundary"] = Json::array();
    for (const auto& p : cp.boundary) j["boundary"].push_back(to_json(p));
    j["creases"] = Json::array();
    for (const auto& c : cp.creases) {
        Json e{{"a", to_json(c.a)}, {"b", to_json(c.b)}};
        e["label"] = c.label ? Json(*c.label == FoldLabel::Mountain ? "M" : "V") : Json(nullptr);
        if (c.ray) e["ray"] = true;
        j["creases"].push_back(e);
    }
    return j;
}

CreasePattern crease_pattern_from_json(const Json& j) {
    CreasePattern cp;
    for (const auto& p : array(field(j, "boundary"), "boundary")) cp.boundary.push_back(point_from_json(p));
    for (const auto& e : array(field(j, "creases"), "creases")) {
        Crease c;
        c.a = point_from_json(field(e, "a"));
        c.b = point_from_json(field(e, "b"));
        if (auto it = e.find("label"); it != e.end() && !it->is_null()) {
            if (*it == "M") c.label = FoldLabel::Mountain;
            else if (*it == "V") c.label = FoldLabel::Valley;
            else bad("label must be \"M\", \"V\" or null");
        }
        if (auto it = e.find("ray"); it != e.end()) {
            if (!it->is_boolean()) bad("ray must be a boolean");
            c.ray = it->get<bool>();
        }
        cp.creases.push_back(c);
    }
    cp.validate();
    return cp.normalized();
}

Json to_json(const FlapInstance& inst) {
    Json j{{"side", to_json(inst.side)}, {"flaps", Json::array()}};
    for (const auto& h : inst.flaps) j["flaps"].push_back({{"a", to_json(h.a)}, {"b", to_json(h.b)}});
    return j;
}

FlapInstance flap_instance_from_json(const Json& j) {
    FlapInstance inst;
    inst.side = rat_from_json(field(j, "side"));
    for (const auto& f : array(field(j, "flaps"), "flaps"))
        inst.flaps.push_back({point_from_json(field(f, "a")), point_from_json(field(f, "b"))});
    inst.check();
    return inst;
}

Json to_json(const FlapState& st) {
    Json j{{"sides", st.sides}, {"orders", Json::array()}};
    for (const auto& o : st.orders) j["orders"].push_back({o.i, o.j, o.i_above ? "above" : "below"});
    return j;
}

FlapState flap_state_from_json(const Json& j) {
    FlapState st;
    for (const auto& s : array(field(j, "sides"), "sides")) {
        int v = to_int(s, "side");
        if (v != 0 && v != 1) bad("sides must be 0 or 1");
        st.sides.push_back(v);
    }
    for (const auto& o : array(field(j, "orders"), "orders")) {
        if (!o.is_array() || o.size() != 3) bad("order must be [i, j, \"above\"|\"below\"]");
        int a = to_int(o[0], "order i"), b = to_int(o[1], "order j");
        if (o[2] != "above" && o[2] != "below") bad("order must say \"above\" or \"below\"");
        bool above = o[2] == "above";
        if (a > b) std::swap(a, b), above = !above;
        st.orders.push_back({a, b, above});
    }
    std::sort(st.orders.begin(), st.orders.end(),
              [](const PairOrder& x, const PairOrder& y) { return std::pair(x.i, x.j) < std::pair(y.i, y.j); });
    return st;
}

Json to_json(const NclGraph& g) {
    Json j{{"vertices", g.num_vertices}, {"edges", Json::array()}};
    for (const auto& e : g.edges) j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"color", color_name(e.color)}});
    if (!g.terminals.empty()) j["terminals"] = g.terminals;
    return j;
}

NclGraph ncl_graph_from_json(const Json& j) {
    NclGraph g;
    g.num_vertices = to_int(field(j, "vertices"), "vertices");
    for (const auto& e : array(field(j, "edges"), "edges"))
        g.edges.push_back({to_int(field(e, "u"), "u"), to_int(field(e, "v"), "v"), color_from(field(e, "color"))});
    if (auto it = j.find("terminals"); it != j.end()) {
        for (const auto& t : array(*it, "terminals")) g.terminals.push_back(to_int(t, "terminal"));
        std::sort(g.terminals.begin(), g.terminals.end());
    }
    g.check();
    return g;
}

Json orientation_json(const NclGraph& g, Orientation o) {
    Json j = Json::array();
    for (int e = 0; e < g.num_edges(); ++e) j.push_back(static_cast<int>(o >> e & 1));
    return j;
}

Orientation orientation_from_json(const NclGraph& g, const Json& j) {
    if (!j.is_array() || static_cast<int>(j.size()) != g.num_edges()) bad("orientation needs one bit per edge");
    if (g.num_edges() > 64) bad("at most 64 edges");
    Orientation o = 0;
    for (int e = 0; e < g.num_edges(); ++e) {
        int b = to_int(j[static_cast<std::size_t>(e)], "orientation bit");
        if (b != 0 && b != 1) bad("orientation bits must be 0 or 1");
        if (b) o |= Orientation{1} << e;
    }
    return o;
}

Json biadjacency_json(const Biadjacency& b) { return Json(b); }

Biadjacency biadjacency_from_json(const Json& j) {
    Biadjacency b;
    for (const auto& row : array(j, "biadjacency")) {
        b.emplace_back();
        for (const auto& x : array(row, "biadjacency row")) {
            int v = to_int(x, "multiplicity");
            if (v < 0) bad("multiplicities must be non-negative");
            b.back().push_back(v);
        }
    }
    for (const auto& row : b)
        if (row.size() != b.size()) bad("biadjacency matrix must be square");
    return b;
}

Json to_json(const GadgetBlueprint& bp) {
    Json j{{"kind", gadget_name(bp.kind)}, {"flaps", Json::array()}, {"ports", Json::array()}, {"chains", bp.chains}};
    for (const auto& f : bp.flaps) j["flaps"].push_back({{"a", {f.ax, f.ay}}, {"d", {f.dx, f.dy}}});
    for (const auto& p : bp.ports)
        j["ports"].push_back(
            {{"name", p.name}, {"color", color_name(p.color)}, {"chain", p.chain}, {"out_side", p.out_side}});
    return j;
}

GadgetBlueprint blueprint_from_json(const Json& j) {
    GadgetBlueprint bp;
    if (!field(j, "kind").is_string()) bad("kind must be a string");
    bp.kind = parse_gadget_kind(field(j, "kind").get<std::string>());
    for (const auto& f : array(field(j, "flaps"), "flaps")) {
        auto a = grid_point_from(field(f, "a")), d = grid_point_from(field(f, "d"));
        if (d.x * d.x + d.y * d.y != 25) bad("flap direction must have length 5");
        bp.flaps.push_back({a.x, a.y, d.x, d.y});
    }
    const int n = static_cast<int>(bp.flaps.size());
    auto index_list = [&](const Json& arr) {
        std::vector<int> out;
        for (const auto& x : array(arr, "chain")) {
            int v = to_int(x, "flap index");
            if (v < 0 || v >= n) bad("flap index out of range");
            out.push_back(v);
        }
        return out;
    };
    for (const auto& c : array(field(j, "chains"), "chains")) bp.chains.push_back(index_list(c));
    for (const auto& p : array(field(j, "ports"), "ports")) {
        GadgetPort port;
        if (!field(p, "name").is_string()) bad("port name must be a string");
        port.name = field(p, "name").get<std::string>();
        port.color = color_from(field(p, "color"));
        port.chain = index_list(field(p, "chain"));
        port.out_side = to_int(field(p, "out_side"), "out_side");
        if (port.out_side != 0 && port.out_side != 1) bad("out_side must be 0 or 1");
        if (port.chain.empty()) bad("port chain is empty");
        bp.ports.push_back(port);
    }
    bp.instance().check();
    return bp;
}

Json to_json(const GridRouting& r) {
    Json j{{"scale", r.scale}, {"positions", Json::array()}, {"paths", Json::array()}};
    for (const auto& p : r.positions) j["positions"].push_back(grid_point(p));
    for (const auto& path : r.paths) {
        Json pj = Json::array();
        for (const auto& p : path) pj.push_back(grid_point(p));
        j["paths"].push_back(pj);
    }
    return j;
}

GridRouting routing_from_json(const Json& j) {
    GridRouting r;
    if (auto it = j.find("scale"); it != j.end()) r.scale = to_int(*it, "scale");
    if (r.scale <= 0) bad("scale must be positive");
    for (const auto& p : array(field(j, "positions"), "positions")) r.positions.push_back(grid_point_from(p));
    for (const auto& path : array(field(j, "paths"), "paths")) {
        r.paths.emplace_back();
        for (const auto& p : array(path, "path")) r.paths.back().push_back(grid_point_from(p));
    }
    return r;
}

Json to_json(const CompiledNcl& c) {
    return {{"graph", to_json(c.graph)}, {"instance", to_json(c.inst)}, {"edge_flaps", c.edge_flaps}};
}

Json to_json(const NiceTreeDecomposition& ntd) {
    static const char* tags[] = {"leaf", "introduce", "forget", "join"};
    Json nodes = Json::array();
    for (int i = 0; i < ntd.size(); ++i) {
        const auto& nd = ntd.nodes[static_cast<std::size_t>(i)];
        Json n{{"node", i}, {"tag", tags[static_cast<int>(nd.kind)]}, {"bag", nd.bag}, {"children", nd.children}};
        if (nd.vertex >= 0) n["vertex"] = nd.vertex;
        nodes.push_back(n);
    }
    return {{"root", ntd.root}, {"width", ntd.width()}, {"nodes", nodes}};
}

Json layering_json(const GlobalLayering& l) {
    Json j = Json::object();
    for (std::size_t c = 0; c < l.size(); ++c) j[std::to_string(c)] = l[c];
    return j;
}

Json to_json(const CyclicPolygonSolution& s) {
    return {{"r", s.r}, {"angles", s.angles}, {"residual", s.residual}, {"iterations", s.iterations}};
}

Json to_json(const Bipyramid3D& b) {
    auto v3 = [](const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); };
    Json eq = Json::array();
    for (const auto& v : b.equator) eq.push_back(v3(v));
    return {{"r", b.r}, {"s", b.s}, {"ell", b.ell}, {"angles", b.angles},
            {"equator", eq}, {"north", v3(b.north)}, {"south", v3(b.south)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(std::string("JSON: ") + e.what());
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace foldwork::io
