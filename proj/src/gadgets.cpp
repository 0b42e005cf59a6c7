#include "foldwork/gadgets.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <optional>
#include <string>

#include "foldwork/errors.hpp"

namespace foldwork {

Hinge GridFlap::hinge() const {
    return {Point(ax, ay), Point(ax - dy, ay + dx)};
}

GridFlap GridFlap::reversed() const {
    return {ax - dy, ay + dx, -dx, -dy};
}

namespace {

using Chain = std::vector<GridFlap>;

constexpr GridFlap kE{0, 0, 5, 0}, kN{0, 0, 0, 5}, kW{0, 0, -5, 0}, kS{0, 0, 0, -5};

// Vertex gadgets, one chain per port from the central flap out to an
// axis-aligned exit. All found by exhaustive search over small integer
// windows and rechecked by enumeration in the tests.
const std::vector<Chain> kAndT{
    {{0, 0, 0, -5}, {4, -5, 0, -5}, {3, -9, 0, -5}},  // blue, S
    {{1, 1, -3, 4}, {-5, 5, -5, 0}},                  // red, W
    {{5, 0, 5, 0}, {10, 2, 5, 0}},                    // red, E
};
const std::vector<Chain> kAndL{
    {{0, 0, -5, 0}, {-5, 3, -5, 0}, {-9, 6, -5, 0}},  // blue, W
    {{1, -7, 5, 0}, {5, -10, 5, 0}, {10, -6, 5, 0}},  // red, E
    {{5, 0, 0, 5}, {6, 5, 0, 5}},                     // red, N
};
const std::vector<Chain> kOrT{
    {{0, 0, -5, 0}, {-4, -4, -5, 0}, {-8, -2, -5, 0}},   // W
    {{2, 0, 4, 3}, {0, 3, 5, 0}, {5, 3, 5, 0}},          // E
    {{1, -4, 0, -5}, {5, -6, 0, -5}, {3, -10, 0, -5}},  // S
};
const Chain kTurn{{-3, -3, 5, 0}, {-1, 0, 4, 3}, {2, 3, 0, 5}};
// the outer flaps sit a full side length out, touching their neighbours'
// squares along the hinge, which keeps run flaps clear of the slanted middle
const Chain kCrossH{{-11, -2, 5, 0}, {-6, -2, 5, 0}, {-5, -2, 3, -4}, {0, -1, 3, -4}, {6, -2, 5, 0}, {11, -2, 5, 0}};
const Chain kCrossV{{2, -11, 0, 5}, {2, -6, 0, 5}, {2, -4, 4, 3}, {1, 1, 4, 3}, {2, 6, 0, 5}, {2, 11, 0, 5}};

struct Dir {
    int x = 0, y = 0;  // unit axis vector
    friend bool operator==(const Dir&, const Dir&) = default;
    Dir operator-() const { return {-x, -y}; }
};

Dir dir_of(const GridFlap& f) { return {f.dx / 5, f.dy / 5}; }

// One of the eight symmetries of the square lattice.
struct Sym {
    int m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    Dir operator()(Dir d) const { return {m00 * d.x + m01 * d.y, m10 * d.x + m11 * d.y}; }
    GridFlap operator()(const GridFlap& f, int ox, int oy) const {
        int ax = f.ax, ay = f.ay;
        if (m00 * m11 - m01 * m10 < 0) {  // a reflection swaps the hinge ends
            ax -= f.dy;
            ay += f.dx;
        }
        return {ox + m00 * ax + m01 * ay, oy + m10 * ax + m11 * ay, m00 * f.dx + m01 * f.dy,
                m10 * f.dx + m11 * f.dy};
    }
};

std::optional<Sym> sym_mapping(Dir from1, Dir to1, Dir from2, Dir to2) {
    for (int a : {-1, 0, 1})
        for (int b : {-1, 0, 1})
            for (int c : {-1, 0, 1})
                for (int d : {-1, 0, 1}) {
                    Sym s{a, b, c, d};
                    int det = a * d - b * c;
                    if (det != 1 && det != -1) continue;
                    if (std::abs(a) + std::abs(b) != 1 || std::abs(c) + std::abs(d) != 1) continue;
                    if (s(from1) == to1 && s(from2) == to2) return s;
                }
    return std::nullopt;
}

std::vector<GadgetPort> vertex_ports(const std::vector<Chain>& chains, bool and_gate) {
    std::vector<GadgetPort> ports;
    int next = 0;
    const char* names_and[] = {"blue", "red1", "red2"};
    const char* names_or[] = {"blue1", "blue2", "blue3"};
    for (std::size_t p = 0; p < chains.size(); ++p) {
        GadgetPort port;
        port.name = and_gate ? names_and[p] : names_or[p];
        port.color = and_gate && p > 0 ? NclColor::Red : NclColor::Blue;
        for (std::size_t i = 0; i < chains[p].size(); ++i) port.chain.push_back(next++);
        ports.push_back(port);
    }
    return ports;
}

}  // namespace

FlapInstance GadgetBlueprint::instance() const {
    FlapInstance inst;
    for (const auto& f : flaps) inst.flaps.push_back(f.hinge());
    return inst;
}

const char* gadget_name(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::Edge: return "edge";
        case GadgetKind::And: return "and";
        case GadgetKind::AndCorner: return "and-corner";
        case GadgetKind::Or: return "or";
        case GadgetKind::Turn: return "turn";
        case GadgetKind::Crossover: return "crossover";
    }
    return "?";
}

GadgetKind parse_gadget_kind(const std::string& s) {
    for (auto k : {GadgetKind::Edge, GadgetKind::And, GadgetKind::AndCorner, GadgetKind::Or, GadgetKind::Turn,
                   GadgetKind::Crossover})
        if (s == gadget_name(k)) return k;
    throw InvalidInput("unknown gadget kind '" + s + "'");
}

GadgetBlueprint make_gadget(GadgetKind kind, int k) {
    GadgetBlueprint bp;
    bp.kind = kind;
    auto add_chain = [&](const Chain& c) {
        std::vector<int> idx;
        for (const auto& f : c) {
            idx.push_back(static_cast<int>(bp.flaps.size()));
            bp.flaps.push_back(f);
        }
        bp.chains.push_back(idx);
        return idx;
    };
    switch (kind) {
        case GadgetKind::Edge: {
            if (k < 1) throw InvalidInput("an edge gadget needs at least one flap");
            Chain c;
            for (int i = 0; i < k; ++i) c.push_back({2 * i, 0, 5, 0});
            auto idx = add_chain(c);
            bp.ports.push_back({"u", NclColor::Blue, {idx.front()}, 0});
            bp.ports.push_back({"v", NclColor::Blue, {idx.back()}, 1});
            break;
        }
        case GadgetKind::And:
        case GadgetKind::AndCorner:
        case GadgetKind::Or: {
            const auto& t = kind == GadgetKind::Or ? kOrT : kind == GadgetKind::And ? kAndT : kAndL;
            for (const auto& c : t) add_chain(c);
            bp.ports = vertex_ports(t, kind != GadgetKind::Or);
            break;
        }
        case GadgetKind::Turn: {
            auto idx = add_chain(kTurn);
            bp.ports.push_back({"west", NclColor::Blue, {idx.front()}, 0});
            bp.ports.push_back({"north", NclColor::Blue, {idx.back()}, 1});
            break;
        }
        case GadgetKind::Crossover: {
            auto h = add_chain(kCrossH);
            auto v = add_chain(kCrossV);
            bp.ports.push_back({"west", NclColor::Blue, {h.front()}, 0});
            bp.ports.push_back({"east", NclColor::Blue, {h.back()}, 1});
            bp.ports.push_back({"south", NclColor::Blue, {v.front()}, 0});
            bp.ports.push_back({"north", NclColor::Blue, {v.back()}, 1});
            break;
        }
    }
    return bp;
}

std::set<unsigned> port_patterns(const GadgetBlueprint& bp, const FlapBudget& budget) {
    std::set<unsigned> out;
    for (const auto& st : enumerate_states(bp.instance(), budget)) {
        unsigned p = 0;
        for (std::size_t i = 0; i < bp.ports.size(); ++i) {
            const auto& port = bp.ports[i];
            if (st.sides[static_cast<std::size_t>(port.chain.front())] == port.out_side) p |= 1u << i;
        }
        out.insert(p);
    }
    return out;
}

bool chains_monotone(const std::vector<std::vector<int>>& chains, const FlapState& st) {
    for (const auto& c : chains)
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (st.sides[static_cast<std::size_t>(c[i])] > st.sides[static_cast<std::size_t>(c[i + 1])]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// compilation

namespace {

struct Route {
    std::vector<GridPoint> pts;  // unit steps
    Dir dir(std::size_t i) const { return {pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y}; }
};

Route expand(const std::vector<GridPoint>& poly, int e) {
    auto fail = [&](const std::string& why) { return RoutingInvalid("edge " + std::to_string(e) + ": " + why); };
    if (poly.size() < 2) throw fail("path needs at least two points");
    Route r{{poly.front()}};
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        int dx = poly[i + 1].x - poly[i].x, dy = poly[i + 1].y - poly[i].y;
        if ((dx != 0) == (dy != 0)) throw fail("segments must be axis-parallel and nonempty");
        int n = std::abs(dx + dy);
        for (int s = 1; s <= n; ++s) r.pts.push_back({poly[i].x + s * (dx > 0) - s * (dx < 0), poly[i].y + s * (dy > 0) - s * (dy < 0)});
    }
    auto sorted = r.pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw fail("path revisits a grid point");
    return r;
}

struct Plan {
    // Fixed pieces in travel order; consecutive pieces are joined by runs.
    std::vector<Chain> pieces;
};

GridPoint scaled(GridPoint p, int scale) { return {p.x * scale, p.y * scale}; }

// Flap at a terminal, hinge across the path.
GridFlap terminal_flap(GridPoint at, Dir d) {
    // hinge runs from at - 2*left to at + 3*left, left = rot90(d)
    return {at.x + 2 * d.y, at.y - 2 * d.x, 5 * d.x, 5 * d.y};
}

struct RunShape {
    int forward = 0, lateral = 0;  // in flap units between the two anchors
    int min_m = 0, max_m = -1;     // interior steps in the drifting middle
};

constexpr int kLead = 3;  // straight step next to a fixed piece

RunShape run_shape(const GridFlap& p, const GridFlap& q) {
    RunShape s;
    Dir d = dir_of(p);
    s.forward = (q.ax - p.ax) * d.x + (q.ay - p.ay) * d.y;
    s.lateral = (q.ax - p.ax) * -d.y + (q.ay - p.ay) * d.x;
    int mid = s.forward - 2 * kLead;
    if (mid < 0) return s;
    if (mid == 0) {
        if (s.lateral == 0) s.min_m = s.max_m = 0;
        return s;
    }
    s.min_m = std::max({(mid + 3) / 4, (std::abs(s.lateral) + 1) / 2, 1});
    s.max_m = mid;
    return s;
}

// m + 1 flaps strictly between p and q.
Chain make_run(const GridFlap& p, const GridFlap& q, int m) {
    const RunShape s = run_shape(p, q);
    Dir d = dir_of(p);
    Dir l{-d.y, d.x};
    auto at = [&](int fwd, int lat) { return GridFlap{p.ax + fwd * d.x + lat * l.x, p.ay + fwd * d.y + lat * l.y, p.dx, p.dy}; };
    Chain out;
    int mid = s.forward - 2 * kLead;
    for (int i = 0; i <= m; ++i) {
        int fwd = m == 0 ? 0 : mid * i / m;
        int lat = m == 0 ? 0 : s.lateral * i / m;
        out.push_back(at(kLead + fwd, lat));
    }
    return out;
}

class Compiler {
public:
    Compiler(const NclGraph& g, const GridRouting& r) : g_(g), r_(r) {
        g.check();
        if (r.scale < 1) throw RoutingInvalid("scale must be positive");
        if (static_cast<int>(r.positions.size()) != g.num_vertices)
            throw RoutingInvalid("routing has " + std::to_string(r.positions.size()) + " positions for " +
                                 std::to_string(g.num_vertices) + " vertices");
        if (static_cast<int>(r.paths.size()) != g.num_edges())
            throw RoutingInvalid("routing has " + std::to_string(r.paths.size()) + " paths for " +
                                 std::to_string(g.num_edges()) + " edges");
        check_positions();
        for (int e = 0; e < g.num_edges(); ++e) routes_.push_back(expand(r.paths[static_cast<std::size_t>(e)], e));
        check_occupancy();
        build_vertices();
        for (int e = 0; e < g.num_edges(); ++e) plans_.push_back(plan(e));
    }

    std::pair<int, int> red_range() const {
        int lo = 0, hi = 1 << 30;
        bool any = false;
        for (int e = 0; e < g_.num_edges(); ++e) {
            if (g_.edges[static_cast<std::size_t>(e)].color != NclColor::Red) continue;
            auto [a, b] = length_range(e);
            lo = std::max(lo, a);
            hi = std::min(hi, b);
            any = true;
        }
        if (!any) return {1, 0};
        return {lo, hi};
    }

    CompiledNcl build(int k) const {
        CompiledNcl out;
        out.graph = g_;
        for (int e = 0; e < g_.num_edges(); ++e) {
            const auto& plan = plans_[static_cast<std::size_t>(e)];
            auto shapes = run_shapes(plan);
            std::vector<int> m;
            for (const auto& s : shapes) m.push_back(s.min_m);
            if (g_.edges[static_cast<std::size_t>(e)].color == NclColor::Red) {
                auto [lo, hi] = length_range(e);
                if (k < lo || k > hi)
                    throw RoutingInvalid("red edge " + std::to_string(e) + " takes between " + std::to_string(lo) +
                                         " and " + std::to_string(hi) + " flaps, not " + std::to_string(k));
                int extra = k - lo;
                // spread the surplus evenly over the runs
                while (extra > 0)
                    for (std::size_t i = 0; i < m.size() && extra > 0; ++i)
                        if (m[i] < shapes[i].max_m) {
                            ++m[i];
                            --extra;
                        }
            }
            std::vector<int> idx;
            auto push = [&](const GridFlap& f) {
                idx.push_back(out.inst.size());
                out.inst.flaps.push_back(f.hinge());
            };
            for (std::size_t p = 0; p < plan.pieces.size(); ++p) {
                if (p > 0) {
                    for (const auto& f : make_run(plan.pieces[p - 1].back(), plan.pieces[p].front(), m[p - 1])) push(f);
                }
                for (const auto& f : plan.pieces[p]) push(f);
            }
            out.edge_flaps.push_back(idx);
        }
        try {
            out.inst.check();
        } catch (const InvalidInput& ex) {
            throw RoutingInvalid(std::string("compiled hinges collide: ") + ex.what());
        }
        return out;
    }

private:
    struct Incidence {
        int edge = 0;
        Dir out;  // leaving the vertex
    };

    void check_positions() {
        auto sorted = r_.positions;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw RoutingInvalid("two vertices share a grid point");
    }

    void check_occupancy() {
        std::map<GridPoint, int> vertex_at;
        for (int v = 0; v < g_.num_vertices; ++v) vertex_at[r_.positions[static_cast<std::size_t>(v)]] = v;
        std::map<std::pair<GridPoint, GridPoint>, int> used;
        for (int e = 0; e < g_.num_edges(); ++e) {
            const auto& ed = g_.edges[static_cast<std::size_t>(e)];
            const auto& pts = routes_[static_cast<std::size_t>(e)].pts;
            if (pts.front() != r_.positions[static_cast<std::size_t>(ed.u)] ||
                pts.back() != r_.positions[static_cast<std::size_t>(ed.v)])
                throw RoutingInvalid("edge " + std::to_string(e) + " does not run from its u to its v");
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                auto key = std::minmax(pts[i], pts[i + 1]);
                if (!used.emplace(std::pair{key.first, key.second}, e).second)
                    throw RoutingInvalid("edges " + std::to_string(used[{key.first, key.second}]) + " and " +
                                         std::to_string(e) + " share a grid segment");
            }
            for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
                if (vertex_at.count(pts[i]))
                    throw RoutingInvalid("edge " + std::to_string(e) + " passes through vertex " +
                                         std::to_string(vertex_at[pts[i]]));
                occupants_[pts[i]].push_back({e, i});
            }
        }
        for (const auto& [pt, occ] : occupants_) {
            if (occ.size() == 1) continue;
            if (occ.size() > 2) throw RoutingInvalid("more than two paths meet at a grid point");
            for (auto [e, i] : occ) {
                const auto& rt = routes_[static_cast<std::size_t>(e)];
                if (!(rt.dir(i - 1) == rt.dir(i)))
                    throw RoutingInvalid("edge " + std::to_string(e) + " turns at a crossing");
            }
            auto [e0, i0] = occ[0];
            auto [e1, i1] = occ[1];
            Dir a = routes_[static_cast<std::size_t>(e0)].dir(i0), b = routes_[static_cast<std::size_t>(e1)].dir(i1);
            if (a.x * b.x + a.y * b.y != 0) throw RoutingInvalid("paths overlap instead of crossing");
        }
        for (int e = 0; e < g_.num_edges(); ++e) {
            const auto& ed = g_.edges[static_cast<std::size_t>(e)];
            const auto& rt = routes_[static_cast<std::size_t>(e)];
            inc_[ed.u].push_back({e, rt.dir(0)});
            inc_[ed.v].push_back({e, -rt.dir(rt.pts.size() - 2)});
        }
    }

    // Places each constrained vertex's gadget and records the chain that
    // starts each incident edge, outward from the vertex.
    void build_vertices() {
        for (int v = 0; v < g_.num_vertices; ++v) {
            if (g_.is_terminal(v)) continue;
            const auto& inc = inc_[v];
            for (std::size_t i = 0; i < inc.size(); ++i)
                for (std::size_t j = i + 1; j < inc.size(); ++j)
                    if (inc[i].out == inc[j].out)
                        throw RoutingInvalid("two edges leave vertex " + std::to_string(v) + " in the same direction");
            std::vector<const Incidence*> blue, red;
            for (const auto& x : inc)
                (g_.edges[static_cast<std::size_t>(x.edge)].color == NclColor::Blue ? blue : red).push_back(&x);
            const std::vector<Chain>* tmpl = nullptr;
            std::vector<const Incidence*> order;  // incidence per template port
            std::optional<Sym> sym;
            if (blue.size() == 1) {
                Dir b = blue[0]->out, r1 = red[0]->out, r2 = red[1]->out;
                if (r1 == -r2) {
                    tmpl = &kAndT;
                    sym = sym_mapping(dir_of(kS), b, dir_of(kW), r1);
                    order = {blue[0], red[0], red[1]};
                } else {
                    tmpl = &kAndL;
                    const Incidence* opp = r1 == -b ? red[0] : red[1];
                    const Incidence* side = r1 == -b ? red[1] : red[0];
                    sym = sym_mapping(dir_of(kW), b, dir_of(kN), side->out);
                    order = {blue[0], opp, side};
                }
            } else {
                tmpl = &kOrT;
                // the port opposite no other one becomes the stem
                const Incidence* stem = nullptr;
                for (const auto* x : blue) {
                    bool paired = false;
                    for (const auto* y : blue) paired = paired || x->out == -y->out;
                    if (!paired) stem = x;
                }
                std::vector<const Incidence*> arms;
                for (const auto* x : blue)
                    if (x != stem) arms.push_back(x);
                sym = sym_mapping(dir_of(kS), stem->out, dir_of(kW), arms[0]->out);
                order = {arms[0], arms[1], stem};
            }
            if (!sym) throw RoutingInvalid("no gadget orientation fits vertex " + std::to_string(v));
            GridPoint o = scaled(r_.positions[static_cast<std::size_t>(v)], r_.scale);
            for (std::size_t p = 0; p < order.size(); ++p) {
                Chain c;
                for (const auto& f : (*tmpl)[p]) c.push_back((*sym)(f, o.x, o.y));
                port_chain_[{v, order[p]->edge, order[p]->out.x, order[p]->out.y}] = c;
            }
        }
    }

    Plan plan(int e) const {
        const auto& ed = g_.edges[static_cast<std::size_t>(e)];
        const auto& rt = routes_[static_cast<std::size_t>(e)];
        Plan plan;
        const std::size_t last = rt.pts.size() - 1;
        Dir first = rt.dir(0), final = rt.dir(last - 1);
        if (g_.is_terminal(ed.u)) {
            plan.pieces.push_back({terminal_flap(scaled(rt.pts.front(), r_.scale), first)});
        } else {
            plan.pieces.push_back(port_chain_.at({ed.u, e, first.x, first.y}));
        }
        for (std::size_t i = 1; i < last; ++i) {
            Dir in = rt.dir(i - 1), out = rt.dir(i);
            GridPoint o = scaled(rt.pts[i], r_.scale);
            const auto& occ = occupants_.at(rt.pts[i]);
            Chain c;
            if (occ.size() == 2) {
                // the lower edge id runs along the template's eastward chain
                auto [e0, i0] = occ[0].first < occ[1].first ? occ[0] : occ[1];
                auto [e1, i1] = occ[0].first < occ[1].first ? occ[1] : occ[0];
                Dir h = routes_[static_cast<std::size_t>(e0)].dir(i0), v = routes_[static_cast<std::size_t>(e1)].dir(i1);
                auto s = sym_mapping(dir_of(kE), h, dir_of(kN), v);
                for (const auto& f : e == e0 ? kCrossH : kCrossV) c.push_back((*s)(f, o.x, o.y));
            } else if (!(in == out)) {
                auto s = sym_mapping(dir_of(kE), in, dir_of(kN), out);
                if (!s) throw RoutingInvalid("edge " + std::to_string(e) + " reverses direction");
                for (const auto& f : kTurn) c.push_back((*s)(f, o.x, o.y));
            } else {
                continue;
            }
            plan.pieces.push_back(c);
        }
        if (g_.is_terminal(ed.v)) {
            plan.pieces.push_back({terminal_flap(scaled(rt.pts.back(), r_.scale), final)});
        } else {
            Chain c = port_chain_.at({ed.v, e, -final.x, -final.y});
            std::reverse(c.begin(), c.end());
            for (auto& f : c) f = f.reversed();
            plan.pieces.push_back(c);
        }
        return plan;
    }

    std::vector<RunShape> run_shapes(const Plan& plan) const {
        std::vector<RunShape> out;
        for (std::size_t p = 1; p < plan.pieces.size(); ++p) {
            const auto& a = plan.pieces[p - 1].back();
            const auto& b = plan.pieces[p].front();
            auto s = run_shape(a, b);
            if (!(dir_of(a) == dir_of(b)) || s.max_m < s.min_m)
                throw RoutingInvalid("grid segment too short for the gadgets at its ends (scale " +
                                     std::to_string(r_.scale) + ")");
            out.push_back(s);
        }
        return out;
    }

    std::pair<int, int> length_range(int e) const {
        const auto& plan = plans_[static_cast<std::size_t>(e)];
        int fixed = 0;
        for (const auto& c : plan.pieces) fixed += static_cast<int>(c.size());
        int lo = fixed, hi = fixed;
        for (const auto& s : run_shapes(plan)) {
            lo += s.min_m + 1;
            hi += s.max_m + 1;
        }
        return {lo, hi};
    }

    const NclGraph& g_;
    const GridRouting& r_;
    std::vector<Route> routes_;
    std::map<GridPoint, std::vector<std::pair<int, std::size_t>>> occupants_;
    std::map<int, std::vector<Incidence>> inc_;
    std::map<std::array<int, 4>, Chain> port_chain_;
    std::vector<Plan> plans_;
};

}  // namespace

std::pair<int, int> red_length_range(const NclGraph& g, const GridRouting& r) {
    return Compiler(g, r).red_range();
}

CompiledNcl compile_ncl(const NclGraph& g, const GridRouting& r, int k) {
    return Compiler(g, r).build(k);
}

Canonical canonicalize(const CompiledNcl& c, const FlapState& st) {
    if (static_cast<int>(st.sides.size()) != c.inst.size()) throw InvalidInput("state does not match the instance");
    Canonical out;
    auto sides = st.sides;
    bool changed = false;
    for (std::size_t e = 0; e < c.edge_flaps.size(); ++e) {
        const auto& fl = c.edge_flaps[e];
        if (!chains_monotone({fl}, st)) throw InvalidInput("edge " + std::to_string(e) + " is not in a chain state");
        int first = st.sides[static_cast<std::size_t>(fl.front())], last = st.sides[static_cast<std::size_t>(fl.back())];
        if (first == last) {
            if (first) out.orientation |= Orientation{1} << e;
            continue;
        }
        // two tails: arrowhead at v
        for (int f : fl) sides[static_cast<std::size_t>(f)] = 0;
        changed = true;
    }
    if (!changed) {
        out.state = st;
        return out;
    }
    auto done = completions(c.inst, sides, &st);
    if (done.empty()) throw InvalidInput("state has no canonical completion");
    out.state = done.front();
    return out;
}

FlapState encode(const CompiledNcl& c, Orientation o) {
    if (!validate(c.graph, o)) throw NoWitness("orientation does not satisfy the graph");
    std::vector<int> sides(static_cast<std::size_t>(c.inst.size()), 0);
    for (std::size_t e = 0; e < c.edge_flaps.size(); ++e)
        for (int f : c.edge_flaps[e]) sides[static_cast<std::size_t>(f)] = static_cast<int>(o >> e & 1);
    auto done = completions(c.inst, sides);
    if (done.empty()) throw NoWitness("compiled instance has no state for this orientation");
    return done.front();
}

CorrespondenceReport verify_compiled(const CompiledNcl& c, const FlapBudget& budget) {
    CorrespondenceReport rep;
    auto states = enumerate_states(c.inst, budget);
    rep.states = states.size();
    // same decoding as canonicalize, without building the canonical state
    auto decode = [&](const FlapState& st) {
        Orientation o = 0;
        for (std::size_t e = 0; e < c.edge_flaps.size(); ++e)
            if (st.sides[static_cast<std::size_t>(c.edge_flaps[e].front())] == 1 &&
                st.sides[static_cast<std::size_t>(c.edge_flaps[e].back())] == 1)
                o |= Orientation{1} << e;
        return o;
    };
    std::map<Orientation, int> hits;
    bool valid = true;
    for (const auto& st : states) {
        rep.monotone = rep.monotone && chains_monotone(c.edge_flaps, st);
        bool canon = true;
        for (const auto& fl : c.edge_flaps)
            canon = canon && st.sides[static_cast<std::size_t>(fl.front())] == st.sides[static_cast<std::size_t>(fl.back())];
        if (!canon) continue;
        ++rep.canonical;
        auto o = decode(st);
        valid = valid && validate(c.graph, o);
        ++hits[o];
    }
    auto sat = satisfying_orientations(c.graph);
    rep.orientations = sat.size();
    rep.bijection = valid && hits.size() == sat.size() && rep.canonical == sat.size();
    for (auto o : sat) rep.bijection = rep.bijection && hits.count(o) && hits[o] == 1;

    auto ncl = components(c.graph);
    rep.ncl_components = ncl.size();
    std::map<Orientation, int> comp_of;
    for (std::size_t i = 0; i < ncl.size(); ++i)
        for (auto o : ncl[i]) comp_of[o] = static_cast<int>(i);
    auto fc = flap_components(c.inst, budget);
    rep.flap_components = fc.size();
    std::set<int> seen;
    bool match = rep.monotone;
    for (const auto& comp : fc) {
        std::set<int> touched;
        for (int i : comp) {
            auto it = comp_of.find(decode(states[static_cast<std::size_t>(i)]));
            if (it == comp_of.end()) {
                match = false;
                continue;
            }
            touched.insert(it->second);
        }
        match = match && touched.size() == 1 && seen.insert(*touched.begin()).second;
    }
    rep.components_match = match && seen.size() == ncl.size();
    return rep;
}

}  // namespace foldwork
