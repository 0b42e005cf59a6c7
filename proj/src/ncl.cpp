#include "foldwork/ncl.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>
#include <unordered_map>

#include "foldwork/errors.hpp"

namespace foldwork {

bool NclGraph::is_terminal(int v) const {
    return std::binary_search(terminals.begin(), terminals.end(), v);
}

void NclGraph::check() const {
    if (num_vertices < 0) throw InvalidInput("negative vertex count");
    if (edges.size() > 64) throw InvalidInput("more than 64 edges");
    if (!std::is_sorted(terminals.begin(), terminals.end()) ||
        std::adjacent_find(terminals.begin(), terminals.end()) != terminals.end())
        throw InvalidInput("terminals must be sorted and distinct");
    for (int t : terminals)
        if (t < 0 || t >= num_vertices) throw InvalidInput("terminal out of range");
    std::vector<int> deg(static_cast<std::size_t>(num_vertices)), blue(deg.size());
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices)
            throw InvalidInput("edge endpoint out of range");
        if (e.u == e.v) throw InvalidInput("loop at vertex " + std::to_string(e.u));
        for (int x : {e.u, e.v}) {
            ++deg[x];
            if (e.color == NclColor::Blue) ++blue[x];
        }
    }
    for (int v = 0; v < num_vertices; ++v) {
        if (is_terminal(v)) {
            if (deg[v] != 1) throw InvalidInput("terminal " + std::to_string(v) + " must have degree 1");
            continue;
        }
        if (deg[v] != 3) throw InvalidInput("vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]));
        if (blue[v] != 1 && blue[v] != 3)
            throw InvalidInput("vertex " + std::to_string(v) + " has " + std::to_string(blue[v]) + " blue edges");
    }
}

int head(const NclGraph& g, Orientation o, int e) {
    const auto& ed = g.edges[static_cast<std::size_t>(e)];
    return (o >> e & 1) ? ed.u : ed.v;
}

int in_weight(const NclGraph& g, Orientation o, int v) {
    int w = 0;
    for (int e = 0; e < g.num_edges(); ++e)
        if (head(g, o, e) == v) w += ncl_weight(g.edges[static_cast<std::size_t>(e)].color);
    return w;
}

namespace {

// Per-vertex incidence as bit masks so a full check is a few popcounts.
struct Checker {
    struct Masks {
        std::uint64_t blue_set = 0, blue_clear = 0, red_set = 0, red_clear = 0;
    };
    std::vector<Masks> masks;

    explicit Checker(const NclGraph& g) {
        for (int v = 0; v < g.num_vertices; ++v) {
            if (g.is_terminal(v)) continue;
            Masks m;
            for (int e = 0; e < g.num_edges(); ++e) {
                const auto& ed = g.edges[static_cast<std::size_t>(e)];
                std::uint64_t bit = std::uint64_t{1} << e;
                bool blue = ed.color == NclColor::Blue;
                if (ed.u == v) (blue ? m.blue_set : m.red_set) |= bit;
                if (ed.v == v) (blue ? m.blue_clear : m.red_clear) |= bit;
            }
            masks.push_back(m);
        }
    }

    bool ok(Orientation o) const {
        for (const auto& m : masks) {
            int w = 2 * (std::popcount(o & m.blue_set) + std::popcount(~o & m.blue_clear)) +
                    std::popcount(o & m.red_set) + std::popcount(~o & m.red_clear);
            if (w < 2) return false;
        }
        return true;
    }
};

void check_size(const NclGraph& g, const NclBudget& budget) {
    g.check();
    if (g.num_edges() > budget.max_edges)
        throw BudgetExceeded(std::to_string(g.num_edges()) + " edges exceed the limit of " +
                             std::to_string(budget.max_edges));
}

}  // namespace

bool validate(const NclGraph& g, Orientation o) {
    return Checker(g).ok(o);
}

std::vector<Orientation> moves(const NclGraph& g, Orientation o) {
    Checker c(g);
    std::vector<Orientation> out;
    for (int e = 0; e < g.num_edges(); ++e) {
        Orientation t = o ^ (Orientation{1} << e);
        if (c.ok(t)) out.push_back(t);
    }
    return out;
}

std::vector<Orientation> satisfying_orientations(const NclGraph& g, const NclBudget& budget) {
    check_size(g, budget);
    Checker c(g);
    std::vector<Orientation> out;
    const Orientation end = Orientation{1} << g.num_edges();
    for (Orientation o = 0; o < end; ++o) {
        if (!c.ok(o)) continue;
        if (out.size() >= budget.max_states) throw BudgetExceeded("too many satisfying orientations");
        out.push_back(o);
    }
    return out;
}

std::uint64_t count_orientations(const NclGraph& g, const NclBudget& budget) {
    check_size(g, budget);
    Checker c(g);
    std::uint64_t n = 0;
    const Orientation end = Orientation{1} << g.num_edges();
    for (Orientation o = 0; o < end; ++o) n += c.ok(o);
    return n;
}

bool reachable(const NclGraph& g, Orientation s, Orientation t, const NclBudget& budget) {
    check_size(g, budget);
    Checker c(g);
    if (!c.ok(s) || !c.ok(t)) return false;
    if (s == t) return true;
    std::unordered_map<Orientation, bool> seen{{s, true}};
    std::deque<Orientation> queue{s};
    while (!queue.empty()) {
        Orientation o = queue.front();
        queue.pop_front();
        for (int e = 0; e < g.num_edges(); ++e) {
            Orientation n = o ^ (Orientation{1} << e);
            if (seen.count(n) || !c.ok(n)) continue;
            if (n == t) return true;
            if (seen.size() >= budget.max_states) throw BudgetExceeded("reachability search too large");
            seen.emplace(n, true);
            queue.push_back(n);
        }
    }
    return false;
}

std::vector<std::vector<Orientation>> components(const NclGraph& g, const NclBudget& budget) {
    auto states = satisfying_orientations(g, budget);
    std::vector<int> comp(states.size(), -1);
    auto index = [&](Orientation o) {
        auto it = std::lower_bound(states.begin(), states.end(), o);
        return it != states.end() && *it == o ? static_cast<int>(it - states.begin()) : -1;
    };
    std::vector<std::vector<Orientation>> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (comp[i] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::deque<int> queue{static_cast<int>(i)};
        comp[i] = id;
        while (!queue.empty()) {
            int k = queue.front();
            queue.pop_front();
            out.back().push_back(states[static_cast<std::size_t>(k)]);
            for (int e = 0; e < g.num_edges(); ++e) {
                int j = index(states[static_cast<std::size_t>(k)] ^ (Orientation{1} << e));
                if (j >= 0 && comp[static_cast<std::size_t>(j)] < 0) {
                    comp[static_cast<std::size_t>(j)] = id;
                    queue.push_back(j);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

bool globally_connected(const NclGraph& g, const NclBudget& budget) {
    return components(g, budget).size() <= 1;
}

BigInt count_matchings(const Biadjacency& b) {
    const int n = static_cast<int>(b.size());
    for (const auto& row : b)
        if (static_cast<int>(row.size()) != n) throw InvalidInput("biadjacency matrix must be square");
    if (n > 20) throw BudgetExceeded("permanent limited to 20 rows");
    // dp over the set of used columns, row r = popcount
    std::vector<BigInt> dp(std::size_t{1} << n);
    dp[0] = 1;
    for (std::uint32_t mask = 0; mask < dp.size(); ++mask) {
        if (dp[mask] == 0) continue;
        int r = std::popcount(mask);
        if (r == n) continue;
        for (int c = 0; c < n; ++c) {
            if (mask >> c & 1) continue;
            int mult = b[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (mult) dp[mask | (1u << c)] += dp[mask] * mult;
        }
    }
    return dp.back();
}

NclGraph matchings_to_ncl(const Biadjacency& b) {
    const int n = static_cast<int>(b.size());
    if (n == 0) throw InputNotCubicBipartite("empty graph");
    std::vector<int> col(static_cast<std::size_t>(n));
    for (const auto& row : b) {
        if (static_cast<int>(row.size()) != n) throw InputNotCubicBipartite("sides differ in size");
        int deg = 0;
        for (int j = 0; j < n; ++j) {
            if (row[j] < 0) throw InputNotCubicBipartite("negative multiplicity");
            deg += row[j];
            col[j] += row[j];
        }
        if (deg != 3) throw InputNotCubicBipartite("left vertex of degree " + std::to_string(deg));
    }
    for (int d : col)
        if (d != 3) throw InputNotCubicBipartite("right vertex of degree " + std::to_string(d));

    NclGraph g;
    g.num_vertices = 4 * n;
    std::vector<int> used(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < b[i][j]; ++k) g.edges.push_back({i, n + 3 * j + used[j]++, NclColor::Blue});
    for (int j = 0; j < n; ++j) {
        int t = n + 3 * j;
        g.edges.push_back({t, t + 1, NclColor::Red});
        g.edges.push_back({t + 1, t + 2, NclColor::Red});
        g.edges.push_back({t, t + 2, NclColor::Red});
    }
    return g;
}

NclGraph random_ncl(int or_vertices, int and_vertices, std::mt19937& rng) {
    if (or_vertices < 0 || and_vertices < 0 || (3 * or_vertices + and_vertices) % 2 != 0 || and_vertices == 1)
        throw InvalidInput("no closed instance with these vertex counts");
    const int nv = or_vertices + and_vertices;
    std::vector<int> blue, red;
    for (int v = 0; v < or_vertices; ++v) blue.insert(blue.end(), {v, v, v});
    for (int v = or_vertices; v < nv; ++v) {
        blue.push_back(v);
        red.insert(red.end(), {v, v});
    }
    auto pair_up = [&](std::vector<int> stubs, NclColor color, std::vector<NclEdge>& out) {
        for (int attempt = 0; attempt < 10000; ++attempt) {
            std::shuffle(stubs.begin(), stubs.end(), rng);
            bool loop = false;
            for (std::size_t i = 0; i < stubs.size() && !loop; i += 2) loop = stubs[i] == stubs[i + 1];
            if (loop) continue;
            for (std::size_t i = 0; i < stubs.size(); i += 2)
                out.push_back({std::min(stubs[i], stubs[i + 1]), std::max(stubs[i], stubs[i + 1]), color});
            return;
        }
        throw InvalidInput("could not pair stubs without loops");
    };
    NclGraph g;
    g.num_vertices = nv;
    pair_up(blue, NclColor::Blue, g.edges);
    pair_up(red, NclColor::Red, g.edges);
    return g;
}

}  // namespace foldwork
