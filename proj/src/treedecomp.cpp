#include "foldwork/treedecomp.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <set>
#include <stdexcept>

namespace foldwork {

namespace {

int max_bag(const std::vector<std::vector<int>>& bags) {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

std::vector<std::set<int>> adjacency_sets(const Graph& g) {
    std::vector<std::set<int>> adj(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v) adj[static_cast<std::size_t>(v)].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    return adj;
}

bool sorted_unique(const std::vector<int>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<int>()) == v.end();
}

std::vector<int> with(std::vector<int> bag, int v) {
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    return bag;
}

std::vector<int> without(std::vector<int> bag, int v) {
    bag.erase(std::find(bag.begin(), bag.end(), v));
    return bag;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

class NiceBuilder {
public:
    explicit NiceBuilder(const TreeDecomposition& td) : td_(td), kids_(td.children()) {}

    NiceTreeDecomposition run() {
        int x = build(td_.root);
        for (int v : out_.nodes[static_cast<std::size_t>(x)].bag) x = add(NiceKind::Forget, v, {x});
        out_.root = x;
        return std::move(out_);
    }

private:
    int add(NiceKind kind, int v, std::vector<int> children) {
        NiceNode n;
        n.kind = kind;
        n.vertex = v;
        n.children = std::move(children);
        if (kind == NiceKind::Leaf) n.bag = {v};
        else if (kind == NiceKind::Introduce) n.bag = with(out_.nodes[static_cast<std::size_t>(n.children[0])].bag, v);
        else if (kind == NiceKind::Forget) n.bag = without(out_.nodes[static_cast<std::size_t>(n.children[0])].bag, v);
        else n.bag = out_.nodes[static_cast<std::size_t>(n.children[0])].bag;
        out_.nodes.push_back(std::move(n));
        return out_.size() - 1;
    }

    int morph(int x, const std::vector<int>& target) {
        std::vector<int> bag = out_.nodes[static_cast<std::size_t>(x)].bag;
        for (int v : minus(bag, target)) x = add(NiceKind::Forget, v, {x});
        for (int v : minus(target, bag)) x = add(NiceKind::Introduce, v, {x});
        return x;
    }

    int build(int t) {
        const auto& bag = td_.bags[static_cast<std::size_t>(t)];
        const auto& kids = kids_[static_cast<std::size_t>(t)];
        if (kids.empty()) {
            if (bag.empty()) throw std::invalid_argument("make_nice: empty leaf bag");
            int x = add(NiceKind::Leaf, bag[0], {});
            for (std::size_t i = 1; i < bag.size(); ++i) x = add(NiceKind::Introduce, bag[i], {x});
            return x;
        }
        int acc = -1;
        for (int c : kids) {
            int y = morph(build(c), bag);
            acc = acc < 0 ? y : add(NiceKind::Join, -1, {acc, y});
        }
        return acc;
    }

    const TreeDecomposition& td_;
    std::vector<std::vector<int>> kids_;
    NiceTreeDecomposition out_;
};

}  // namespace

int TreeDecomposition::width() const { return max_bag(bags); }

std::vector<std::vector<int>> TreeDecomposition::children() const {
    std::vector<std::vector<int>> out(bags.size());
    for (std::size_t i = 0; i < parent.size(); ++i) {
        if (parent[i] >= 0) out[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
    }
    return out;
}

int NiceTreeDecomposition::width() const {
    std::vector<std::vector<int>> bags;
    for (const auto& n : nodes) bags.push_back(n.bag);
    return max_bag(bags);
}

std::vector<int> NiceTreeDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<std::pair<int, bool>> stack{{root, false}};
    while (!stack.empty()) {
        auto [v, expanded] = stack.back();
        stack.pop_back();
        if (expanded) {
            out.push_back(v);
            continue;
        }
        stack.push_back({v, true});
        const auto& ch = nodes[static_cast<std::size_t>(v)].children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, false});
    }
    return out;
}

TreeDecomposition NiceTreeDecomposition::plain() const {
    TreeDecomposition td;
    td.root = root;
    td.parent.assign(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        td.bags.push_back(nodes[i].bag);
        for (int c : nodes[i].children) td.parent[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
    return td;
}

TreeDecomposition from_elimination_order(const Graph& g, const std::vector<int>& order) {
    const std::size_t n = static_cast<std::size_t>(g.size());
    if (order.size() != n) throw std::invalid_argument("elimination order has the wrong length");
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    auto adj = adjacency_sets(g);
    TreeDecomposition td;
    td.bags.resize(n);
    td.parent.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        int v = order[i];
        const auto nb = adj[static_cast<std::size_t>(v)];
        td.bags[i] = with({nb.begin(), nb.end()}, v);
        int next = -1;
        for (int u : nb) {
            if (next < 0 || pos[static_cast<std::size_t>(u)] < next) next = pos[static_cast<std::size_t>(u)];
            adj[static_cast<std::size_t>(u)].erase(v);
            for (int w : nb) {
                if (w != u) adj[static_cast<std::size_t>(u)].insert(w);
            }
        }
        td.parent[i] = next;
    }
    td.root = static_cast<int>(n) - 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (td.parent[i] < 0) td.parent[i] = td.root;  // separate components hang off the last bag
    }
    return td;
}

std::vector<int> min_fill_order(const Graph& g) {
    auto adj = adjacency_sets(g);
    std::vector<bool> gone(adj.size(), false);
    std::vector<int> order;
    for (std::size_t step = 0; step < adj.size(); ++step) {
        int best = -1;
        long best_fill = 0;
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (gone[v]) continue;
            long fill = 0;
            for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
                for (auto b = std::next(a); b != adj[v].end(); ++b) {
                    if (!adj[static_cast<std::size_t>(*a)].count(*b)) ++fill;
                }
            }
            if (best < 0 || fill < best_fill) {
                best = static_cast<int>(v);
                best_fill = fill;
            }
        }
        const auto nb = adj[static_cast<std::size_t>(best)];
        for (int u : nb) {
            adj[static_cast<std::size_t>(u)].erase(best);
            for (int w : nb) {
                if (w != u) adj[static_cast<std::size_t>(u)].insert(w);
            }
        }
        adj[static_cast<std::size_t>(best)].clear();
        gone[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
    }
    return order;
}

std::vector<int> exact_order(const Graph& g) {
    const int n = g.size();
    if (n > 20) throw std::invalid_argument("exact treewidth limited to 20 vertices");
    if (n == 0) return {};
    std::vector<unsigned> nbr(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        for (int u : g.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= 1u << u;
    }
    // |Q(S, v)|: vertices outside S + v reachable from v through S
    auto q_size = [&](unsigned S, int v) {
        unsigned seen = 1u << v, frontier = 1u << v, outside = 0;
        while (frontier) {
            int x = __builtin_ctz(frontier);
            frontier &= frontier - 1;
            unsigned fresh = nbr[static_cast<std::size_t>(x)] & ~seen;
            seen |= fresh;
            outside |= fresh & ~S;
            frontier |= fresh & S;
        }
        return __builtin_popcount(outside);
    };
    const unsigned full = (1u << n) - 1;
    std::vector<int> dp(full + 1, 0), choice(full + 1, -1);
    dp[0] = -1;
    for (unsigned mask = 1; mask <= full; ++mask) {
        int best = n + 1;
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            unsigned rest = mask & ~(1u << v);
            int w = std::max(dp[rest], q_size(rest, v));
            if (w < best) {
                best = w;
                choice[mask] = v;
            }
        }
        dp[mask] = best;
    }
    std::vector<int> order;
    for (unsigned mask = full; mask; mask &= ~(1u << choice[mask])) order.push_back(choice[mask]);
    std::reverse(order.begin(), order.end());
    return order;
}

int exact_treewidth(const Graph& g) {
    if (g.size() == 0) return -1;
    return from_elimination_order(g, exact_order(g)).width();
}

TreeDecomposition decompose(const Graph& g) {
    if (g.size() == 0) throw std::invalid_argument("decompose: empty graph");
    return from_elimination_order(g, g.size() <= kExactLimit ? exact_order(g) : min_fill_order(g));
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) { return NiceBuilder(td).run(); }

bool validate(const TreeDecomposition& td, const Graph& g) {
    const int n = g.size();
    const int m = td.size();
    if (static_cast<int>(td.parent.size()) != m || m == 0) return false;
    if (td.root < 0 || td.root >= m || td.parent[static_cast<std::size_t>(td.root)] != -1) return false;
    for (int t = 0; t < m; ++t) {
        if (t != td.root && (td.parent[static_cast<std::size_t>(t)] < 0 || td.parent[static_cast<std::size_t>(t)] >= m)) return false;
        // reaches the root without looping
        int x = t;
        for (int steps = 0; x != td.root; ++steps) {
            if (steps > m) return false;
            x = td.parent[static_cast<std::size_t>(x)];
        }
        const auto& bag = td.bags[static_cast<std::size_t>(t)];
        if (!sorted_unique(bag)) return false;
        if (!bag.empty() && (bag.front() < 0 || bag.back() >= n)) return false;
    }
    auto in_bag = [&](int t, int v) {
        const auto& b = td.bags[static_cast<std::size_t>(t)];
        return std::binary_search(b.begin(), b.end(), v);
    };
    for (int v = 0; v < n; ++v) {
        int nodes = 0, links = 0;
        for (int t = 0; t < m; ++t) {
            if (!in_bag(t, v)) continue;
            ++nodes;
            int p = td.parent[static_cast<std::size_t>(t)];
            if (p >= 0 && in_bag(p, v)) ++links;
        }
        if (nodes == 0 || links != nodes - 1) return false;
    }
    for (const auto& [u, v] : g.edges()) {
        bool covered = false;
        for (int t = 0; t < m && !covered; ++t) covered = in_bag(t, u) && in_bag(t, v);
        if (!covered) return false;
    }
    return true;
}

bool validate(const NiceTreeDecomposition& ntd, const Graph& g) {
    if (ntd.root < 0 || ntd.root >= ntd.size()) return false;
    if (!ntd.nodes[static_cast<std::size_t>(ntd.root)].bag.empty()) return false;
    for (const auto& node : ntd.nodes) {
        for (int c : node.children) {
            if (c < 0 || c >= ntd.size()) return false;
        }
        auto child_bag = [&](std::size_t i) -> const std::vector<int>& { return ntd.nodes[static_cast<std::size_t>(node.children[i])].bag; };
        switch (node.kind) {
        case NiceKind::Leaf:
            if (!node.children.empty() || node.bag != std::vector<int>{node.vertex}) return false;
            break;
        case NiceKind::Introduce:
            if (node.children.size() != 1) return false;
            if (std::binary_search(child_bag(0).begin(), child_bag(0).end(), node.vertex)) return false;
            if (node.bag != with(child_bag(0), node.vertex)) return false;
            break;
        case NiceKind::Forget:
            if (node.children.size() != 1) return false;
            if (std::binary_search(node.bag.begin(), node.bag.end(), node.vertex)) return false;
            if (child_bag(0) != with(node.bag, node.vertex)) return false;
            break;
        case NiceKind::Join:
            if (node.children.size() != 2 || child_bag(0) != node.bag || child_bag(1) != node.bag) return false;
            break;
        }
    }
    return validate(ntd.plain(), g);
}

}  // namespace foldwork
