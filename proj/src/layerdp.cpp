#include "foldwork/layerdp.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <unordered_map>

namespace foldwork {

namespace {

int position(const Layering& l, int facet) {
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] == facet) return static_cast<int>(i);
    }
    return -1;
}

bool strictly_between(int x, int a, int b) { return std::min(a, b) < x && x < std::max(a, b); }

using Key = std::vector<std::uint32_t>;

struct KeyHash {
    std::size_t operator()(const Key& k) const {
        std::size_t h = k.size();
        for (auto x : k) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Entry {
    BigInt count = 0;
    std::uint32_t forgot = kNone;  // Forget nodes: smallest surviving layering of the forgotten cell
};

using Table = std::unordered_map<Key, Entry, KeyHash>;

std::vector<Layering> permutations(std::vector<int> items) {
    std::sort(items.begin(), items.end());
    std::vector<Layering> out;
    do out.push_back(items);
    while (std::next_permutation(items.begin(), items.end()));
    return out;
}

int index_in(const std::vector<int>& bag, int v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

class Solver {
public:
    Solver(const FoldedArrangement& fa, const NiceTreeDecomposition& ntd, const DpOptions& opt)
        : fa_(fa), ntd_(ntd), opt_(opt), tables_(ntd.nodes.size()), sizes_(ntd.nodes.size(), 0),
          spare_(std::max(0, opt.threads - 1)) {
        const std::size_t nc = static_cast<std::size_t>(fa.num_cells());
        std::vector<std::vector<int>> incident(nc);
        for (std::size_t e = 0; e < fa.edges.size(); ++e) {
            int a = fa.edges[e].left, b = fa.edges[e].right;
            if (a != b) pair_edges_[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(e));
            incident[static_cast<std::size_t>(a)].push_back(static_cast<int>(e));
            if (a != b) incident[static_cast<std::size_t>(b)].push_back(static_cast<int>(e));
        }
        // The single-cell conditions of every incident edge filter each
        // cell's layerings once, up front.
        for (std::size_t c = 0; c < nc; ++c) {
            std::vector<Layering> kept;
            for (auto& l : permutations(fa.cells[c].preimages)) {
                bool ok = true;
                for (int e : incident[c]) {
                    ok = ok && check_edge_side(fa.edges[static_cast<std::size_t>(e)], static_cast<int>(c), l, fa.labeled);
                }
                if (ok) kept.push_back(std::move(l));
            }
            perms_.push_back(std::move(kept));
        }
        // What remains across an edge is equality of the spanning orders;
        // number the distinct orders per edge.
        proj_.resize(fa.edges.size());
        for (std::size_t e = 0; e < fa.edges.size(); ++e) {
            const auto& edge = fa.edges[e];
            if (edge.left == edge.right) continue;
            std::map<std::vector<int>, std::uint32_t> ids;
            for (int side = 0; side < 2; ++side) {
                int c = side == 0 ? edge.left : edge.right;
                for (const auto& l : perms_[static_cast<std::size_t>(c)]) {
                    auto [it, fresh] = ids.try_emplace(spanning_order(edge, l), static_cast<std::uint32_t>(ids.size()));
                    proj_[e][static_cast<std::size_t>(side)].push_back(it->second);
                }
            }
        }
    }

    DpResult run() {
        DpResult res;
        res.width = ntd_.width();
        eval(ntd_.root);
        const Table& root = tables_[static_cast<std::size_t>(ntd_.root)];
        auto it = root.find(Key{});
        res.foldable = it != root.end();
        if (res.foldable) res.count = it->second.count;
        res.max_bag_states = *std::max_element(sizes_.begin(), sizes_.end());
        if (opt_.mode == DpMode::Witness && res.foldable) {
            GlobalLayering w(static_cast<std::size_t>(fa_.num_cells()));
            trace(ntd_.root, Key{}, w);
            res.witness = std::move(w);
        }
        return res;
    }

private:
    std::uint32_t order_id(int e, int cell, std::uint32_t perm) const {
        const auto& edge = fa_.edges[static_cast<std::size_t>(e)];
        return proj_[static_cast<std::size_t>(e)][edge.left == cell ? 0 : 1][perm];
    }

    void eval(int node) {
        const NiceNode& nd = ntd_.nodes[static_cast<std::size_t>(node)];
        if (nd.kind == NiceKind::Join && spare_.fetch_sub(1) > 0) {
            auto other = std::async(std::launch::async, [&] { eval(nd.children[0]); });
            eval(nd.children[1]);
            other.get();
            spare_.fetch_add(1);
        } else {
            if (nd.kind == NiceKind::Join) spare_.fetch_add(1);
            for (int c : nd.children) eval(c);
        }
        Table& out = tables_[static_cast<std::size_t>(node)];
        const int v = nd.vertex;
        switch (nd.kind) {
        case NiceKind::Leaf:
            for (std::uint32_t i = 0; i < perms_[static_cast<std::size_t>(v)].size(); ++i) out[Key{i}].count = 1;
            break;
        case NiceKind::Introduce: {
            const NiceNode& child = ntd_.nodes[static_cast<std::size_t>(nd.children[0])];
            const auto at = static_cast<std::ptrdiff_t>(index_in(nd.bag, v));
            // edges from v into the child bag, keyed by bag position
            std::vector<std::pair<std::size_t, int>> links;
            for (std::size_t j = 0; j < child.bag.size(); ++j) {
                int u = child.bag[j];
                auto it = pair_edges_.find({std::min(u, v), std::max(u, v)});
                if (it == pair_edges_.end()) continue;
                for (int e : it->second) links.emplace_back(j, e);
            }
            std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> by_signature;
            for (std::uint32_t i = 0; i < perms_[static_cast<std::size_t>(v)].size(); ++i) {
                Key sig;
                for (const auto& [j, e] : links) sig.push_back(order_id(e, v, i));
                by_signature[std::move(sig)].push_back(i);
            }
            for (const auto& [key, entry] : tables_[static_cast<std::size_t>(nd.children[0])]) {
                Key sig;
                for (const auto& [j, e] : links) sig.push_back(order_id(e, child.bag[j], key[j]));
                auto it = by_signature.find(sig);
                if (it == by_signature.end()) continue;
                for (std::uint32_t i : it->second) {
                    Key k = key;
                    k.insert(k.begin() + at, i);
                    out[std::move(k)].count = entry.count;
                }
            }
            break;
        }
        case NiceKind::Forget: {
            const NiceNode& child = ntd_.nodes[static_cast<std::size_t>(nd.children[0])];
            const auto at = static_cast<std::ptrdiff_t>(index_in(child.bag, v));
            for (const auto& [key, entry] : tables_[static_cast<std::size_t>(nd.children[0])]) {
                Key k = key;
                k.erase(k.begin() + at);
                Entry& e = out[std::move(k)];
                if (opt_.mode == DpMode::Decide) e.count = 1;
                else e.count += entry.count;
                e.forgot = std::min(e.forgot, key[static_cast<std::size_t>(at)]);
            }
            break;
        }
        case NiceKind::Join: {
            const Table& a = tables_[static_cast<std::size_t>(nd.children[0])];
            const Table& b = tables_[static_cast<std::size_t>(nd.children[1])];
            for (const auto& [key, entry] : a) {
                auto it = b.find(key);
                if (it != b.end()) out[key].count = entry.count * it->second.count;
            }
            break;
        }
        }
        sizes_[static_cast<std::size_t>(node)] = out.size();
        if (opt_.mode != DpMode::Witness) {
            for (int c : nd.children) Table().swap(tables_[static_cast<std::size_t>(c)]);
        }
    }

    void trace(int node, const Key& key, GlobalLayering& w) const {
        const NiceNode& nd = ntd_.nodes[static_cast<std::size_t>(node)];
        const int v = nd.vertex;
        switch (nd.kind) {
        case NiceKind::Leaf:
            w[static_cast<std::size_t>(v)] = perms_[static_cast<std::size_t>(v)][key[0]];
            break;
        case NiceKind::Introduce: {
            auto at = static_cast<std::ptrdiff_t>(index_in(nd.bag, v));
            w[static_cast<std::size_t>(v)] = perms_[static_cast<std::size_t>(v)][key[static_cast<std::size_t>(at)]];
            Key k = key;
            k.erase(k.begin() + at);
            trace(nd.children[0], k, w);
            break;
        }
        case NiceKind::Forget: {
            const NiceNode& child = ntd_.nodes[static_cast<std::size_t>(nd.children[0])];
            Key k = key;
            k.insert(k.begin() + static_cast<std::ptrdiff_t>(index_in(child.bag, v)),
                     tables_[static_cast<std::size_t>(node)].at(key).forgot);
            trace(nd.children[0], k, w);
            break;
        }
        case NiceKind::Join:
            trace(nd.children[0], key, w);
            trace(nd.children[1], key, w);
            break;
        }
    }

    const FoldedArrangement& fa_;
    const NiceTreeDecomposition& ntd_;
    DpOptions opt_;
    std::vector<std::vector<Layering>> perms_;
    std::vector<std::array<std::vector<std::uint32_t>, 2>> proj_;  // per edge, per side: spanning-order id of each layering
    std::map<std::pair<int, int>, std::vector<int>> pair_edges_;
    std::vector<Table> tables_;
    std::vector<std::size_t> sizes_;
    std::atomic<int> spare_;
};

}  // namespace

bool check_edge_side(const ArrangementEdge& edge, int cell, const Layering& l, bool labeled) {
    const auto& ev = edge.events;
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const CreaseEvent& x = ev[i];
        if (x.kind != CreaseEvent::Kind::Folded || x.cell != cell) continue;
        int pa = position(l, x.a), pb = position(l, x.b);
        if (labeled && x.label) {
            int up = x.positive == x.a ? pa : pb;
            int down = x.positive == x.a ? pb : pa;
            if ((up < down) != (*x.label == FoldLabel::Mountain)) return false;
        }
        for (std::size_t j = 0; j < ev.size(); ++j) {
            const CreaseEvent& y = ev[j];
            if (y.kind == CreaseEvent::Kind::Spanning) {
                if (strictly_between(position(l, y.a), pa, pb)) return false;  // taco-tortilla
            } else if (y.kind == CreaseEvent::Kind::Folded && j > i && y.cell == cell) {
                // taco-taco: exactly one end inside means the pairs interleave
                if (strictly_between(position(l, y.a), pa, pb) != strictly_between(position(l, y.b), pa, pb)) return false;
            }
        }
    }
    return true;
}

std::vector<int> spanning_order(const ArrangementEdge& edge, const Layering& l) {
    std::vector<int> out;
    for (int f : l) {
        for (const auto& ev : edge.events) {
            if (ev.kind == CreaseEvent::Kind::Spanning && ev.a == f) out.push_back(f);
        }
    }
    return out;
}

bool check_edge(const ArrangementEdge& edge, const Layering& left, const Layering& right, bool labeled) {
    return check_edge_side(edge, edge.left, left, labeled) && check_edge_side(edge, edge.right, right, labeled) &&
           spanning_order(edge, left) == spanning_order(edge, right);
}

DpResult run_dp(const FoldedArrangement& fa, const NiceTreeDecomposition& ntd, const DpOptions& options) {
    if (!validate(ntd, cell_adjacency_graph(fa))) throw DecompositionInvalid("nice tree decomposition does not fit the cell graph");
    for (int c = 0; c < fa.num_cells(); ++c) {
        if (fa.ply(c) > options.ply_cap) {
            throw BudgetExceeded("cell " + std::to_string(c) + " has ply " + std::to_string(fa.ply(c)) +
                                 " above the cap " + std::to_string(options.ply_cap));
        }
    }
    return Solver(fa, ntd, options).run();
}

DpResult run_dp(const FoldedArrangement& fa, const DpOptions& options) {
    return run_dp(fa, make_nice(decompose(cell_adjacency_graph(fa))), options);
}

GlobalLayering extract_witness(const DpResult& result) {
    if (!result.foldable) throw NoWitness("no flat folding exists");
    if (!result.witness) throw std::logic_error("witness not recorded; run in Witness mode");
    return *result.witness;
}

}  // namespace foldwork
