#include "foldwork/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>

namespace foldwork {

namespace {

// Depth-first search over cells in id order, each cell's permutations in
// lexicographic order. A layering is cut as soon as its own side of an
// incident edge fails, and an edge is tested in full once both of its cells
// hold a layering; every surviving leaf passed every edge.
class Search {
public:
    Search(const FoldedArrangement& fa, const OracleBudget& budget, bool stop_at_first)
        : fa_(fa), budget_(budget), stop_(stop_at_first), closing_(static_cast<std::size_t>(fa.num_cells())) {
        incident_.resize(closing_.size());
        for (const auto& e : fa.edges) {
            closing_[static_cast<std::size_t>(std::max(e.left, e.right))].push_back(&e);
            incident_[static_cast<std::size_t>(e.left)].push_back(&e);
            if (e.right != e.left) incident_[static_cast<std::size_t>(e.right)].push_back(&e);
        }
        for (const auto& c : fa.cells) cur_.push_back(c.preimages);
    }

    BigInt run() {
        descend(0);
        return found_;
    }
    const std::optional<GlobalLayering>& first() const { return first_; }

private:
    bool descend(std::size_t cell) {
        if (cell == cur_.size()) {
            ++found_;
            if (stop_) first_ = cur_;
            return !stop_;
        }
        Layering& l = cur_[cell];
        std::sort(l.begin(), l.end());
        do {
            if (++visited_ > budget_.max_states) {
                throw BudgetExceeded("oracle visited more than " + std::to_string(budget_.max_states) + " partial layerings");
            }
            bool ok = true;
            for (const ArrangementEdge* e : incident_[cell]) {
                ok = check_edge_side(*e, static_cast<int>(cell), l, fa_.labeled);
                if (!ok) break;
            }
            for (const ArrangementEdge* e : closing_[cell]) {
                if (!ok) break;
                ok = check_edge(*e, cur_[static_cast<std::size_t>(e->left)], cur_[static_cast<std::size_t>(e->right)], fa_.labeled);
                if (!ok) break;
            }
            if (ok && !descend(cell + 1)) return false;
        } while (std::next_permutation(l.begin(), l.end()));
        return true;
    }

    const FoldedArrangement& fa_;
    OracleBudget budget_;
    bool stop_;
    std::vector<std::vector<const ArrangementEdge*>> closing_, incident_;
    GlobalLayering cur_;
    std::uint64_t visited_ = 0;
    BigInt found_ = 0;
    std::optional<GlobalLayering> first_;
};

}  // namespace

std::uint64_t layering_space(const FoldedArrangement& fa) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    for (int c = 0; c < fa.num_cells(); ++c) {
        for (int k = 2; k <= fa.ply(c); ++k) {
            if (total > kMax / static_cast<std::uint64_t>(k)) return kMax;
            total *= static_cast<std::uint64_t>(k);
        }
    }
    return total;
}

bool oracle_check(const FoldedArrangement& fa, const GlobalLayering& layering) {
    if (static_cast<int>(layering.size()) != fa.num_cells()) return false;
    for (int c = 0; c < fa.num_cells(); ++c) {
        Layering sorted = layering[static_cast<std::size_t>(c)];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != fa.cells[static_cast<std::size_t>(c)].preimages) return false;
    }
    for (const auto& e : fa.edges) {
        if (!check_edge(e, layering[static_cast<std::size_t>(e.left)], layering[static_cast<std::size_t>(e.right)], fa.labeled)) {
            return false;
        }
    }
    return true;
}

bool oracle_decide(const FoldedArrangement& fa, const OracleBudget& budget) {
    return Search(fa, budget, true).run() > 0;
}

std::optional<GlobalLayering> oracle_witness(const FoldedArrangement& fa, const OracleBudget& budget) {
    Search s(fa, budget, true);
    s.run();
    return s.first();
}

BigInt oracle_count(const FoldedArrangement& fa, const OracleBudget& budget) {
    return Search(fa, budget, false).run();
}

}  // namespace foldwork
