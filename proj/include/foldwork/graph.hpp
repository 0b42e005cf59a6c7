#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace foldwork {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

    int size() const { return static_cast<int>(adj_.size()); }
    int add_vertex() {
        adj_.emplace_back();
        return size() - 1;
    }
    /// Adds u-v unless it is a loop or already present.
    void add_edge(int u, int v) {
        if (u == v || has_edge(u, v)) return;
        auto& au = adj_[static_cast<std::size_t>(u)];
        auto& av = adj_[static_cast<std::size_t>(v)];
        au.insert(std::lower_bound(au.begin(), au.end(), v), v);
        av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    }
    bool has_edge(int u, int v) const {
        const auto& au = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(au.begin(), au.end(), v);
    }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < size(); ++u) {
            for (int v : neighbors(u)) {
                if (u < v) out.emplace_back(u, v);
            }
        }
        return out;
    }
    int num_edges() const { return static_cast<int>(edges().size()); }

private:
    std::vector<std::vector<int>> adj_;
};

}  // namespace foldwork
