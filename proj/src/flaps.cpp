#include "foldwork/flaps.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "foldwork/errors.hpp"

namespace foldwork {

void FlapInstance::check() const {
    if (side.sign() <= 0) throw InvalidInput("flap side must be positive");
    const Rat s2 = side * side;
    for (int f = 0; f < size(); ++f) {
        const auto& h = flaps[static_cast<std::size_t>(f)];
        if (norm2(h.b - h.a) != s2) throw InvalidInput("hinge " + std::to_string(f) + " does not match the side length");
    }
    for (int f = 0; f < size(); ++f) {
        for (int g = f + 1; g < size(); ++g) {
            Segment s(flaps[f].a, flaps[f].b), t(flaps[g].a, flaps[g].b);
            bool bad = false;
            for (const auto& p : {t.a, t.b}) bad = bad || in_segment_interior(p, s);
            for (const auto& p : {s.a, s.b}) bad = bad || in_segment_interior(p, t);
            if (auto x = intersect(s, t); x && !(*x == s.a || *x == s.b)) bad = true;
            if ((s.a == t.a && s.b == t.b) || (s.a == t.b && s.b == t.a)) bad = true;
            if (bad) throw InvalidInput("hinges " + std::to_string(f) + " and " + std::to_string(g) + " cross");
        }
    }
}

std::string FlapState::key() const {
    std::string k;
    k.reserve(sides.size() + orders.size() + 1);
    for (int s : sides) k.push_back(s ? '1' : '0');
    k.push_back('|');
    for (const auto& o : orders) k.push_back(o.i_above ? 'a' : 'b');
    return k;
}

std::string side_string(const FlapState& st) {
    std::string s;
    for (int x : st.sides) s.push_back(x ? 'R' : 'L');
    return s;
}

Polygon placed_square(const FlapInstance& inst, int f, int side) {
    const auto& h = inst.flaps[static_cast<std::size_t>(f)];
    Point d = h.b - h.a;
    Point n = side == 0 ? Point{-d.y, d.x} : Point{d.y, -d.x};
    Polygon p{h.a, h.b, h.b + n, h.a + n};
    if (signed_area(p).sign() < 0) std::reverse(p.begin(), p.end());
    return p;
}

namespace {

// Pairwise facts about the 2n placements, computed once per instance.
class Geometry {
public:
    explicit Geometry(const FlapInstance& inst) : n_(inst.size()) {
        const int m = 2 * n_;
        sq_.reserve(static_cast<std::size_t>(m));
        for (int p = 0; p < m; ++p) sq_.push_back(placed_square(inst, p / 2, p % 2));
        ov_.assign(static_cast<std::size_t>(m * m), 0);
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                if (p / 2 == q / 2) continue;
                auto x = convex_polygon_intersection(sq_[p], sq_[q]);
                ov_[p * m + q] = ov_[q * m + p] = x.size() >= 3 && area(x).sign() > 0;
            }
        cov_.assign(static_cast<std::size_t>(m * n_), 0);
        for (int p = 0; p < m; ++p)
            for (int g = 0; g < n_; ++g) {
                if (p / 2 == g) continue;
                const auto& h = inst.flaps[static_cast<std::size_t>(g)];
                auto x = convex_polygon_intersection(sq_[p], Polygon{h.a, h.b});
                cov_[p * n_ + g] = x.size() >= 2 || (x.size() == 1 && in_segment_interior(x[0], Segment(h.a, h.b)));
            }
    }

    int size() const { return n_; }
    bool overlaps(int f, int s, int g, int t) const { return ov_[(2 * f + s) * 2 * n_ + 2 * g + t]; }
    // placement (f, s) meets the relative interior of g's hinge
    bool covers(int f, int s, int g) const { return cov_[(2 * f + s) * n_ + g]; }

    bool common_area(int f, int s, int g, int t, int h, int u) const {
        std::array<long, 3> p{2L * f + s, 2L * g + t, 2L * h + u};
        std::sort(p.begin(), p.end());
        long key = (p[0] * 2 * n_ + p[1]) * 2 * n_ + p[2];
        if (auto it = tri_.find(key); it != tri_.end()) return it->second;
        auto x = convex_polygon_intersection(convex_polygon_intersection(sq_[p[0]], sq_[p[1]]), sq_[p[2]]);
        bool r = x.size() >= 3 && area(x).sign() > 0;
        tri_.emplace(key, r);
        return r;
    }

private:
    int n_;
    std::vector<Polygon> sq_;
    std::vector<char> ov_, cov_;
    mutable std::unordered_map<long, bool> tri_;
};

// -1: no preset for this pair, otherwise the required i_above bit.
using Preset = std::function<int(int, int)>;

// Emits every valid order assignment for fixed sides. Returns false to stop.
class Completer {
public:
    Completer(const Geometry& geo, const std::vector<int>& sides) : geo_(geo), sides_(sides), n_(geo.size()) {}

    template <class Emit>
    void run(const Preset& preset, Emit&& emit) {
        idx_.assign(static_cast<std::size_t>(n_ * n_), -1);
        pairs_.clear();
        fixed_.clear();
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                if (!geo_.overlaps(i, sides_[i], j, sides_[j])) continue;
                bool ci = geo_.covers(i, sides_[i], j), cj = geo_.covers(j, sides_[j], i);
                if (ci && cj) return;
                int v = ci ? 1 : cj ? 0 : -1;
                if (preset) {
                    int p = preset(i, j);
                    if (p >= 0) {
                        if (v >= 0 && v != p) return;
                        v = p;
                    }
                }
                idx_[i * n_ + j] = static_cast<int>(pairs_.size());
                pairs_.push_back({i, j, v == 1});
                fixed_.push_back(v >= 0);
            }
        // free pairs get positions; each triple is checked once its last
        // pair is decided
        std::vector<int> free;
        std::vector<int> pos(pairs_.size(), -1);
        for (std::size_t k = 0; k < pairs_.size(); ++k)
            if (!fixed_[k]) {
                pos[k] = static_cast<int>(free.size());
                free.push_back(static_cast<int>(k));
            }
        // triples only come from overlapping pairs, so walk neighbour lists
        std::vector<std::vector<int>> later(static_cast<std::size_t>(n_));
        for (const auto& p : pairs_) later[static_cast<std::size_t>(p.i)].push_back(p.j);
        std::vector<std::vector<std::array<int, 3>>> at(free.size() + 1);
        for (int i = 0; i < n_; ++i) {
            const auto& nb = later[static_cast<std::size_t>(i)];
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b) {
                    int j = nb[a], k = nb[b];  // j < k, both sorted ascending
                    int ij = idx_[i * n_ + j], ik = idx_[i * n_ + k], jk = idx_[j * n_ + k];
                    if (jk < 0) continue;
                    int last = std::max({pos[ij], pos[ik], pos[jk]});
                    at[static_cast<std::size_t>(last + 1)].push_back({i, j, k});
                }
        }
        for (const auto& t : at[0])
            if (cyclic(t)) return;
        std::function<bool(std::size_t)> rec = [&](std::size_t d) -> bool {
            if (d == free.size()) {
                FlapState st{sides_, pairs_};
                return emit(std::move(st));
            }
            auto& pr = pairs_[static_cast<std::size_t>(free[d])];
            for (bool above : {false, true}) {
                pr.i_above = above;
                bool ok = true;
                for (const auto& t : at[d + 1]) {
                    if (cyclic(t)) {
                        ok = false;
                        break;
                    }
                }
                if (ok && !rec(d + 1)) return false;
            }
            return true;
        };
        rec(0);
    }

private:
    bool above(int a, int b) const {
        if (a < b) return pairs_[static_cast<std::size_t>(idx_[a * n_ + b])].i_above;
        return !pairs_[static_cast<std::size_t>(idx_[b * n_ + a])].i_above;
    }
    bool cyclic(const std::array<int, 3>& t) const {
        auto [i, j, k] = t;
        bool c = (above(i, j) && above(j, k) && above(k, i)) || (above(j, i) && above(k, j) && above(i, k));
        return c && geo_.common_area(i, sides_[i], j, sides_[j], k, sides_[k]);
    }

    const Geometry& geo_;
    const std::vector<int>& sides_;
    int n_;
    std::vector<int> idx_;
    std::vector<PairOrder> pairs_;
    std::vector<char> fixed_;
};

// Last geometry built on this thread; canonical-form helpers call completions
// once per state on the same instance.
const Geometry& cached_geometry(const FlapInstance& inst) {
    thread_local FlapInstance key;
    thread_local std::unique_ptr<Geometry> geo;
    auto same = [&] {
        if (!geo || key.side != inst.side || key.flaps.size() != inst.flaps.size()) return false;
        for (std::size_t i = 0; i < inst.flaps.size(); ++i)
            if (!(key.flaps[i].a == inst.flaps[i].a) || !(key.flaps[i].b == inst.flaps[i].b)) return false;
        return true;
    };
    if (!same()) {
        geo = std::make_unique<Geometry>(inst);
        key = inst;
    }
    return *geo;
}

void check_budget(const FlapInstance& inst, const FlapBudget& budget) {
    inst.check();
    if (inst.size() > budget.max_flaps)
        throw BudgetExceeded(std::to_string(inst.size()) + " flaps exceed the limit of " +
                             std::to_string(budget.max_flaps));
}

std::vector<FlapState> enumerate_with(const Geometry& geo, const FlapBudget& budget) {
    const int n = geo.size();
    std::vector<FlapState> out;
    std::vector<int> sides(static_cast<std::size_t>(n), 0);
    std::function<void(int)> rec = [&](int f) {
        if (f == n) {
            Completer(geo, sides).run(nullptr, [&](FlapState&& st) {
                if (out.size() >= budget.max_states) throw BudgetExceeded("more than " + std::to_string(budget.max_states) + " flap states");
                out.push_back(std::move(st));
                return true;
            });
            return;
        }
        for (int s : {0, 1}) {
            sides[f] = s;
            bool ok = true;
            for (int g = 0; g < f && ok; ++g)
                ok = !(geo.overlaps(g, sides[g], f, s) && geo.covers(g, sides[g], f) && geo.covers(f, s, g));
            if (ok) rec(f + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<FlapState> moves_with(const Geometry& geo, const FlapState& st) {
    const int n = geo.size();
    std::vector<FlapState> out;
    std::unordered_set<std::string> seen{st.key()};
    std::unordered_map<long, bool> bits;
    for (const auto& o : st.orders) bits[static_cast<long>(o.i) * n + o.j] = o.i_above;
    for (int f = 0; f < n; ++f) {
        for (int s : {st.sides[f], 1 - st.sides[f]}) {
            auto sides = st.sides;
            sides[f] = s;
            Preset preset = [&](int i, int j) {
                if (i == f || j == f) return -1;
                auto it = bits.find(static_cast<long>(i) * n + j);
                return it == bits.end() ? -1 : static_cast<int>(it->second);
            };
            Completer(geo, sides).run(preset, [&](FlapState&& t) {
                if (seen.insert(t.key()).second) out.push_back(std::move(t));
                return true;
            });
        }
    }
    return out;
}

bool structurally_complete(const Geometry& geo, const FlapState& st) {
    const int n = geo.size();
    if (static_cast<int>(st.sides.size()) != n) return false;
    for (int s : st.sides)
        if (s != 0 && s != 1) return false;
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!geo.overlaps(i, st.sides[i], j, st.sides[j])) continue;
            if (k >= st.orders.size() || st.orders[k].i != i || st.orders[k].j != j) return false;
            ++k;
        }
    return k == st.orders.size();
}

}  // namespace

bool validate_state(const FlapInstance& inst, const FlapState& st) {
    Geometry geo(inst);
    if (!structurally_complete(geo, st)) return false;
    std::unordered_map<long, bool> bits;
    for (const auto& o : st.orders) bits[static_cast<long>(o.i) * inst.size() + o.j] = o.i_above;
    bool found = false;
    Completer(geo, st.sides).run([&](int i, int j) { return static_cast<int>(bits.at(static_cast<long>(i) * inst.size() + j)); },
                                 [&](FlapState&&) {
                                     found = true;
                                     return false;
                                 });
    return found;
}

std::vector<FlapState> enumerate_states(const FlapInstance& inst, const FlapBudget& budget) {
    check_budget(inst, budget);
    return enumerate_with(Geometry(inst), budget);
}

std::size_t count_states(const FlapInstance& inst, const FlapBudget& budget) {
    return enumerate_states(inst, budget).size();
}

std::vector<FlapState> completions(const FlapInstance& inst, const std::vector<int>& sides, const FlapState* hint) {
    inst.check();
    if (static_cast<int>(sides.size()) != inst.size()) throw InvalidInput("side vector does not match the instance");
    for (int s : sides)
        if (s != 0 && s != 1) throw InvalidInput("sides must be 0 or 1");
    const Geometry& geo = cached_geometry(inst);
    const int n = inst.size();
    std::vector<FlapState> out;
    auto collect = [&](FlapState&& st) {
        out.push_back(std::move(st));
        return true;
    };
    if (hint && static_cast<int>(hint->sides.size()) == n) {
        std::unordered_map<long, bool> bits;
        for (const auto& o : hint->orders) bits[static_cast<long>(o.i) * n + o.j] = o.i_above;
        Completer(geo, sides).run(
            [&](int i, int j) {
                if (hint->sides[i] != sides[i] || hint->sides[j] != sides[j]) return -1;
                auto it = bits.find(static_cast<long>(i) * n + j);
                return it == bits.end() ? -1 : static_cast<int>(it->second);
            },
            collect);
        if (!out.empty()) return out;
    }
    Completer(geo, sides).run(nullptr, collect);
    return out;
}

std::vector<FlapState> moves(const FlapInstance& inst, const FlapState& st) {
    Geometry geo(inst);
    if (!structurally_complete(geo, st)) throw InvalidInput("state does not match the instance");
    return moves_with(geo, st);
}

bool reachable(const FlapInstance& inst, const FlapState& s, const FlapState& t, const FlapBudget& budget) {
    check_budget(inst, budget);
    Geometry geo(inst);
    if (!validate_state(inst, s) || !validate_state(inst, t)) return false;
    const std::string goal = t.key();
    std::unordered_set<std::string> seen{s.key()};
    if (s.key() == goal) return true;
    std::deque<FlapState> queue{s};
    while (!queue.empty()) {
        auto cur = std::move(queue.front());
        queue.pop_front();
        for (auto& nx : moves_with(geo, cur)) {
            auto k = nx.key();
            if (k == goal) return true;
            if (!seen.insert(k).second) continue;
            if (seen.size() > budget.max_states) throw BudgetExceeded("reachability search too large");
            queue.push_back(std::move(nx));
        }
    }
    return false;
}

std::vector<std::vector<int>> flap_components(const FlapInstance& inst, const FlapBudget& budget) {
    check_budget(inst, budget);
    Geometry geo(inst);
    auto states = enumerate_with(geo, budget);
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i].key(), static_cast<int>(i));
    std::vector<int> comp(states.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (comp[i] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[i] = id;
        std::deque<int> queue{static_cast<int>(i)};
        while (!queue.empty()) {
            int k = queue.front();
            queue.pop_front();
            out.back().push_back(k);
            for (const auto& nx : moves_with(geo, states[static_cast<std::size_t>(k)])) {
                int j = index.at(nx.key());
                if (comp[static_cast<std::size_t>(j)] < 0) {
                    comp[static_cast<std::size_t>(j)] = id;
                    queue.push_back(j);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

bool globally_connected(const FlapInstance& inst, const FlapBudget& budget) {
    return flap_components(inst, budget).size() <= 1;
}

}  // namespace foldwork
