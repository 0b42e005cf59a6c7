#include "foldwork/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace foldwork::gen {

namespace {

Point P(const Rat& x, const Rat& y) { return {x, y}; }

int half_plane(const Point& d) { return (d.y.sign() > 0 || (d.y.is_zero() && d.x.sign() > 0)) ? 0 : 1; }

bool angle_less(const Point& a, const Point& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b).sign() > 0;
}

bool same_ray(const Point& a, const Point& b) { return cross(a, b).is_zero() && dot(a, b).sign() > 0; }

// Strictly inside the counterclockwise sweep from `from` to `to`.
bool in_sweep(const Point& from, const Point& to, const Point& d) {
    if (same_ray(d, from) || same_ray(d, to)) return false;
    int a = cross(from, d).sign(), b = cross(d, to).sign(), c = cross(from, to).sign();
    if (c > 0) return a > 0 && b > 0;
    return a > 0 || b > 0;
}

// Folded images of the rays are pairwise distinct (no two sectors cancel).
bool distinct_images(const std::vector<Point>& dirs) {
    Isometry phi = Isometry::identity();
    std::vector<Point> images;
    for (const auto& d : dirs) {
        Point img = phi.apply_linear(d);
        for (const auto& e : images) {
            if (same_ray(img, e)) return false;
        }
        images.push_back(img);
        phi = phi.compose(Isometry::reflection(Line::through(P(0, 0), d)));
    }
    return true;
}

std::vector<Rat> increasing(int count, const Rat& total, std::mt19937& rng) {
    std::uniform_int_distribution<int> w(1, 4);
    std::vector<Rat> gaps;
    Rat sum = 0;
    for (int i = 0; i <= count; ++i) {
        gaps.emplace_back(w(rng));
        sum += gaps.back();
    }
    std::vector<Rat> out;
    Rat acc = 0;
    for (int i = 0; i < count; ++i) {
        acc += gaps[static_cast<std::size_t>(i)] * total / sum;
        out.push_back(acc);
    }
    return out;
}

CreasePattern grid(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    // xs, ys include both paper edges
    CreasePattern cp;
    cp.boundary = {P(xs.front(), ys.front()), P(xs.back(), ys.front()), P(xs.back(), ys.back()),
                   P(xs.front(), ys.back())};
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) cp.creases.push_back({P(xs[i], ys[j]), P(xs[i], ys[j + 1])});
    }
    for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) cp.creases.push_back({P(xs[i], ys[j]), P(xs[i + 1], ys[j])});
    }
    return cp;
}

std::vector<Rat> unit_steps(int n) {
    std::vector<Rat> v;
    for (int i = 0; i <= n; ++i) v.emplace_back(i);
    return v;
}

}  // namespace

CreasePattern with_labels(CreasePattern cp, const Labels& labels) {
    if (labels.empty()) return cp;
    if (labels.size() != cp.creases.size()) throw InvalidInput("label count does not match crease count");
    for (std::size_t i = 0; i < labels.size(); ++i) cp.creases[i].label = labels[i];
    return cp;
}

CreasePattern strip(int n, const Labels& labels) {
    if (n < 1) throw InvalidInput("strip needs n >= 1");
    return with_labels(grid(unit_steps(n), unit_steps(1)), labels);
}

CreasePattern map(int rows, int cols, const Labels& labels) {
    if (rows < 1 || cols < 1) throw InvalidInput("map needs positive dimensions");
    return with_labels(grid(unit_steps(cols), unit_steps(rows)), labels);
}

int map_crease_count(int rows, int cols) { return (cols - 1) * rows + (rows - 1) * cols; }

CreasePattern fan(const std::vector<Point>& directions, const Labels& labels) {
    CreasePattern cp;
    for (const auto& d : directions) {
        if (d == Point{0, 0}) throw InvalidInput("zero fan direction");
        cp.creases.push_back({P(0, 0), d, true});
    }
    return with_labels(cp, labels);
}

std::vector<Point> kawasaki_directions(int k, std::mt19937& rng) {
    if (k < 2 || k % 2) throw InvalidInput("a flat-foldable fan needs an even number of creases");
    std::uniform_int_distribution<int> coord(-9, 9);
    for (;;) {
        std::vector<Point> dirs;
        while (static_cast<int>(dirs.size()) < k - 1) {
            Point d = P(coord(rng), coord(rng));
            if (d == Point{0, 0}) continue;
            if (std::any_of(dirs.begin(), dirs.end(), [&](const Point& e) { return same_ray(d, e); })) continue;
            dirs.push_back(d);
        }
        std::sort(dirs.begin(), dirs.end(), angle_less);
        Isometry m = Isometry::identity();
        for (const auto& d : dirs) m = Isometry::reflection(Line::through(P(0, 0), d)).compose(m);
        // m is a reflection across a line through the origin; its axis closes the fan
        Point axis = (m.m00 == -1) ? P(0, 1) : P(1 + m.m00, m.m10);
        for (const Point& cand : {axis, P(-axis.x, -axis.y)}) {
            if (in_sweep(dirs.back(), dirs.front(), cand)) {
                dirs.push_back(cand);
                std::sort(dirs.begin(), dirs.end(), angle_less);
                if (distinct_images(dirs)) return dirs;
                break;
            }
        }
    }
}

CreasePattern random_strip(int n, std::mt19937& rng) {
    std::vector<Rat> xs{0};
    for (const auto& x : increasing(n - 1, Rat(n), rng)) xs.push_back(x);
    xs.emplace_back(n);
    return grid(xs, unit_steps(1));
}

CreasePattern random_grid(int rows, int cols, std::mt19937& rng) {
    std::vector<Rat> xs{0}, ys{0};
    for (const auto& x : increasing(cols - 1, Rat(cols), rng)) xs.push_back(x);
    for (const auto& y : increasing(rows - 1, Rat(rows), rng)) ys.push_back(y);
    xs.emplace_back(cols);
    ys.emplace_back(rows);
    return grid(xs, ys);
}

std::vector<Labels> all_labelings(int creases, bool allow_none) {
    std::vector<std::optional<FoldLabel>> choices{FoldLabel::Mountain, FoldLabel::Valley};
    if (allow_none) choices.insert(choices.begin(), std::nullopt);
    std::vector<Labels> out{Labels{}};
    for (int i = 0; i < creases; ++i) {
        std::vector<Labels> next;
        for (const auto& l : out) {
            for (const auto& c : choices) {
                next.push_back(l);
                next.back().push_back(c);
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace foldwork::gen
