#include "foldwork/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace foldwork::svg {

namespace {

constexpr double kSize = 480, kMargin = 16;

// World to page, y up.
class Canvas {
public:
    void include(const Point& p) {
        double x = p.x.to_double(), y = p.y.to_double();
        x0_ = std::min(x0_, x), x1_ = std::max(x1_, x);
        y0_ = std::min(y0_, y), y1_ = std::max(y1_, y);
    }

    std::string begin() {
        if (x0_ > x1_) x0_ = y0_ = 0, x1_ = y1_ = 1;
        double span = std::max({x1_ - x0_, y1_ - y0_, 1e-9});
        k_ = (kSize - 2 * kMargin) / span;
        w_ = (x1_ - x0_) * k_ + 2 * kMargin;
        h_ = (y1_ - y0_) * k_ + 2 * kMargin;
        std::ostringstream o;
        o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w_) << "\" height=\""
          << num(h_) << "\" viewBox=\"0 0 " << num(w_) << " " << num(h_) << "\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        return o.str();
    }

    std::string xy(const Point& p) const {
        return num((p.x.to_double() - x0_) * k_ + kMargin) + "," + num((y1_ - p.y.to_double()) * k_ + kMargin);
    }

    std::string path(const std::vector<Point>& pts) const {
        std::string d;
        for (std::size_t i = 0; i < pts.size(); ++i) d += (i ? " L" : "M") + xy(pts[i]);
        return d + " Z";
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }

private:
    double x0_ = std::numeric_limits<double>::infinity(), x1_ = -x0_, y0_ = x0_, y1_ = -x0_;
    double k_ = 1, w_ = 0, h_ = 0;
};

std::string gray(int ply) {
    int g = 255 - 28 * std::min(ply, 8);
    char buf[32];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g & 0xff, g & 0xff, g & 0xff);
    return buf;
}

std::string line(const Canvas& c, const Point& a, const Point& b, const char* stroke, double width) {
    auto pa = c.xy(a), pb = c.xy(b);
    auto ca = pa.find(','), cb = pb.find(',');
    return "<line x1=\"" + pa.substr(0, ca) + "\" y1=\"" + pa.substr(ca + 1) + "\" x2=\"" + pb.substr(0, cb) +
           "\" y2=\"" + pb.substr(cb + 1) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + Canvas::num(width) +
           "\"/>\n";
}

}  // namespace

std::string arrangement(const FoldedArrangement& fa) {
    Canvas c;
    for (const auto& v : fa.sub.vertices) c.include(v);
    std::string out = c.begin();
    for (int f = 0; f < fa.sub.num_faces(); ++f) {
        int cell = fa.cell_of_face[static_cast<std::size_t>(f)];
        const auto& face = fa.sub.faces[static_cast<std::size_t>(f)];
        if (cell < 0 || face.outer.empty()) continue;
        std::string d = c.path(fa.sub.cycle_points(face.outer));
        for (const auto& h : face.holes) d += " " + c.path(fa.sub.cycle_points(h));
        out += "<path d=\"" + d + "\" fill=\"" + gray(fa.ply(cell)) + "\" fill-rule=\"evenodd\" stroke=\"none\"><title>cell " +
               std::to_string(cell) + " ply " + std::to_string(fa.ply(cell)) + "</title></path>\n";
    }
    for (int e = 0; e < static_cast<int>(fa.sub.edges.size()); ++e) {
        auto s = fa.sub.edge_segment(e);
        out += line(c, s.a, s.b, "black", 1);
    }
    return out + "</svg>\n";
}

std::string crease_pattern(const CreasePattern& cp) {
    Canvas c;
    for (const auto& p : cp.boundary) c.include(p);
    for (const auto& cr : cp.creases) c.include(cr.a), c.include(cr.b);
    std::string out = c.begin();
    if (!cp.boundary.empty())
        out += "<path d=\"" + c.path(cp.boundary) + "\" fill=\"" + gray(1) + "\" stroke=\"black\" stroke-width=\"1.50\"/>\n";
    for (const auto& cr : cp.creases) {
        const char* col = !cr.label ? "black" : *cr.label == FoldLabel::Mountain ? "#c0392b" : "#2c5aa0";
        out += line(c, cr.a, cr.b, col, 1.5);
    }
    return out + "</svg>\n";
}

std::string flaps(const FlapInstance& inst, const FlapState* st) {
    Canvas c;
    for (int f = 0; f < inst.size(); ++f)
        for (int s : {0, 1})
            if (!st || st->sides[static_cast<std::size_t>(f)] == s)
                for (const auto& p : placed_square(inst, f, s)) c.include(p);
    std::string out = c.begin();
    if (st) {
        // flaps with fewer flaps beneath them first
        std::vector<int> below(static_cast<std::size_t>(inst.size()), 0), order(below.size());
        for (const auto& o : st->orders) ++below[static_cast<std::size_t>(o.i_above ? o.i : o.j)];
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
        for (int f : order)
            out += "<path d=\"" + c.path(placed_square(inst, f, st->sides[static_cast<std::size_t>(f)])) +
                   "\" fill=\"#555555\" fill-opacity=\"0.30\" stroke=\"#333333\" stroke-width=\"0.50\"><title>flap " +
                   std::to_string(f) + "</title></path>\n";
    }
    for (const auto& h : inst.flaps) out += line(c, h.a, h.b, "#c0392b", 2.5);
    return out + "</svg>\n";
}

}  // namespace foldwork::svg
