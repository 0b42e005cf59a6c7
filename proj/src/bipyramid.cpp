#include "foldwork/bipyramid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "foldwork/errors.hpp"

namespace foldwork {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_sides(const std::vector<double>& sides, double tol) {
    if (sides.size() < 3) throw InvalidInput("need at least 3 side lengths");
    for (double s : sides)
        if (!(s > 0) || !std::isfinite(s)) throw InvalidInput("side lengths must be positive");
    if (!(tol > 0)) throw InvalidInput("tolerance must be positive");
    double mx = *std::max_element(sides.begin(), sides.end());
    double sum = std::accumulate(sides.begin(), sides.end(), 0.0);
    if (mx > sum / (1 + kPi / 2))
        throw PreconditionViolated("longest side " + std::to_string(mx) + " exceeds sum/(1+pi/2) = " +
                                   std::to_string(sum / (1 + kPi / 2)));
}

double half_angle(double s, double r) { return std::asin(std::min(1.0, s / (2 * r))); }

}  // namespace

double wrap_excess(const std::vector<double>& sides, double r) {
    double t = 0;
    for (double s : sides) t += 2 * half_angle(s, r);
    return t - 2 * kPi;
}

CyclicPolygonSolution circumradius(const std::vector<double>& sides, double tol) {
    check_sides(sides, tol);
    double lo = *std::max_element(sides.begin(), sides.end()) / 2;
    double hi = std::max(lo, std::accumulate(sides.begin(), sides.end(), 0.0) / 4);
    while (wrap_excess(sides, hi) > 0) hi *= 2;

    CyclicPolygonSolution out;
    double mid = hi, f = wrap_excess(sides, hi);
    for (out.iterations = 0; out.iterations < 200 && std::abs(f) > tol; ++out.iterations) {
        mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;  // interval exhausted
        f = wrap_excess(sides, mid);
        (f > 0 ? lo : hi) = mid;
    }
    out.r = mid;
    out.residual = f;
    for (double s : sides) out.angles.push_back(2 * half_angle(s, mid));
    return out;
}

Bipyramid3D realize(const std::vector<double>& sides, double ell, double tol) {
    auto sol = circumradius(sides, tol);
    if (!(ell > 0) || !std::isfinite(ell)) throw InvalidInput("pole edge length must be positive");
    // a pole edge shorter than the radius gives apex angles over 2 pi; at the
    // radius itself the bipyramid is flat
    double apex = 0;
    for (double s : sides) apex += s > 2 * ell ? kPi : 2 * half_angle(s, ell);
    if (ell < sol.r && apex > 2 * kPi + tol)
        throw ApexAngleExcess("apex angles add up to " + std::to_string(apex) + " > 2 pi");
    double s2 = ell * ell - sol.r * sol.r;
    if (ell <= sol.r || std::sqrt(std::max(0.0, s2)) <= tol)
        throw PoleTooShort("pole edge " + std::to_string(ell) + " does not exceed the radius " + std::to_string(sol.r));

    Bipyramid3D b;
    b.r = sol.r;
    b.s = std::sqrt(s2);
    b.ell = ell;
    b.angles = sol.angles;
    double phi = 0;
    for (double th : sol.angles) {
        b.equator.emplace_back(b.r * std::cos(phi), b.r * std::sin(phi), 0.0);
        phi += th;
    }
    b.north = Eigen::Vector3d(0, 0, b.s);
    b.south = Eigen::Vector3d(0, 0, -b.s);
    return b;
}

bool permutation_check(const std::vector<double>& sides, double tol, int trials, std::uint64_t seed) {
    double r0 = circumradius(sides, tol).r;
    std::mt19937_64 rng(seed);
    auto p = sides;
    for (int t = 0; t < trials; ++t) {
        std::shuffle(p.begin(), p.end(), rng);
        if (std::abs(circumradius(p, tol).r - r0) > 10 * tol) return false;
    }
    return true;
}

}  // namespace foldwork
