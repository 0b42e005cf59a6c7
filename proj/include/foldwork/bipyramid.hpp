#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace foldwork {

// The only floating-point module; everything else is exact.

struct CyclicPolygonSolution {
    double r = 0;
    std::vector<double> angles;  // central angle of each side, in input order
    double residual = 0;         // sum of angles minus 2*pi
    int iterations = 0;
};

/// Sum over sides of 2 asin(s / 2r), minus 2 pi. Strictly decreasing for
/// r >= max S / 2.
double wrap_excess(const std::vector<double>& sides, double r);

/// Bisection for the radius at which the sides wrap the circle exactly once.
/// Throws InvalidInput for fewer than 3 sides, non-positive sides or tol, and
/// PreconditionViolated unless max S <= sum S / (1 + pi/2).
CyclicPolygonSolution circumradius(const std::vector<double>& sides, double tol = 1e-12);

struct Bipyramid3D {
    double r = 0, s = 0, ell = 0;  // circumradius, half-diagonal, pole edge length
    std::vector<double> angles;
    std::vector<Eigen::Vector3d> equator;  // z = 0
    Eigen::Vector3d north, south;          // (0, 0, +-s)
};

/// Throws as circumradius, plus PoleTooShort for ell ~ r and ApexAngleExcess
/// when the apex angles at a pole add up to more than 2 pi (ell < r).
Bipyramid3D realize(const std::vector<double>& sides, double ell, double tol = 1e-12);

/// Circumradius agrees within 10 tol over `trials` shuffles of the sides.
bool permutation_check(const std::vector<double>& sides, double tol = 1e-12, int trials = 20,
                       std::uint64_t seed = 1);

}  // namespace foldwork
