#pragma once

#include "freelat/hyperbolic.hpp"
#include "freelat/schottky.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace freelat {

/// Sorted d(p, g p) over all group elements g with d(p, g p) <= max_radius,
/// identity included. Subtrees whose pairing half-plane lies beyond
/// max_radius are skipped, which never drops an orbit point.
std::vector<double> orbit_distances(const SchottkyGroup& s, const HPoint& p, double max_radius);

/// Finitely generated subgroup of PSL(2,Z) given by integer generators.
struct IntegerLattice {
    std::string name;
    std::vector<std::array<std::int64_t, 4>> generators;
};

/// PSL(2,Z) generated by S = [[0,-1],[1,0]] and T = [[1,1],[0,1]].
IntegerLattice modular_group();

/// Breadth-first orbit enumeration with exact deduplication up to sign.
/// Elements are kept while |g|^2 <= 2 cosh(max_radius + 2 d(i, p)); the
/// search is complete for generating sets along which the Frobenius norm can
/// be reduced step by step (true for S, T of the modular group).
std::vector<double> orbit_distances(const IntegerLattice& lattice, const HPoint& p,
                                    double max_radius);

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExponentEstimate {
    double exponent = 0;      ///< slope of log N(R) against R (base e)
    double residual_rms = 0;  ///< error bar: rms residual of the fit
    double slope_stderr = 0;
    double window_lo = 0, window_hi = 0;
    std::size_t orbit_points = 0;
};

/// Least-squares slope of log N(R) over R in [max_radius/2, max_radius].
/// Throws InsufficientData with fewer than 10 orbit points.
ExponentEstimate fit_growth_rate(const std::vector<double>& sorted_distances, double max_radius);

ExponentEstimate critical_exponent(const SchottkyGroup& s, const HPoint& p, double max_radius);
ExponentEstimate critical_exponent(const IntegerLattice& lattice, const HPoint& p,
                                   double max_radius);

/// Partial Poincare series sum over the listed distances of e^(-s d).
double poincare_partial_sum(const std::vector<double>& distances, double s);

/// Root s of P_n(s) = P_{n-1}(s), where P_n sums e^(-s d(p, w p)) over reduced
/// words of length n. Smooth in the generators, unlike the counting slope.
double sphere_ratio_exponent(const SchottkyGroup& s, const HPoint& p, std::size_t n);

/// Radius at which about `target_points` orbit points are expected, judged by
/// the sphere-ratio exponent; clamped to [10, 150].
double suggested_radius(const SchottkyGroup& s, const HPoint& p, double target_points = 2e5);

}  // namespace freelat
