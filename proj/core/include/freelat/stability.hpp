#pragma once

#include "freelat/schottky.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace freelat {

class PerturbationTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StabilityOptions {
    std::size_t limit_depth = 6;  ///< limit_set_sample depth
    std::size_t ball_radius = 5;  ///< orbit ball for distortion and injectivity
    std::size_t sphere_n = 9;     ///< word length for sphere_ratio_exponent
    std::uint64_t seed = 0;
};

struct StabilityRow {
    double epsilon = 0;
    std::vector<Moebius> generators;  ///< perturbed positive generators
    double hausdorff = 0;             ///< chordal, between limit-set samples
    double kappa = 1;                 ///< max over pairs of max(r, 1/r), r = d_eps / d
    double min_orbit_distance = 0;
    bool injective = false;           ///< min_orbit_distance >= rho / 2
    double exponent = 0;
    double exponent_shift = 0;

    double kappa_deviation() const { return kappa - 1.0; }
};

struct StabilityReport {
    HPoint basepoint;
    double rho = 0;  ///< min distance between distinct unperturbed orbit points
    double base_exponent = 0;
    std::vector<StabilityRow> rows;
};

/// g exp(t X) for a unit traceless X, with t found by bisection so that the
/// probe metric distance to g equals epsilon.
Moebius perturb_generator(const Moebius& g, double u, double v, double w, double epsilon);

/// Perturbs every generator in a fixed random direction (one draw per
/// generator, shared by all epsilons) and measures the orbit map against the
/// original at the original basepoint. Throws PerturbationTooLarge when the
/// perturbed pairing arcs stop being disjoint.
StabilityReport perturbation_stability_experiment(const SchottkyGroup& s,
                                                  std::span<const double> epsilons,
                                                  const StabilityOptions& opts = {});

/// Set Hausdorff distance between two boundary samples in the chordal metric.
double chordal_hausdorff(const std::vector<LimitPoint>& a, const std::vector<LimitPoint>& b);

struct SvarcMilnorFit {
    double scale = 0;   ///< minimal generator translation length
    double lambda = 1;  ///< multiplicative constant against scale * |h|
    double c = 0;       ///< smallest additive constant valid for lambda
    double translation_ratio = 1;  ///< max / min generator translation length
    std::size_t samples = 0;
};

/// Fits lambda^-1 |h| - c <= d(p, h p) <= lambda |h| + c over ball(radius),
/// with word length measured in units of the shortest translation length.
SvarcMilnorFit svarc_milnor_fit(const SchottkyGroup& s, const HPoint& p, std::size_t radius);

}  // namespace freelat
