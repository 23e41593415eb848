#pragma once

#include "freelat/hyperbolic.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace freelat {

struct QGConstants {
    double delta = 0, lambda = 1, c = 0, R = 0;
    double K = 0, M0 = 0, M1 = 0, lambda_prime = 1, c_prime = 0;
};

/// Derived constants of the local-to-global theorem. M1 is the least value
/// >= M0 with 1/lambda - (2c + 4K)/M1 >= 1/(2 lambda). Throws std::domain_error
/// for lambda < 1 or negative inputs.
QGConstants qg_constants(double delta, double lambda, double c, double R);

struct QGViolation {
    std::size_t a = 0, b = 0;
    double distance = 0, lower = 0, upper = 0;
};

struct QGCheck {
    bool ok = true;
    std::size_t pairs = 0;
    std::vector<QGViolation> violations;  ///< first few only
    explicit operator bool() const noexcept { return ok; }
};

/// Unit-speed discrete path p_k = (S_1 ... S_k) i given by its step isometries.
struct FramedPath {
    std::vector<Moebius> steps;

    std::size_t size() const noexcept { return steps.size() + 1; }
    /// Absolute coordinates; these lose precision after a few dozen steps.
    std::vector<HPoint> points() const;
};

/// lambda^-1 |a-b| - c <= d(p_a, p_b) <= lambda |a-b| + c for 0 < b - a <= window.
QGCheck check_quasi_geodesic(std::span<const HPoint> path, double window, double lambda, double c);
QGCheck check_quasi_geodesic(const FramedPath& path, double window, double lambda, double c);

inline QGCheck is_local_quasi_geodesic(std::span<const HPoint> path, double M, double lambda,
                                       double c) {
    return check_quasi_geodesic(path, M, lambda, c);
}
inline QGCheck is_local_quasi_geodesic(const FramedPath& path, double M, double lambda, double c) {
    return check_quasi_geodesic(path, M, lambda, c);
}

struct PathShape {
    std::size_t points = 300;
    int min_segment = 6;
    int max_segment = 20;
    double max_turn = 1.2;
    double sharp_turn_rate = 0.0;  ///< chance that a corner turns by more than 2.6
};

/// Concatenated geodesic segments of integer length with random turns.
template <class Rng>
FramedPath sample_piecewise_geodesic(const PathShape& shape, Rng& rng);

FramedPath geodesic_path(std::size_t points);

struct LocalToGlobalOptions {
    std::size_t trials = 1000;
    double delta = kDeltaH2;
    double lambda = 1.2;
    double c = 0.5;
    std::optional<double> R;  ///< default from stability_constant_table
    std::optional<double> M;  ///< default ceil(M1)
    PathShape shape{};
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t max_attempts = 1000;
};

struct FailedPath {
    std::uint64_t trial = 0;
    std::vector<double> turns;  ///< turn angle per step, reproduces the path
    QGViolation violation;
};

struct LocalToGlobalReport {
    QGConstants constants;
    double M = 0;
    std::size_t tested = 0;
    std::size_t rejected = 0;
    std::size_t passed = 0;
    double min_lower_slack = 0;  ///< min over pairs of d - (|a-b|/lambda' - 2K)
    std::vector<FailedPath> failures;
    bool ok() const noexcept { return failures.empty() && passed == tested; }
};

LocalToGlobalReport check_local_to_global(const LocalToGlobalOptions& options);

/// Rebuilds a framed path from per-step turn angles.
FramedPath path_from_turns(std::span<const double> turns);

/// Max Hausdorff distance between sampled (lambda, c)-quasi-geodesics and the
/// geodesic segment joining their ends, doubled.
double calibrate_stability_constant(double lambda, double c, std::size_t samples,
                                    std::uint64_t seed);

/// Tabulated calibration for the upper half-plane; throws std::out_of_range
/// past the table, where R must be supplied explicitly.
double stability_constant_table(double lambda, double c);

}  // namespace freelat

#include "freelat/detail/quasigeodesic_impl.hpp"
