#include "freelat/quasigeodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

namespace freelat {

QGConstants qg_constants(double delta, double lambda, double c, double R) {
    if (!(lambda >= 1.0))
        throw std::domain_error("quasi-geodesic constants need lambda >= 1");
    if (delta < 0 || c < 0 || R < 0)
        throw std::domain_error("delta, c and R must be nonnegative");
    QGConstants k;
    k.delta = delta;
    k.lambda = lambda;
    k.c = c;
    k.R = R;
    const double l2 = lambda * lambda;
    k.K = std::max(R + 2 * delta, 2 * R * l2 + 4 * delta * l2 + c * l2 + lambda + c);
    k.M0 = 4 * lambda * k.K + 4 * R * lambda + 8 * delta * lambda + 2 * c * lambda + 2;
    k.M1 = std::max(k.M0, 2 * lambda * (2 * c + 4 * k.K));
    const double inv = 1.0 / lambda - (2 * c + 4 * k.K) / k.M1;
    k.lambda_prime = std::max(1.0 / inv, lambda + 2 * c / k.M1);
    k.c_prime = 4 * k.K + 2;
    return k;
}

std::vector<HPoint> FramedPath::points() const {
    std::vector<HPoint> out;
    out.reserve(size());
    Moebius frame;
    const HPoint base{0.0, 1.0};
    out.push_back(base);
    for (const Moebius& s : steps) {
        frame = frame * s;
        out.push_back(frame.apply(base));
    }
    return out;
}

namespace {

struct PairCheck {
    QGCheck& check;
    double lambda, c;

    void operator()(std::size_t a, std::size_t b, double d) {
        ++check.pairs;
        const double gap = static_cast<double>(b - a);
        const double lower = gap / lambda - c, upper = lambda * gap + c;
        if (d < lower - 1e-9 || d > upper + 1e-9) {
            check.ok = false;
            if (check.violations.size() < 8) check.violations.push_back({a, b, d, lower, upper});
        }
    }
};

double acosh_half_norm(const Moebius& m) {
    const double t = ((m.a() - m.d()) * (m.a() - m.d()) + (m.b() + m.c()) * (m.b() + m.c())) / 2.0;
    if (t > 1e100) return std::log(2.0 * t + 2.0);
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

}  // namespace

QGCheck check_quasi_geodesic(std::span<const HPoint> path, double window, double lambda, double c) {
    QGCheck check;
    PairCheck pair{check, lambda, c};
    for (std::size_t a = 0; a < path.size(); ++a)
        for (std::size_t b = a + 1; b < path.size() && static_cast<double>(b - a) <= window; ++b)
            pair(a, b, hdist(path[a], path[b]));
    return check;
}

QGCheck check_quasi_geodesic(const FramedPath& path, double window, double lambda, double c) {
    QGCheck check;
    PairCheck pair{check, lambda, c};
    const std::size_t n = path.size();
    for (std::size_t a = 0; a < n; ++a) {
        Moebius rel;
        for (std::size_t b = a + 1; b < n && static_cast<double>(b - a) <= window; ++b) {
            rel = rel * path.steps[b - 1];
            pair(a, b, acosh_half_norm(rel));
        }
    }
    return check;
}

FramedPath path_from_turns(std::span<const double> turns) {
    FramedPath p;
    p.steps.reserve(turns.size());
    const Moebius forward = Moebius::dilation(std::exp(1.0));
    for (double t : turns) p.steps.push_back(t == 0.0 ? forward : Moebius::rotation(t) * forward);
    return p;
}

FramedPath geodesic_path(std::size_t points) {
    return path_from_turns(std::vector<double>(points == 0 ? 0 : points - 1, 0.0));
}

LocalToGlobalReport check_local_to_global(const LocalToGlobalOptions& o) {
    LocalToGlobalReport report;
    const double R = o.R ? *o.R : stability_constant_table(o.lambda, o.c);
    report.constants = qg_constants(o.delta, o.lambda, o.c, R);
    const QGConstants& k = report.constants;
    report.M = o.M ? *o.M : std::ceil(k.M1);
    if (report.M < k.M1)
        throw std::domain_error("local window M must be at least M1");
    PathShape shape = o.shape;
    shape.points = std::max<std::size_t>(shape.points, 2 * static_cast<std::size_t>(report.M) + 1);

    struct Outcome {
        std::size_t rejected = 0;
        bool passed = false;
        double slack = 0;
        std::optional<FailedPath> failure;
    };
    std::vector<Outcome> outcomes(o.trials);
    auto run = [&](std::size_t trial) {
        Outcome& out = outcomes[trial];
        std::mt19937_64 rng(o.seed * 0x9E3779B97F4A7C15ULL + trial);
        for (std::size_t attempt = 0; attempt < o.max_attempts; ++attempt) {
            std::vector<double> turns = sample_turns(shape, rng);
            FramedPath path = path_from_turns(turns);
            if (!check_quasi_geodesic(path, report.M, o.lambda, o.c)) {
                ++out.rejected;
                continue;
            }
            QGCheck global = check_quasi_geodesic(path, static_cast<double>(path.size()),
                                                  k.lambda_prime, 2 * k.K);
            // slack of the lower inequality, the binding one for long paths
            double slack = std::numeric_limits<double>::infinity();
            const std::size_t n = path.size();
            for (std::size_t a = 0; a < n; a += 7) {
                Moebius rel;
                for (std::size_t b = a + 1; b < n; ++b) {
                    rel = rel * path.steps[b - 1];
                    const double gap = static_cast<double>(b - a);
                    slack = std::min(slack, acosh_half_norm(rel) - (gap / k.lambda_prime - 2 * k.K));
                }
            }
            out.slack = slack;
            if (global) {
                out.passed = true;
            } else {
                out.failure = FailedPath{trial, std::move(turns), global.violations.front()};
            }
            return;
        }
    };
    const unsigned threads = std::max(1u, o.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < o.trials; ++t) run(t);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < o.trials; t += threads) run(t);
            });
        for (auto& th : pool) th.join();
    }
    report.min_lower_slack = std::numeric_limits<double>::infinity();
    for (auto& out : outcomes) {
        report.rejected += out.rejected;
        if (out.passed || out.failure) ++report.tested;
        if (out.passed) ++report.passed;
        if (out.failure) report.failures.push_back(std::move(*out.failure));
        if (out.passed || out.failure) report.min_lower_slack = std::min(report.min_lower_slack, out.slack);
    }
    return report;
}

namespace {

double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

double acosh_exp(double l) {
    // acosh(e^l) for l >= 0
    l = std::max(l, 0.0);
    return l + std::log1p(std::sqrt(-std::expm1(-2.0 * l)));
}

/// Hausdorff distance between a discrete path and the geodesic segment
/// joining its ends. Works from pairwise distances only: the foot of the
/// perpendicular from p_k splits the chord at c1 with
/// cosh d(p_0, p_k) = cosh h cosh c1 and cosh d(p_k, p_n) = cosh h cosh(c - c1).
double hausdorff_to_chord(const FramedPath& path) {
    const std::size_t n = path.size();
    std::vector<double> from_start(n, 0.0), to_end(n, 0.0);
    Moebius prefix;
    for (std::size_t k = 1; k < n; ++k) {
        prefix = prefix * path.steps[k - 1];
        from_start[k] = acosh_half_norm(prefix);
    }
    Moebius suffix;
    for (std::size_t k = n - 1; k-- > 0;) {
        suffix = path.steps[k] * suffix;
        to_end[k] = acosh_half_norm(suffix);
    }
    const double c = from_start[n - 1];
    std::vector<double> foot(n), height(n);
    double far = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = from_start[k], b = to_end[k];
        const double target = log_cosh(a) - log_cosh(b);
        double lo = -(a + b + c) - 1.0, hi = (a + b + c) + 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            (log_cosh(mid) - log_cosh(c - mid) < target ? lo : hi) = mid;
        }
        foot[k] = 0.5 * (lo + hi);
        height[k] = acosh_exp(log_cosh(a) - log_cosh(foot[k]));
        far = std::max(far, (foot[k] < 0.0 || foot[k] > c) ? std::min(a, b) : height[k]);
    }
    for (double t = 0.0; t <= c; t += 0.05) {
        double near = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k)
            near = std::min(near, acosh_exp(log_cosh(height[k]) + log_cosh(t - foot[k])));
        far = std::max(far, near);
    }
    return far;
}

}  // namespace

double calibrate_stability_constant(double lambda, double c, std::size_t samples,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PathShape shape;
    shape.points = 61;
    shape.min_segment = 1;
    shape.max_segment = 12;
    shape.max_turn = 2.0;
    double worst = 0.0;
    std::size_t accepted = 0;
    for (std::size_t attempt = 0; accepted < samples && attempt < 200 * samples; ++attempt) {
        FramedPath path = sample_piecewise_geodesic(shape, rng);
        if (!check_quasi_geodesic(path, static_cast<double>(path.size()), lambda, c)) continue;
        ++accepted;
        worst = std::max(worst, hausdorff_to_chord(path));
    }
    return 2.0 * worst;
}

namespace {

struct TableRow {
    double lambda, c, R;
};

// calibrate_stability_constant(lambda, c, 400, 0), rounded up to 0.05
constexpr std::array<TableRow, 16> kTable{{
    {1.1, 0, 1.35}, {1.1, 0.5, 2.15}, {1.1, 1, 2.65}, {1.1, 2, 3.4},
    {1.2, 0, 1.7},  {1.2, 0.5, 2.55}, {1.2, 1, 2.9},  {1.2, 2, 3.65},
    {1.5, 0, 2.6},  {1.5, 0.5, 3.05}, {1.5, 1, 3.75}, {1.5, 2, 4.7},
    {2, 0, 3.75},   {2, 0.5, 4.1},    {2, 1, 4.7},    {2, 2, 4.7},
}};

}  // namespace

double stability_constant_table(double lambda, double c) {
    const TableRow* best = nullptr;
    for (const TableRow& row : kTable)
        if (row.lambda >= lambda && row.c >= c && (!best || row.R < best->R)) best = &row;
    if (!best)
        throw std::out_of_range("no tabulated stability constant; supply R explicitly");
    return best->R;
}

}  // namespace freelat
