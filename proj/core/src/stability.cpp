#include "freelat/stability.hpp"

#include "freelat/orbit_growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace freelat {

Moebius perturb_generator(const Moebius& g, double u, double v, double w, double epsilon) {
    if (!(epsilon >= 0))
        throw std::invalid_argument("epsilon must be nonnegative");
    const double n = std::sqrt(u * u + v * v + w * w);
    if (!(n > 0))
        throw std::invalid_argument("perturbation direction must be nonzero");
    u /= n, v /= n, w /= n;
    if (epsilon == 0) return g;
    // the probe metric is left-invariant, so only exp(tX) matters
    auto dist = [&](double t) { return moebius_distance(moebius_exp(t * u, t * v, t * w), Moebius{}); };
    // distance grows roughly linearly in t near 0: rescale first, bisect if that stalls
    double t = epsilon;
    for (int it = 0; it < 30; ++it) {
        const double d = dist(t);
        if (std::abs(d - epsilon) <= 1e-12 * epsilon) return g * moebius_exp(t * u, t * v, t * w);
        t *= epsilon / d;
    }
    double lo = 0, hi = epsilon;
    while (dist(hi) < epsilon) {
        lo = hi;
        hi *= 2;
        if (hi > 64) throw PerturbationTooLarge("epsilon beyond the reach of the perturbation direction");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = (lo + hi) / 2;
        (dist(mid) < epsilon ? lo : hi) = mid;
    }
    t = (lo + hi) / 2;
    return g * moebius_exp(t * u, t * v, t * w);
}

double chordal_hausdorff(const std::vector<LimitPoint>& a, const std::vector<LimitPoint>& b) {
    auto directed = [](const std::vector<LimitPoint>& x, const std::vector<LimitPoint>& y) {
        std::vector<double> ty;
        ty.reserve(y.size());
        for (const auto& q : y) ty.push_back(q.point.disk_angle());
        double worst = 0;
        for (const auto& p : x) {
            const double tp = p.point.disk_angle();
            double best = std::numeric_limits<double>::infinity();
            for (double t : ty) best = std::min(best, chordal_angle(tp, t));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty())
        return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    return std::max(directed(a, b), directed(b, a));
}

namespace {

std::vector<HPoint> orbit_ball(const SchottkyGroup& s, const HPoint& p, std::size_t radius) {
    std::vector<HPoint> out;
    for (const Word& w : ball(s.generators(), radius)) out.push_back(s.evaluate(w).apply(p));
    return out;
}

SchottkyGroup perturbed_group(const SchottkyGroup& s, const std::vector<Moebius>& gens,
                              const std::vector<Moebius>& offsets) {
    std::vector<ArcPair> pairs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        // g E maps the outside of E^-1(from) onto `to`
        const Moebius back = offsets[i].inverse();
        const Arc& from = s.pairs()[i].from;
        const BoundaryPoint inside = BoundaryPoint::from_disk_angle(from.center);
        Arc moved = arc_through(back.apply(from.start()), back.apply(from.end()), back.apply(inside));
        pairs.push_back({moved, s.pairs()[i].to});
    }
    try {
        return SchottkyGroup::from_generators(gens, pairs);
    } catch (const NotSchottky& e) {
        throw PerturbationTooLarge(std::string("perturbed group fails ping-pong: ") + e.what());
    }
}

}  // namespace

StabilityReport perturbation_stability_experiment(const SchottkyGroup& s,
                                                  std::span<const double> epsilons,
                                                  const StabilityOptions& opts) {
    StabilityReport report;
    const HPoint p = s.basepoint();
    report.basepoint = p;
    const std::size_t r = s.rank();

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal;
    std::vector<std::array<double, 3>> directions(r);
    for (auto& d : directions)
        for (auto& x : d) x = normal(rng);

    const std::vector<HPoint> base_orbit = orbit_ball(s, p, opts.ball_radius);
    const std::size_t n = base_orbit.size();
    std::vector<double> base_dist(n * n, 0.0);
    report.rho = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = hdist(base_orbit[i], base_orbit[j]);
            base_dist[i * n + j] = d;
            report.rho = std::min(report.rho, d);
        }
    const auto base_limit = limit_set_sample(s, opts.limit_depth);
    report.base_exponent = sphere_ratio_exponent(s, p, opts.sphere_n);

    for (double eps : epsilons) {
        StabilityRow row;
        row.epsilon = eps;
        std::vector<Moebius> offsets;
        for (std::size_t i = 0; i < r; ++i) {
            const auto& [u, v, w] = directions[i];
            const Moebius g = s.letter(static_cast<Letter>(i));
            row.generators.push_back(perturb_generator(g, u, v, w, eps));
            offsets.push_back(g.inverse() * row.generators.back());
        }
        const SchottkyGroup t = perturbed_group(s, row.generators, offsets);

        row.hausdorff = chordal_hausdorff(base_limit, limit_set_sample(t, opts.limit_depth));

        const std::vector<HPoint> orbit = orbit_ball(t, p, opts.ball_radius);
        row.min_orbit_distance = std::numeric_limits<double>::infinity();
        double hi = 1.0, lo = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = hdist(orbit[i], orbit[j]);
                row.min_orbit_distance = std::min(row.min_orbit_distance, d);
                const double ratio = d / base_dist[i * n + j];
                hi = std::max(hi, ratio);
                lo = std::min(lo, ratio);
            }
        row.kappa = std::max(hi, 1.0 / lo);
        row.injective = row.min_orbit_distance >= report.rho / 2;
        row.exponent = sphere_ratio_exponent(t, p, opts.sphere_n);
        row.exponent_shift = std::abs(row.exponent - report.base_exponent);
        report.rows.push_back(std::move(row));
    }
    return report;
}

SvarcMilnorFit svarc_milnor_fit(const SchottkyGroup& s, const HPoint& p, std::size_t radius) {
    if (radius < 1)
        throw std::invalid_argument("radius must be at least 1");
    SvarcMilnorFit fit;
    double shortest = std::numeric_limits<double>::infinity(), longest = 0;
    for (std::size_t i = 0; i < s.rank(); ++i) {
        const double l = s.letter(static_cast<Letter>(i)).translation_length();
        shortest = std::min(shortest, l);
        longest = std::max(longest, l);
    }
    fit.scale = shortest;
    fit.translation_ratio = longest / shortest;

    std::vector<std::pair<double, double>> samples;  // (scaled length, distance)
    double top_hi = 0, top_lo = std::numeric_limits<double>::infinity();
    for (const Word& w : ball(s.generators(), radius)) {
        if (w.is_identity()) continue;
        const double len = shortest * static_cast<double>(w.length());
        const double d = displacement(s.evaluate(w), p);
        samples.emplace_back(len, d);
        if (w.length() == radius) {
            top_hi = std::max(top_hi, d / len);
            top_lo = std::min(top_lo, d / len);
        }
    }
    // slopes read off the outermost sphere; c absorbs the rest
    fit.lambda = std::max({1.0, top_hi, 1.0 / top_lo});
    for (const auto& [len, d] : samples)
        fit.c = std::max({fit.c, len / fit.lambda - d, d - fit.lambda * len});
    fit.samples = samples.size();
    return fit;
}

}  // namespace freelat
