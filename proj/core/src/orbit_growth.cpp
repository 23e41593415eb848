#include "freelat/orbit_growth.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>
#include <unordered_set>

namespace freelat {

namespace {

/// The group conjugated by a rotation about i that puts infinity in the middle
/// of the widest gap between arcs, so points m^-1 p stay at bounded x.
struct Centered {
    std::vector<Moebius> letters;
    std::vector<Arc> arcs;
    HPoint p;
};

Centered center_gap(const SchottkyGroup& s, const HPoint& p) {
    const std::size_t n = s.generators().size();
    std::vector<std::pair<double, double>> spans;  // (start, end) angles in [0, 2pi)
    const double two_pi = 2.0 * std::numbers::pi;
    for (Letter l = 0; l < n; ++l) {
        const Arc& a = s.arc(l);
        double lo = std::fmod(a.center - a.half_width + 2 * two_pi, two_pi);
        spans.emplace_back(lo, lo + 2 * a.half_width);
    }
    std::sort(spans.begin(), spans.end());
    double best_gap = -1, middle = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        const double end = spans[i].second;
        const double next = i + 1 < spans.size() ? spans[i + 1].first : spans[0].first + two_pi;
        if (next - end > best_gap) {
            best_gap = next - end;
            middle = (end + next) / 2;
        }
    }
    const Moebius rot = Moebius::rotation(-middle);
    const Moebius back = rot.inverse();
    Centered c;
    c.p = rot.apply(p);
    for (Letter l = 0; l < n; ++l) {
        c.letters.push_back(rot * s.letter(l) * back);
        Arc a = s.arc(l);
        a.center -= middle;
        c.arcs.push_back(a);
    }
    return c;
}

}  // namespace

std::vector<double> orbit_distances(const SchottkyGroup& s, const HPoint& base, double max_radius) {
    const GeneratorSet& gens = s.generators();
    const Centered c = center_gap(s, base);
    const HPoint& p = c.p;
    std::vector<double> out{0.0};
    struct Node {
        Moebius m;
        Letter last;
    };
    std::vector<Node> stack;
    // G_l sends the imaginary axis onto the geodesic of arc l. For B = G_l^-1 m^-1 F_p
    // the point B(i) sits at distance asinh|ac + bd| from that axis, read off the
    // matrix entries so that no point coordinate ever gets near the boundary.
    std::vector<Moebius> axis_inv;
    for (const Arc& arc : c.arcs) {
        BoundaryPoint e1 = arc.start(), e2 = arc.end();
        if (e2.x * e1.y - e1.x * e2.y < 0) std::swap(e1, e2);
        axis_inv.push_back(Moebius(e2.x, e1.x, e2.y, e1.y).inverse());
    }
    const Moebius frame = frame_at(p);
    const double bound = std::sinh(max_radius);
    auto expand = [&](const Moebius& m, std::optional<Letter> last) {
        const Moebius back = m.inverse() * frame;
        for (Letter l = 0; l < gens.size(); ++l) {
            if (last && l == gens.inverse(*last)) continue;
            const Moebius b = axis_inv[l] * back;
            if (std::abs(b.a() * b.c() + b.b() * b.d()) > bound) continue;
            stack.push_back({m * c.letters[l], l});
        }
    };
    expand(Moebius{}, std::nullopt);
    while (!stack.empty()) {
        Node node = stack.back();
        stack.pop_back();
        const double d = displacement(node.m, p);
        if (d <= max_radius) out.push_back(d);
        expand(node.m, node.last);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntegerLattice modular_group() {
    return {"PSL(2,Z)", {{0, -1, 1, 0}, {1, 1, 0, 1}}};
}

namespace {

using IntMat = std::array<std::int64_t, 4>;

IntMat canonical(IntMat m) {
    for (int i = 0; i < 4; ++i) {
        if (m[i] > 0) break;
        if (m[i] < 0) {
            for (auto& e : m) e = -e;
            break;
        }
    }
    return m;
}

IntMat mul(const IntMat& x, const IntMat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

IntMat inv(const IntMat& x) { return {x[3], -x[1], -x[2], x[0]}; }

struct IntMatHash {
    std::size_t operator()(const IntMat& m) const noexcept {
        std::size_t h = 0;
        for (auto e : m) h = h * 1000003u ^ std::hash<std::int64_t>{}(e);
        return h;
    }
};

}  // namespace

std::vector<double> orbit_distances(const IntegerLattice& lattice, const HPoint& p,
                                    double max_radius) {
    for (const auto& g : lattice.generators)
        if (g[0] * g[3] - g[1] * g[2] != 1)
            throw std::invalid_argument("lattice generator is not in SL(2,Z)");
    const double bound = 2.0 * std::cosh(max_radius + 2.0 * hdist(HPoint{0.0, 1.0}, p)) + 1e-6;
    if (bound > 1e15)
        throw std::out_of_range("radius too large for exact 64-bit enumeration");
    std::vector<IntMat> steps;
    for (const auto& g : lattice.generators) {
        steps.push_back(g);
        steps.push_back(inv(g));
    }
    std::unordered_set<IntMat, IntMatHash> seen{canonical({1, 0, 0, 1})};
    std::deque<IntMat> queue{{1, 0, 0, 1}};
    std::vector<double> out;
    while (!queue.empty()) {
        IntMat m = queue.front();
        queue.pop_front();
        const Moebius g(static_cast<double>(m[0]), static_cast<double>(m[1]),
                        static_cast<double>(m[2]), static_cast<double>(m[3]));
        const double d = displacement(g, p);
        if (d <= max_radius) out.push_back(d);
        for (const IntMat& s : steps) {
            IntMat n = canonical(mul(m, s));
            const double norm = static_cast<double>(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] + n[3] * n[3]);
            if (norm > bound || !seen.insert(n).second) continue;
            queue.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExponentEstimate fit_growth_rate(const std::vector<double>& d, double max_radius) {
    if (!(max_radius > 0))
        throw std::invalid_argument("max_radius must be positive");
    const std::size_t total =
        static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), max_radius) - d.begin());
    if (total < 10)
        throw InsufficientData("only " + std::to_string(total) + " orbit points within radius " +
                               std::to_string(max_radius));
    ExponentEstimate est;
    est.orbit_points = total;
    est.window_lo = max_radius / 2;
    est.window_hi = max_radius;
    constexpr int samples = 200;
    std::vector<double> xs, ys;
    for (int i = 0; i <= samples; ++i) {
        const double r = est.window_lo + (est.window_hi - est.window_lo) * i / samples;
        const auto n = std::upper_bound(d.begin(), d.end(), r) - d.begin();
        if (n == 0) continue;
        xs.push_back(r);
        ys.push_back(std::log(static_cast<double>(n)));
    }
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.exponent = sxy / sxx;
    double sse = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (my + est.exponent * (xs[i] - mx));
        sse += r * r;
    }
    est.residual_rms = std::sqrt(sse / m);
    est.slope_stderr = m > 2 ? std::sqrt(sse / (m - 2) / sxx) : 0.0;
    return est;
}

ExponentEstimate critical_exponent(const SchottkyGroup& s, const HPoint& p, double max_radius) {
    return fit_growth_rate(orbit_distances(s, p, max_radius), max_radius);
}

ExponentEstimate critical_exponent(const IntegerLattice& lattice, const HPoint& p,
                                   double max_radius) {
    return fit_growth_rate(orbit_distances(lattice, p, max_radius), max_radius);
}

double poincare_partial_sum(const std::vector<double>& distances, double s) {
    double total = 0;
    for (double d : distances) total += std::exp(-s * d);
    return total;
}

double sphere_ratio_exponent(const SchottkyGroup& s, const HPoint& p, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("sphere ratio needs word length at least 2");
    const GeneratorSet& gens = s.generators();
    std::vector<std::vector<double>> spheres(n + 1);
    std::vector<std::pair<Moebius, Letter>> layer;
    for (Letter l = 0; l < gens.size(); ++l) layer.emplace_back(s.letter(l), l);
    for (std::size_t len = 1; len <= n; ++len) {
        std::vector<std::pair<Moebius, Letter>> next;
        for (const auto& [m, last] : layer) {
            spheres[len].push_back(displacement(m, p));
            if (len == n) continue;
            for (Letter l = 0; l < gens.size(); ++l)
                if (l != gens.inverse(last)) next.emplace_back(m * s.letter(l), l);
        }
        layer = std::move(next);
    }
    auto gap = [&](double t) {
        return std::log(poincare_partial_sum(spheres[n], t)) -
               std::log(poincare_partial_sum(spheres[n - 1], t));
    };
    double lo = 0.0, hi = 2.0;
    if (gap(lo) <= 0) return 0.0;
    while (gap(hi) > 0 && hi < 64) hi *= 2;
    for (int it = 0; it < 100; ++it) {
        const double mid = (lo + hi) / 2;
        (gap(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

double suggested_radius(const SchottkyGroup& s, const HPoint& p, double target_points) {
    const double guess = sphere_ratio_exponent(s, p, 9);
    if (!(guess > 0)) return 150.0;
    return std::clamp(std::log(target_points) / guess, 10.0, 150.0);
}

}  // namespace freelat
