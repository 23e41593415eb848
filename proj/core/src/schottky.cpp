#include "freelat/schottky.hpp"

#include <algorithm>
#include <complex>
#include <numbers>

namespace freelat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double t) {
    t = std::fmod(t, kTwoPi);
    if (t <= -std::numbers::pi) t += kTwoPi;
    if (t > std::numbers::pi) t -= kTwoPi;
    return t;
}

HPoint from_disk(std::complex<double> zeta) {
    const std::complex<double> I(0.0, 1.0);
    const std::complex<double> z = I * (1.0 + zeta) / (1.0 - zeta);
    return {z.real(), z.imag()};
}

std::complex<double> to_disk(const HPoint& p) {
    const std::complex<double> z(p.x, p.y), I(0.0, 1.0);
    return (z - I) / (z + I);
}

/// Binary quadratic form with roots at the two points.
std::array<double, 3> form(const BoundaryPoint& p, const BoundaryPoint& q) {
    return {p.y * q.y, -(p.y * q.x + p.x * q.y), p.x * q.x};
}

std::pair<BoundaryPoint, BoundaryPoint> roots(const std::array<double, 3>& f) {
    const double a = f[0], b = f[1], c = f[2];
    const double disc = b * b - 4 * a * c;
    if (!(disc > 0))
        throw NotSchottky("pairing arcs have no common perpendicular");
    const double s = std::sqrt(disc);
    const double qv = -0.5 * (b + (b >= 0 ? s : -s));
    // roots of a t^2 + b t + c with t = x / y are qv / a and c / qv
    auto point = [](double num, double den) {
        const double n = std::hypot(num, den);
        return BoundaryPoint{num / n, den / n};
    };
    return {point(qv, a), point(c, qv)};
}

double projective_abs(const BoundaryPoint& p) {
    return std::abs(p.x) / std::abs(p.y);
}

}  // namespace

bool Arc::contains(double theta, double tol) const {
    return std::abs(wrap(theta - center)) < half_width + tol;
}

bool Arc::shadows(const HPoint& p) const {
    // cos(w)(|z|^2 + 1) - 2 Re(z e^{-i center}) is negative exactly on the arc's side
    const std::complex<double> zeta = to_disk(p);
    const double side = std::cos(half_width) * (std::norm(zeta) + 1.0) -
                        2.0 * (zeta * std::polar(1.0, -center)).real();
    return side < 0.0;
}

Arc arc_from_circle(double center, double radius, bool exterior) {
    if (!(radius > 0))
        throw NotSchottky("circle radius must be positive");
    const BoundaryPoint a = BoundaryPoint::real(center - radius);
    const BoundaryPoint b = BoundaryPoint::real(center + radius);
    const BoundaryPoint inside = exterior ? BoundaryPoint::infinity() : BoundaryPoint::real(center);
    return arc_through(a, b, inside);
}

Arc arc_through(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& inside) {
    const double ta = a.disk_angle(), tb = b.disk_angle(), ti = inside.disk_angle();
    // counterclockwise sweep from ta to tb
    double sweep = std::fmod(tb - ta + 2 * kTwoPi, kTwoPi);
    double offset = std::fmod(ti - ta + 2 * kTwoPi, kTwoPi);
    if (offset < sweep) return Arc{wrap(ta + sweep / 2), sweep / 2};
    const double rest = kTwoPi - sweep;
    return Arc{wrap(tb + rest / 2), rest / 2};
}

double arc_gap(const Arc& x, const Arc& y) {
    return std::abs(wrap(x.center - y.center)) - x.half_width - y.half_width;
}

Moebius pairing_generator(const ArcPair& pair) {
    const auto fa = form(pair.from.start(), pair.from.end());
    const auto fb = form(pair.to.start(), pair.to.end());
    // Jacobian of the two forms: its roots are the common harmonic pair.
    const std::array<double, 3> j{fa[0] * fb[1] - fa[1] * fb[0], 2 * (fa[0] * fb[2] - fa[2] * fb[0]),
                                  fa[1] * fb[2] - fa[2] * fb[1]};
    const auto [p, q] = roots(j);
    // T sends p to 0 and q to infinity
    const double t00 = p.y, t01 = -p.x, t10 = q.y, t11 = -q.x;
    auto image = [&](const BoundaryPoint& e) {
        return BoundaryPoint{t00 * e.x + t01 * e.y, t10 * e.x + t11 * e.y};
    };
    const double ra = projective_abs(image(pair.from.start()));
    const double rb = projective_abs(image(pair.to.start()));
    const double k = rb / ra;
    const double det = t00 * t11 - t01 * t10;
    // T^-1 diag(k, 1) T
    const double i00 = t11 / det, i01 = -t01 / det, i10 = -t10 / det, i11 = t00 / det;
    const double m00 = k * t00, m01 = k * t01, m10 = t10, m11 = t11;
    return Moebius(i00 * m00 + i01 * m10, i00 * m01 + i01 * m11, i10 * m00 + i11 * m10,
                   i10 * m01 + i11 * m11);
}

SchottkyGroup::SchottkyGroup(std::vector<ArcPair> pairs, std::vector<Moebius> positive)
    : gens_(pairs.size()), pairs_(std::move(pairs)) {
    const std::size_t r = pairs_.size();
    letters_.resize(2 * r);
    arcs_.resize(2 * r);
    for (std::size_t s = 0; s < r; ++s) {
        letters_[s] = positive[s];
        letters_[s + r] = positive[s].inverse();
        arcs_[s] = pairs_[s].to;
        arcs_[s + r] = pairs_[s].from;
    }
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        if (!(arcs_[i].half_width > 0) || arcs_[i].half_width >= std::numbers::pi)
            throw NotSchottky("arc half-width must lie in (0, pi)");
        for (std::size_t j = i + 1; j < arcs_.size(); ++j)
            if (arc_gap(arcs_[i], arcs_[j]) <= 1e-9)
                throw NotSchottky("pairing arcs " + gens_.symbol(static_cast<Letter>(i)) + " and " +
                                  gens_.symbol(static_cast<Letter>(j)) + " overlap or touch");
    }
    // basepoint: disk-grid point outside every half-plane, clear of the geodesics yet central
    double best = -std::numeric_limits<double>::infinity();
    for (int ring = 0; ring <= 18; ++ring) {
        const double rad = ring / 20.0;
        const int spokes = ring == 0 ? 1 : 72;
        for (int k = 0; k < spokes; ++k) {
            const HPoint p = from_disk(std::polar(rad, kTwoPi * k / spokes));
            double nearest = std::numeric_limits<double>::infinity();
            bool outside = true;
            for (const Arc& a : arcs_) {
                if (a.shadows(p)) {
                    outside = false;
                    break;
                }
                nearest = std::min(nearest, distance_to_geodesic(p, a.start(), a.end()));
            }
            if (!outside) continue;
            const double score = std::min(nearest, 1.0) - 0.5 * hdist(p, HPoint{0.0, 1.0});
            if (score > best + 1e-12) {
                best = score;
                basepoint_ = p;
            }
        }
    }
    if (best == -std::numeric_limits<double>::infinity())
        throw NotSchottky("no basepoint outside the pairing half-planes");
}

SchottkyGroup SchottkyGroup::from_arcs(const std::vector<ArcPair>& pairs) {
    if (pairs.empty())
        throw NotSchottky("Schottky group needs at least one generator");
    for (const ArcPair& p : pairs)
        for (const Arc& a : {p.from, p.to})
            if (!(a.half_width > 0) || a.half_width >= std::numbers::pi)
                throw NotSchottky("arc half-width must lie in (0, pi)");
    std::vector<Moebius> gens;
    for (const ArcPair& p : pairs) gens.push_back(pairing_generator(p));
    return SchottkyGroup(pairs, std::move(gens));
}

SchottkyGroup SchottkyGroup::from_generators(const std::vector<Moebius>& generators,
                                             const std::vector<ArcPair>& pairs, double tol) {
    if (generators.size() != pairs.size() || pairs.empty())
        throw NotSchottky("need one arc pair per generator");
    for (std::size_t s = 0; s < pairs.size(); ++s) {
        const Moebius& g = generators[s];
        const Arc& from = pairs[s].from;
        const Arc& to = pairs[s].to;
        // endpoints go to endpoints, and the point opposite `from` lands inside `to`
        const double e1 = g.apply(from.start()).disk_angle(), e2 = g.apply(from.end()).disk_angle();
        const double t1 = to.start().disk_angle(), t2 = to.end().disk_angle();
        const bool ends = (chordal_angle(e1, t1) < tol && chordal_angle(e2, t2) < tol) ||
                          (chordal_angle(e1, t2) < tol && chordal_angle(e2, t1) < tol);
        const BoundaryPoint opposite = BoundaryPoint::from_disk_angle(from.center + std::numbers::pi);
        if (!ends || !to.contains(g.apply(opposite)))
            throw NotSchottky("generator " + std::to_string(s) + " does not pair its arcs");
    }
    return SchottkyGroup(pairs, generators);
}

Moebius SchottkyGroup::evaluate(const Word& w) const {
    Moebius m;
    for (Letter l : w.letters()) m = m * letters_.at(l);
    return m;
}

SchottkyGroup symmetric_rank2(double half_width) {
    const double h = std::numbers::pi / 2;
    return SchottkyGroup::from_arcs({ArcPair{Arc{std::numbers::pi, half_width}, Arc{0.0, half_width}},
                                     ArcPair{Arc{3 * h, half_width}, Arc{h, half_width}}});
}

std::vector<LimitPoint> limit_set_sample(const SchottkyGroup& s, std::size_t depth) {
    std::vector<LimitPoint> out;
    const GeneratorSet& gens = s.generators();
    std::vector<std::pair<Word, Moebius>> layer{{Word{}, Moebius{}}};
    for (std::size_t len = 1; len <= depth; ++len) {
        std::vector<std::pair<Word, Moebius>> next;
        for (const auto& [w, m] : layer)
            for (Letter l = 0; l < gens.size(); ++l) {
                if (!w.is_identity() && w.letters().back() == gens.inverse(l)) continue;
                Word wl = w.times(l, gens);
                Moebius ml = m * s.letter(l);
                out.push_back({wl, ml.attracting_fixed_point()});
                next.emplace_back(std::move(wl), ml);
            }
        layer = std::move(next);
    }
    return out;
}

}  // namespace freelat
