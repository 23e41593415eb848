#include "freelat/hyperbolic.hpp"

#include <algorithm>
#include <numbers>

namespace freelat {

HPoint make_point(double x, double y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
        throw std::domain_error("upper half-plane point needs finite x and y > 0");
    return {x, y};
}

double hdist(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    // acosh(1 + t) written as log1p for accuracy at short range
    const double t = (dx * dx + dy * dy) / (2.0 * p.y * q.y);
    if (t > 1e100) return std::log(2.0 * t + 2.0);
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double BoundaryPoint::disk_angle() const {
    return -2.0 * std::atan2(y, x);
}

BoundaryPoint BoundaryPoint::from_disk_angle(double theta) {
    return {-std::cos(theta / 2.0), std::sin(theta / 2.0)};
}

double chordal_angle(double theta1, double theta2) {
    return 2.0 * std::abs(std::sin((theta1 - theta2) / 2.0));
}

double chordal(const BoundaryPoint& p, const BoundaryPoint& q) {
    return chordal_angle(p.disk_angle(), q.disk_angle());
}

Moebius::Moebius(double a, double b, double c, double d) : m_{a, b, c, d} {
    const double det = a * d - b * c;
    if (!(det > 0.0))
        throw std::domain_error("Moebius matrix needs positive determinant");
    const double s = 1.0 / std::sqrt(det);
    for (double& e : m_) e *= s;
    canonicalize();
}

void Moebius::canonicalize() {
    for (int i = 0; i < 3; ++i) {
        if (m_[i] > 0.0) return;
        if (m_[i] < 0.0) {
            for (double& e : m_) e = -e;
            return;
        }
    }
}

Moebius Moebius::rotation(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {c, s, -s, c};
}

double Moebius::frobenius2() const noexcept {
    return m_[0] * m_[0] + m_[1] * m_[1] + m_[2] * m_[2] + m_[3] * m_[3];
}

Moebius Moebius::operator*(const Moebius& o) const {
    Moebius r;
    r.m_ = {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
    r.canonicalize();
    return r;
}

Moebius Moebius::inverse() const {
    Moebius r;
    r.m_ = {m_[3], -m_[1], -m_[2], m_[0]};
    r.canonicalize();
    return r;
}

HPoint Moebius::apply(const HPoint& p) const {
    // det = 1, so Im w = y / |cz + d|^2 without cancellation
    const double u = m_[2] * p.x + m_[3], v = m_[2] * p.y;
    const double den = u * u + v * v;
    const double x = ((m_[0] * p.x + m_[1]) * u + m_[0] * v * p.y) / den;
    return {x, std::max(p.y / den, std::numeric_limits<double>::min())};
}

BoundaryPoint Moebius::apply(const BoundaryPoint& p) const {
    double x = m_[0] * p.x + m_[1] * p.y;
    double y = m_[2] * p.x + m_[3] * p.y;
    const double n = std::hypot(x, y);
    return {x / n, y / n};
}

double Moebius::translation_length() const {
    const double t = std::abs(trace());
    return t <= 2.0 ? 0.0 : 2.0 * std::acosh(t / 2.0);
}

namespace {

BoundaryPoint eigen_direction(const std::array<double, 4>& m, double lambda) {
    // (b, lambda - a) and (lambda - d, c) both span the eigenline; use the longer.
    const double x1 = m[1], y1 = lambda - m[0];
    const double x2 = lambda - m[3], y2 = m[2];
    if (std::hypot(x1, y1) >= std::hypot(x2, y2)) {
        const double n = std::hypot(x1, y1);
        return {x1 / n, y1 / n};
    }
    const double n = std::hypot(x2, y2);
    return {x2 / n, y2 / n};
}

}  // namespace

BoundaryPoint Moebius::attracting_fixed_point() const {
    if (!is_hyperbolic())
        throw std::domain_error("fixed points requested for a non-hyperbolic element");
    const double t = trace();
    const double root = std::sqrt(t * t - 4.0);
    const double big = t > 0 ? (t + root) / 2.0 : (t - root) / 2.0;
    return eigen_direction(m_, big);
}

BoundaryPoint Moebius::repelling_fixed_point() const {
    return inverse().attracting_fixed_point();
}

double Moebius::entry_distance(const Moebius& o) const {
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i < 4; ++i) {
        plus = std::max(plus, std::abs(m_[i] - o.m_[i]));
        minus = std::max(minus, std::abs(m_[i] + o.m_[i]));
    }
    return std::min(plus, minus);
}

Moebius moebius_exp(double u, double v, double w) {
    const double mu2 = u * u + v * w;
    double ch, sh;  // exp(X) = ch I + sh X
    if (mu2 > 1e-300) {
        const double mu = std::sqrt(mu2);
        ch = std::cosh(mu);
        sh = std::sinh(mu) / mu;
    } else if (mu2 < -1e-300) {
        const double mu = std::sqrt(-mu2);
        ch = std::cos(mu);
        sh = std::sin(mu) / mu;
    } else {
        ch = 1.0;
        sh = 1.0;
    }
    return {ch + sh * u, sh * v, sh * w, ch - sh * u};
}

double moebius_distance(const Moebius& g, const Moebius& h) {
    static const HPoint probes[] = {{0.0, 1.0}, {0.0, 2.0}, {1.0, 1.0}};
    // d(g p, h p) = d(p, g^-1 h p)
    const Moebius k = g.inverse() * h;
    double best = 0.0;
    for (const HPoint& p : probes) best = std::max(best, displacement(k, p));
    return best;
}

Moebius frame_at(const HPoint& p) {
    const double s = std::sqrt(p.y);
    return {s, p.x / s, 0.0, 1.0 / s};
}

double displacement(const Moebius& g, const HPoint& p) {
    const Moebius a = frame_at(p);
    const Moebius m = a.inverse() * g * a;
    // cosh d = |m|^2 / 2, and |m|^2 / 2 - 1 = ((a-d)^2 + (b+c)^2) / 2
    const double t = ((m.a() - m.d()) * (m.a() - m.d()) + (m.b() + m.c()) * (m.b() + m.c())) / 2.0;
    if (t > 1e100) return std::log(2.0 * t + 2.0);
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

double distance_to_geodesic(const HPoint& p, const BoundaryPoint& e1, const BoundaryPoint& e2) {
    const Moebius back = frame_at(p).inverse();
    const BoundaryPoint u = back.apply(e1), v = back.apply(e2);
    // for p = i: sinh d = |x1 x2 + y1 y2| / |x1 y2 - x2 y1|
    const double num = std::abs(u.x * v.x + u.y * v.y);
    const double den = std::abs(u.x * v.y - v.x * u.y);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::asinh(num / den);
}

}  // namespace freelat
