#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace freelat {

/// Point of the upper half-plane.
struct HPoint {
    double x = 0.0;
    double y = 1.0;
};

/// Throws std::domain_error unless y > 0.
HPoint make_point(double x, double y);
double hdist(const HPoint& p, const HPoint& q);

/// Comparison hyperbolicity constant used for the upper half-plane.
inline const double kDeltaH2 = std::log(1.0 + std::sqrt(2.0));

/// Boundary point of H^2 in projective coordinates (x : y); (1 : 0) is infinity.
struct BoundaryPoint {
    double x = 0.0;
    double y = 1.0;

    static BoundaryPoint real(double t) { return {t, 1.0}; }
    static BoundaryPoint infinity() { return {1.0, 0.0}; }
    bool is_infinite(double tol = 1e-300) const { return std::abs(y) <= tol; }
    double value() const { return x / y; }
    /// Angle on the unit circle after the Cayley transform z -> (z - i)/(z + i).
    double disk_angle() const;
    static BoundaryPoint from_disk_angle(double theta);
};

/// Chordal distance between boundary points seen on the unit circle.
double chordal(const BoundaryPoint& p, const BoundaryPoint& q);
double chordal_angle(double theta1, double theta2);

/// Element of PSL(2,R) as a matrix of determinant 1 with canonical sign.
class Moebius {
public:
    Moebius() = default;
    /// Rescales to determinant 1; throws std::domain_error if det <= 0.
    Moebius(double a, double b, double c, double d);

    static Moebius identity() { return {}; }
    static Moebius translation(double t) { return {1.0, t, 0.0, 1.0}; }
    /// z -> k z
    static Moebius dilation(double k) { return {std::sqrt(k), 0.0, 0.0, 1.0 / std::sqrt(k)}; }
    /// Elliptic element fixing i, turning tangent vectors there by theta.
    static Moebius rotation(double theta);

    double a() const noexcept { return m_[0]; }
    double b() const noexcept { return m_[1]; }
    double c() const noexcept { return m_[2]; }
    double d() const noexcept { return m_[3]; }
    double trace() const noexcept { return m_[0] + m_[3]; }
    double frobenius2() const noexcept;

    Moebius operator*(const Moebius& o) const;
    Moebius inverse() const;
    HPoint apply(const HPoint& p) const;
    BoundaryPoint apply(const BoundaryPoint& p) const;

    bool is_hyperbolic() const noexcept { return std::abs(trace()) > 2.0; }
    double translation_length() const;
    /// Attracting and repelling fixed points of a hyperbolic element.
    BoundaryPoint attracting_fixed_point() const;
    BoundaryPoint repelling_fixed_point() const;

    /// Entrywise distance up to sign, for tolerance comparisons.
    double entry_distance(const Moebius& o) const;

private:
    void canonicalize();
    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

/// exp of the traceless matrix [[u, v], [w, -u]].
Moebius moebius_exp(double u, double v, double w);

/// Left-invariant metric max_p d(g p, h p) over the probe points i, 2i, 1 + i.
double moebius_distance(const Moebius& g, const Moebius& h);

/// Moebius element taking i to p with no rotation.
Moebius frame_at(const HPoint& p);

/// d(p, g p) computed as acosh(|A^-1 g A|^2 / 2), stable for long words.
double displacement(const Moebius& g, const HPoint& p);

/// Distance from p to the geodesic with the given endpoints.
double distance_to_geodesic(const HPoint& p, const BoundaryPoint& e1, const BoundaryPoint& e2);

}  // namespace freelat
