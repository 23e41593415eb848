#pragma once

#include "freelat/freegroup.hpp"
#include "freelat/hyperbolic.hpp"

#include <stdexcept>
#include <vector>

namespace freelat {

/// Open arc of the boundary circle (disk model), given by center angle and half-width.
struct Arc {
    double center = 0.0;
    double half_width = 0.0;

    BoundaryPoint start() const { return BoundaryPoint::from_disk_angle(center - half_width); }
    BoundaryPoint end() const { return BoundaryPoint::from_disk_angle(center + half_width); }
    bool contains(double theta, double tol = 1e-9) const;
    bool contains(const BoundaryPoint& p, double tol = 1e-9) const {
        return contains(p.disk_angle(), tol);
    }
    /// Whether the open half-plane cut off by the arc's geodesic contains p.
    bool shadows(const HPoint& p) const;
};

/// The boundary arc of a disk centered on the real line (or its exterior).
Arc arc_from_circle(double center, double radius, bool exterior = false);
/// Arc spanned by two boundary points, on the side containing `inside`.
Arc arc_through(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& inside);
/// Smallest angular gap between two arcs; negative when they overlap.
double arc_gap(const Arc& x, const Arc& y);

class NotSchottky : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pairing of the arc of s^-1 with the arc of s: g_s maps the complement of
/// `from` onto `to`.
struct ArcPair {
    Arc from;
    Arc to;
};

/// Hyperbolic element pairing the two arcs along their common perpendicular.
Moebius pairing_generator(const ArcPair& pair);

class SchottkyGroup {
public:
    /// Validates that the 2r arcs are pairwise disjoint with gap > 1e-9.
    static SchottkyGroup from_arcs(const std::vector<ArcPair>& pairs);
    /// Generators supplied directly; each must carry its arc pair onto itself
    /// as described by ArcPair within `tol`.
    static SchottkyGroup from_generators(const std::vector<Moebius>& generators,
                                         const std::vector<ArcPair>& pairs, double tol = 1e-7);

    const GeneratorSet& generators() const noexcept { return gens_; }
    std::size_t rank() const noexcept { return gens_.rank(); }
    const Moebius& letter(Letter l) const { return letters_.at(l); }
    /// D_l: every reduced word starting with l sends the basepoint into this arc's half-plane.
    const Arc& arc(Letter l) const { return arcs_.at(l); }
    const std::vector<ArcPair>& pairs() const noexcept { return pairs_; }
    Moebius evaluate(const Word& w) const;
    /// A point outside every pairing half-plane, far from their geodesics.
    const HPoint& basepoint() const noexcept { return basepoint_; }

private:
    SchottkyGroup(std::vector<ArcPair> pairs, std::vector<Moebius> positive);

    GeneratorSet gens_;
    std::vector<ArcPair> pairs_;
    std::vector<Moebius> letters_;
    std::vector<Arc> arcs_;
    HPoint basepoint_;
};

/// Four arcs centered at angles 0, pi/2, pi, 3pi/2 with the given half-width
/// (< pi/4); a pairs the arc at pi with the arc at 0, b the arc at 3pi/2 with pi/2.
SchottkyGroup symmetric_rank2(double half_width);

struct LimitPoint {
    Word word;
    BoundaryPoint point;
};

/// Attracting fixed points of every reduced word of length 1..depth.
std::vector<LimitPoint> limit_set_sample(const SchottkyGroup& s, std::size_t depth);

}  // namespace freelat
