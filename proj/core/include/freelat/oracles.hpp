#pragma once

#include "freelat/hyperbolic.hpp"
#include "freelat/perturb.hpp"
#include "freelat/rational.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace freelat {

/// Numbers q + k sqrt(d) for a fixed nonsquare d > 0 (or any d when only
/// rational values occur). Arithmetic and floor are exact.
struct QuadraticNumber {
    Rational q = 0;
    std::int64_t k = 0;

    friend bool operator==(const QuadraticNumber&, const QuadraticNumber&) = default;
};

/// (R, +) with d(x, y) = |x - y|, restricted to Q + Z sqrt(d).
class RealLineGroup {
public:
    using Element = QuadraticNumber;

    explicit RealLineGroup(std::int64_t radicand = 2);

    std::int64_t radicand() const noexcept { return d_; }
    double value(const Element& x) const;
    /// Exact floor of q + k sqrt(d).
    Integer floor(const Element& x) const;

    Element identity() const { return {}; }
    Element multiply(const Element& x, const Element& y) const { return {x.q + y.q, x.k + y.k}; }
    Element inverse(const Element& x) const { return {-x.q, -x.k}; }
    double distance(const Element& x, const Element& y) const;
    bool equal(const Element& x, const Element& y) const { return x == y; }
    Element sample_near_identity(double radius, std::mt19937_64& rng) const;
    std::string format(const Element& x) const;

private:
    std::int64_t d_;
};

/// R/Z cut into n half-open arcs [v/n, (v+1)/n) with basepoint v/n; Gamma = Z.
class RealLineQuotient {
public:
    using Group = RealLineGroup;
    static constexpr bool exact = true;

    RealLineQuotient(RealLineGroup group, std::size_t cells);

    const Group& group() const noexcept { return group_; }
    std::size_t cell_count() const noexcept { return n_; }
    std::size_t cell_of(const QuadraticNumber& x) const;
    std::string cell_name(std::size_t v) const;
    QuadraticNumber basepoint(std::size_t v) const;
    /// x - floor(x) - v/n, which lies in [0, 1/n)
    QuadraticNumber lift(const QuadraticNumber& x) const;
    bool in_lattice(const QuadraticNumber& x) const;
    bool same_coset(const QuadraticNumber& x, const QuadraticNumber& y) const;
    /// The basepoint followed by random rationals of the cell.
    std::vector<QuadraticNumber> sample_cell(std::size_t v, std::size_t budget, std::mt19937_64& rng) const;
    double cell_diameter() const { return 1.0 / static_cast<double>(n_); }

private:
    RealLineGroup group_;
    std::size_t n_;
};

/// Sym(n) acting on the right of {0..n-1}: (g h)[i] = h[g[i]]. Discrete metric.
class PermutationGroup {
public:
    using Element = std::vector<std::uint32_t>;

    explicit PermutationGroup(std::size_t degree);

    std::size_t degree() const noexcept { return n_; }
    /// Throws InputError unless p is a permutation of 0..n-1.
    Element make(std::vector<std::uint32_t> images) const;
    /// Product of 1-based cycles, e.g. {{1,2,3,4}} for (1 2 3 4).
    Element from_cycles(const std::vector<std::vector<std::uint32_t>>& cycles) const;

    Element identity() const;
    Element multiply(const Element& g, const Element& h) const;
    Element inverse(const Element& g) const;
    double distance(const Element& g, const Element& h) const { return g == h ? 0.0 : 1.0; }
    bool equal(const Element& g, const Element& h) const { return g == h; }
    /// The identity for radius <= 1, a uniform permutation otherwise.
    Element sample_near_identity(double radius, std::mt19937_64& rng) const;
    /// 1-based cycle notation, "()" for the identity.
    std::string format(const Element& g) const;

private:
    std::size_t n_;
};

/// Gamma = stabilizer of `point`; the coset Gamma g is determined by point.g.
/// Singleton cells ordered so cell 0 is Gamma, with transpositions as basepoints.
class PermutationQuotient {
public:
    using Group = PermutationGroup;
    static constexpr bool exact = true;

    PermutationQuotient(PermutationGroup group, std::uint32_t point = 0);

    const Group& group() const noexcept { return group_; }
    std::uint32_t point() const noexcept { return point_; }
    std::size_t cell_count() const noexcept { return group_.degree(); }
    std::size_t cell_of(const PermutationGroup::Element& g) const;
    std::string cell_name(std::size_t v) const;
    PermutationGroup::Element basepoint(std::size_t v) const;
    PermutationGroup::Element lift(const PermutationGroup::Element&) const { return group_.identity(); }
    bool in_lattice(const PermutationGroup::Element& g) const { return g.at(point_) == point_; }
    bool same_coset(const PermutationGroup::Element& g, const PermutationGroup::Element& h) const {
        return g.at(point_) == h.at(point_);
    }
    std::vector<PermutationGroup::Element> sample_cell(std::size_t v, std::size_t, std::mt19937_64&) const {
        return {basepoint(v)};
    }
    double cell_diameter() const { return 0.0; }

private:
    std::size_t point_of(std::size_t cell) const;

    PermutationGroup group_;
    std::uint32_t point_;
};

/// PSL(2,R) with the probe-point metric. No quotient is provided.
class MoebiusGroup {
public:
    using Element = Moebius;

    Element identity() const { return {}; }
    Element multiply(const Element& g, const Element& h) const { return g * h; }
    Element inverse(const Element& g) const { return g.inverse(); }
    double distance(const Element& g, const Element& h) const { return moebius_distance(g, h); }
    bool equal(const Element& g, const Element& h) const { return g.entry_distance(h) <= 1e-12; }
    /// exp(tX) for a uniform unit direction X, at distance just below radius.
    Element sample_near_identity(double radius, std::mt19937_64& rng) const;
    std::string format(const Element& g) const;
};

static_assert(QuotientOracle<RealLineQuotient>);
static_assert(QuotientOracle<PermutationQuotient>);
static_assert(GroupOracle<MoebiusGroup>);

}  // namespace freelat
