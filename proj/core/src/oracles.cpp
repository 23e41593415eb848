#include "freelat/oracles.hpp"

#include "freelat/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace freelat {

namespace {

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// sign of k sqrt(d) - r
int compare_surd(std::int64_t k, std::int64_t d, const Rational& r) {
    const int ks = k > 0 ? 1 : (k < 0 ? -1 : 0);
    const int rs = sign_of(r);
    if (ks == 0) return -rs;
    if (ks != rs) return ks > rs ? 1 : -1;
    const Rational kk = Rational(k) * Rational(k) * Rational(d);
    const int mag = sign_of(kk - r * r);
    return ks > 0 ? mag : -mag;
}

}  // namespace

RealLineGroup::RealLineGroup(std::int64_t radicand) : d_(radicand) {
    if (radicand <= 0)
        throw InputError("radicand must be positive");
}

double RealLineGroup::value(const Element& x) const {
    return x.q.convert_to<double>() + static_cast<double>(x.k) * std::sqrt(static_cast<double>(d_));
}

Integer RealLineGroup::floor(const Element& x) const {
    Integer m(std::floor(value(x)));
    // x >= m  <=>  k sqrt(d) >= m - q
    auto at_least = [&](const Integer& t) { return compare_surd(x.k, d_, Rational(t) - x.q) >= 0; };
    while (!at_least(m)) --m;
    while (at_least(m + 1)) ++m;
    return m;
}

double RealLineGroup::distance(const Element& x, const Element& y) const {
    return std::abs(value(multiply(x, inverse(y))));
}

RealLineGroup::Element RealLineGroup::sample_near_identity(double radius, std::mt19937_64& rng) const {
    std::bernoulli_distribution sign;
    const double r = radius * (1.0 - 1e-12);
    return {Rational(sign(rng) ? r : -r), 0};
}

std::string RealLineGroup::format(const Element& x) const {
    const std::string root = "sqrt(" + std::to_string(d_) + ")";
    std::string surd;
    if (x.k == 1) surd = root;
    else if (x.k == -1) surd = "-" + root;
    else if (x.k != 0) surd = std::to_string(x.k) + "*" + root;
    if (surd.empty()) return format_rational(x.q);
    if (x.q == 0) return surd;
    if (x.k < 0) return format_rational(x.q) + " - " + surd.substr(1);
    return format_rational(x.q) + " + " + surd;
}

RealLineQuotient::RealLineQuotient(RealLineGroup group, std::size_t cells)
    : group_(std::move(group)), n_(cells) {
    if (cells == 0)
        throw InputError("need at least one cell");
}

std::size_t RealLineQuotient::cell_of(const QuadraticNumber& x) const {
    const auto n = static_cast<std::int64_t>(n_);
    const Integer scaled = group_.floor({x.q * n, x.k * n});
    return static_cast<std::size_t>((scaled - Integer(n) * group_.floor(x)).convert_to<std::int64_t>());
}

std::string RealLineQuotient::cell_name(std::size_t v) const {
    return "[" + std::to_string(v) + "/" + std::to_string(n_) + "," + std::to_string(v + 1) + "/" +
           std::to_string(n_) + ")";
}

QuadraticNumber RealLineQuotient::basepoint(std::size_t v) const {
    return {Rational(static_cast<long>(v), static_cast<long>(n_)), 0};
}

QuadraticNumber RealLineQuotient::lift(const QuadraticNumber& x) const {
    return {x.q - Rational(group_.floor(x)) - basepoint(cell_of(x)).q, x.k};
}

bool RealLineQuotient::in_lattice(const QuadraticNumber& x) const {
    return x.k == 0 && denominator_of(x.q) == 1;
}

bool RealLineQuotient::same_coset(const QuadraticNumber& x, const QuadraticNumber& y) const {
    return in_lattice(group_.multiply(x, group_.inverse(y)));
}

std::vector<QuadraticNumber> RealLineQuotient::sample_cell(std::size_t v, std::size_t budget,
                                                           std::mt19937_64& rng) const {
    constexpr std::uint64_t grain = 1u << 30;
    std::uniform_int_distribution<std::uint64_t> pick(0, grain - 1);
    std::vector<QuadraticNumber> out{basepoint(v)};
    const Rational step(1, static_cast<long>(n_));
    for (std::size_t i = 1; i < budget; ++i)
        out.push_back({basepoint(v).q + step * Rational(Integer(pick(rng)), Integer(grain)), 0});
    return out;
}

PermutationGroup::PermutationGroup(std::size_t degree) : n_(degree) {
    if (degree == 0)
        throw InputError("permutation degree must be positive");
}

PermutationGroup::Element PermutationGroup::make(std::vector<std::uint32_t> images) const {
    if (images.size() != n_)
        throw InputError("permutation has " + std::to_string(images.size()) + " entries, expected " +
                         std::to_string(n_));
    std::vector<bool> seen(n_, false);
    for (auto i : images) {
        if (i >= n_ || seen[i])
            throw InputError("not a permutation of 0.." + std::to_string(n_ - 1));
        seen[i] = true;
    }
    return images;
}

PermutationGroup::Element PermutationGroup::from_cycles(
    const std::vector<std::vector<std::uint32_t>>& cycles) const {
    Element out = identity();
    for (const auto& cycle : cycles) {
        Element c = identity();
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const std::uint32_t from = cycle[i], to = cycle[(i + 1) % cycle.size()];
            if (from == 0 || from > n_)
                throw InputError("cycle entry " + std::to_string(from) + " outside 1.." + std::to_string(n_));
            c[from - 1] = to - 1;
        }
        out = multiply(out, make(std::move(c)));
    }
    return out;
}

PermutationGroup::Element PermutationGroup::identity() const {
    Element e(n_);
    std::iota(e.begin(), e.end(), 0u);
    return e;
}

PermutationGroup::Element PermutationGroup::multiply(const Element& g, const Element& h) const {
    Element out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = h[g[i]];
    return out;
}

PermutationGroup::Element PermutationGroup::inverse(const Element& g) const {
    Element out(n_);
    for (std::uint32_t i = 0; i < n_; ++i) out[g[i]] = i;
    return out;
}

PermutationGroup::Element PermutationGroup::sample_near_identity(double radius, std::mt19937_64& rng) const {
    Element e = identity();
    if (radius > 1.0) std::shuffle(e.begin(), e.end(), rng);
    return e;
}

std::string PermutationGroup::format(const Element& g) const {
    std::string out;
    std::vector<bool> done(n_, false);
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (done[i] || g[i] == i) continue;
        out += "(";
        for (std::uint32_t j = i; !done[j]; j = g[j]) {
            done[j] = true;
            if (j != i) out += " ";
            out += std::to_string(j + 1);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

PermutationQuotient::PermutationQuotient(PermutationGroup group, std::uint32_t point)
    : group_(std::move(group)), point_(point) {
    if (point >= group_.degree())
        throw InputError("stabilized point outside the permutation domain");
}

std::size_t PermutationQuotient::point_of(std::size_t cell) const {
    return (point_ + cell) % group_.degree();
}

std::size_t PermutationQuotient::cell_of(const PermutationGroup::Element& g) const {
    const std::size_t n = group_.degree();
    return (g.at(point_) + n - point_) % n;
}

std::string PermutationQuotient::cell_name(std::size_t v) const {
    return std::to_string(point_ + 1) + "->" + std::to_string(point_of(v) + 1);
}

PermutationGroup::Element PermutationQuotient::basepoint(std::size_t v) const {
    auto e = group_.identity();
    std::swap(e[point_], e[point_of(v)]);
    return e;
}

MoebiusGroup::Element MoebiusGroup::sample_near_identity(double radius, std::mt19937_64& rng) const {
    std::normal_distribution<double> normal;
    // redraw directions that cannot reach the radius
    for (int attempt = 0;; ++attempt) {
        double u = normal(rng), v = normal(rng), w = normal(rng);
        if (u == 0 && v == 0 && w == 0) u = 1;
        try {
            return perturb_generator(Moebius{}, u, v, w, radius * (1.0 - 1e-9));
        } catch (const PerturbationTooLarge&) {
            if (attempt == 100) throw;
        }
    }
}

std::string MoebiusGroup::format(const Element& g) const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[[%.17g, %.17g], [%.17g, %.17g]]", g.a(), g.b(), g.c(), g.d());
    return buf;
}

}  // namespace freelat
