#include "freelat/hyperbolic.hpp"
#include "freelat/orbit_growth.hpp"
#include "freelat/quasigeodesic.hpp"
#include "freelat/schottky.hpp"
#include "freelat/stability.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace freelat;

namespace {

Moebius random_moebius(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    return moebius_exp(u(rng), u(rng), u(rng));
}

HPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(-3, 3), y(0.2, 4);
    return {x(rng), y(rng)};
}

// Closed-form distance, independent of hdist.
double cosh_formula(const HPoint& p, const HPoint& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    return std::acosh(1 + (dx * dx + dy * dy) / (2 * p.y * q.y));
}

SchottkyGroup rank_one() {
    return SchottkyGroup::from_arcs({{arc_from_circle(0, 1), arc_from_circle(0, 4, true)}});
}

}  // namespace

TEST_CASE("hyperbolic distance") {
    CHECK(hdist({0, 1}, {0, 1}) == 0);
    CHECK(hdist({0, 1}, {0, 2}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(make_point(0, 0), std::domain_error);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const HPoint p = random_point(rng), q = random_point(rng);
        CHECK(hdist(p, q) == doctest::Approx(cosh_formula(p, q)).epsilon(1e-9));
        const Moebius g = random_moebius(rng);
        CHECK(std::abs(hdist(g.apply(p), g.apply(q)) - hdist(p, q)) < 1e-9);
    }
}

TEST_CASE("moebius arithmetic") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const Moebius g = random_moebius(rng), h = random_moebius(rng);
        const HPoint p = random_point(rng);
        const HPoint gh = (g * h).apply(p), seq = g.apply(h.apply(p));
        CHECK(hdist(gh, seq) < 1e-9);
        CHECK((g * g.inverse()).entry_distance(Moebius::identity()) < 1e-12);
        CHECK(displacement(g, p) == doctest::Approx(hdist(p, g.apply(p))).epsilon(1e-9));
        // left invariance of the probe metric
        const Moebius k = random_moebius(rng);
        CHECK(std::abs(moebius_distance(k * g, k * h) - moebius_distance(g, h)) < 1e-9);
    }
    CHECK_THROWS_AS(Moebius(1, 0, 0, -1), std::domain_error);
    const Moebius d4 = Moebius::dilation(4);
    CHECK(d4.translation_length() == doctest::Approx(std::log(4.0)));
    CHECK(d4.attracting_fixed_point().is_infinite());
    CHECK(d4.repelling_fixed_point().value() == doctest::Approx(0.0));
    CHECK(frame_at({2, 3}).apply(HPoint{0, 1}).x == doctest::Approx(2));
    CHECK(frame_at({2, 3}).apply(HPoint{0, 1}).y == doctest::Approx(3));
    const HPoint turned = Moebius::rotation(1.0).apply(HPoint{0, 1});
    CHECK(hdist(turned, {0, 1}) < 1e-12);
}

TEST_CASE("boundary points and distance to geodesics") {
    for (double t : {-2.0, -0.5, 0.0, 0.3, 7.0}) {
        const BoundaryPoint p = BoundaryPoint::real(t);
        CHECK(BoundaryPoint::from_disk_angle(p.disk_angle()).value() == doctest::Approx(t));
    }
    CHECK(chordal(BoundaryPoint::real(1), BoundaryPoint::real(1)) == doctest::Approx(0));
    CHECK(distance_to_geodesic({0, 3}, BoundaryPoint::real(0), BoundaryPoint::infinity()) ==
          doctest::Approx(0).epsilon(1e-12));
    // the point i is at distance asinh(1) from the geodesic from 1 to infinity
    CHECK(distance_to_geodesic({0, 1}, BoundaryPoint::real(1), BoundaryPoint::infinity()) ==
          doctest::Approx(std::asinh(1.0)));
}

TEST_CASE("quasi-geodesic constants") {
    const auto zero = qg_constants(0, 1, 0, 0);
    CHECK(zero.K == 1);
    CHECK(zero.M0 == 6);
    CHECK(zero.c_prime == 6);
    const auto ex = qg_constants(1, 2, 1, 10);
    CHECK(ex.K == 103);
    CHECK(ex.M0 == 926);
    CHECK(ex.c_prime == 414);
    CHECK(ex.M1 >= ex.M0);
    CHECK(1 / ex.lambda - (2 * ex.c + 4 * ex.K) / ex.M1 >= 1 / (2 * ex.lambda) - 1e-12);
    CHECK_THROWS_AS(qg_constants(0, 0.5, 0, 0), std::domain_error);
    CHECK_THROWS_AS(qg_constants(-1, 1, 0, 0), std::domain_error);

    const std::vector<double> grid{0, 0.5, 1, 3};
    for (double d : grid)
        for (double l : {1.0, 1.5, 3.0})
            for (double c : grid)
                for (double r : grid) {
                    const double k = qg_constants(d, l, c, r).K;
                    CHECK(qg_constants(d + 1, l, c, r).K >= k);
                    CHECK(qg_constants(d, l + 1, c, r).K >= k);
                    CHECK(qg_constants(d, l, c + 1, r).K >= k);
                    CHECK(qg_constants(d, l, c, r + 1).K >= k);
                }
}

TEST_CASE("quasi-geodesic checks") {
    const FramedPath line = geodesic_path(40);
    CHECK(check_quasi_geodesic(line, 5, 1, 0).ok);
    CHECK(check_quasi_geodesic(line, 1e9, 1, 0).ok);

    // up the imaginary axis for M + 1 steps, then straight back down
    const double M = 4;
    std::vector<HPoint> hairpin;
    for (int k = 0; k <= 5; ++k) hairpin.push_back({0, std::exp(static_cast<double>(k))});
    for (int k = 4; k >= 0; --k) hairpin.push_back({0, std::exp(static_cast<double>(k))});
    CHECK(is_local_quasi_geodesic(hairpin, M, 1, M).ok);
    const auto global = check_quasi_geodesic(hairpin, 1e9, 1, M);
    CHECK_FALSE(global.ok);
    CHECK_FALSE(global.violations.empty());

    const auto report = check_quasi_geodesic(line, 5, 1, 0);
    CHECK(report.ok == report.violations.empty());
}

TEST_CASE("path sampler reproduces paths from turns") {
    std::mt19937_64 rng(4);
    const auto turns = sample_turns(PathShape{}, rng);
    const FramedPath p = path_from_turns(turns);
    CHECK(p.size() == PathShape{}.points);
    const auto pts = path_from_turns(std::span<const double>(turns).first(20)).points();
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(hdist(pts[i - 1], pts[i]) == doctest::Approx(1.0));
    CHECK(check_quasi_geodesic(p, 1, 1, 1e-9).ok);
}

TEST_CASE("local-to-global, small run") {
    LocalToGlobalOptions o;
    o.trials = 20;
    o.R = 6.0;
    const auto r = check_local_to_global(o);
    CHECK(r.ok());
    CHECK(r.tested == 20);
    CHECK(r.M >= r.constants.M1);
}

TEST_CASE("stability constant table") {
    CHECK(stability_constant_table(1.2, 0.5) > 0);
    CHECK_THROWS_AS(stability_constant_table(50, 50), std::out_of_range);
}

TEST_CASE("Schottky groups") {
    const SchottkyGroup one = rank_one();
    CHECK(one.rank() == 1);
    CHECK(one.letter(0).entry_distance(Moebius::dilation(4)) < 1e-9);

    const SchottkyGroup two = SchottkyGroup::from_arcs(
        {{arc_from_circle(-3, 1), arc_from_circle(3, 1)}, {arc_from_circle(-0.5, 0.3), arc_from_circle(0.5, 0.3)}});
    CHECK(two.rank() == 2);
    for (Letter l = 0; l < 4; ++l) CHECK(two.letter(l).is_hyperbolic());

    CHECK_THROWS_AS(SchottkyGroup::from_arcs({{arc_from_circle(-1, 1), arc_from_circle(1, 1)}}), NotSchottky);
    CHECK_THROWS_AS(symmetric_rank2(std::numbers::pi / 4), NotSchottky);
    CHECK_NOTHROW(symmetric_rank2(0.5));
}

TEST_CASE("limit set samples") {
    const auto rank1 = limit_set_sample(rank_one(), 1);
    REQUIRE(rank1.size() == 2);
    bool zero = false, inf = false;
    for (const auto& lp : rank1) {
        inf |= lp.point.is_infinite(1e-9);
        zero |= !lp.point.is_infinite(1e-9) && std::abs(lp.point.value()) < 1e-9;
    }
    CHECK(zero);
    CHECK(inf);

    const SchottkyGroup s = symmetric_rank2(0.6);
    const auto sample = limit_set_sample(s, 4);
    CHECK(sample.size() == ball_size(2, 4) - 1);
    for (const auto& lp : sample) CHECK(s.arc(lp.word.letters().front()).contains(lp.point, 1e-9));
}

TEST_CASE("orbit counting") {
    const SchottkyGroup s = rank_one();
    const HPoint p = s.basepoint();
    const auto d = orbit_distances(s, p, 30);
    // brute force over powers of the generator
    std::size_t expected = 0;
    for (int n = -100; n <= 100; ++n)
        if (static_cast<double>(std::abs(n)) * std::log(4.0) <= 30 + 1e-9) ++expected;
    CHECK(d.size() == expected);
    CHECK(critical_exponent(s, p, 60).exponent <= 0.05);

    const SchottkyGroup two = symmetric_rank2(0.5);
    const HPoint q = two.basepoint();
    std::size_t brute = 0;
    for (const Word& w : ball(two.generators(), 8))
        if (displacement(two.evaluate(w), q) <= 6) ++brute;
    CHECK(orbit_distances(two, q, 6).size() == brute);
    CHECK(poincare_partial_sum({0.0, 1.0}, 1.0) == doctest::Approx(1 + std::exp(-1.0)));
    CHECK_THROWS_AS(fit_growth_rate({0.0, 1.0}, 2.0), InsufficientData);
}

TEST_CASE("sphere-ratio exponent sits between 0 and 1") {
    for (double hw : {0.1, 0.4, 0.7}) {
        const SchottkyGroup s = symmetric_rank2(hw);
        const double e = sphere_ratio_exponent(s, s.basepoint(), 8);
        CHECK(e > 0);
        CHECK(e < 1);
    }
}

TEST_CASE("modular group orbit") {
    const auto lattice = modular_group();
    const auto d = orbit_distances(lattice, {0.1, 1.3}, 6);
    CHECK(d.front() == doctest::Approx(0.0));
    CHECK(std::is_sorted(d.begin(), d.end()));
}

TEST_CASE("perturbation stability") {
    const SchottkyGroup s = symmetric_rank2(0.5);
    const Moebius g = s.letter(0);
    const Moebius h = perturb_generator(g, 0.3, -0.2, 0.7, 1e-3);
    CHECK(moebius_distance(g, h) == doctest::Approx(1e-3).epsilon(1e-6));

    const std::vector<double> eps{0.0, 1e-3, 1e-2};
    const auto r = perturbation_stability_experiment(s, eps);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].hausdorff == doctest::Approx(0.0));
    CHECK(r.rows[0].kappa == doctest::Approx(1.0));
    CHECK(r.rows[0].exponent_shift == doctest::Approx(0.0));
    CHECK(r.rows[1].hausdorff <= r.rows[2].hausdorff);
    CHECK(r.rows[1].kappa_deviation() <= r.rows[2].kappa_deviation());
    CHECK(r.rows[2].injective);

    const std::vector<double> huge{2.0};
    CHECK_THROWS_AS(perturbation_stability_experiment(s, huge), PerturbationTooLarge);
    CHECK(chordal_hausdorff(limit_set_sample(s, 3), limit_set_sample(s, 3)) == doctest::Approx(0.0));
}

TEST_CASE("Svarc-Milnor fit") {
    const SchottkyGroup s = symmetric_rank2(0.5);
    const auto fit = svarc_milnor_fit(s, s.basepoint(), 5);
    CHECK(fit.lambda >= 1);
    CHECK(fit.c >= 0);
    for (const Word& w : ball(s.generators(), 5)) {
        const double d = displacement(s.evaluate(w), s.basepoint());
        const double len = fit.scale * static_cast<double>(w.length());
        CHECK(d <= fit.lambda * len + fit.c + 1e-9);
        CHECK(d >= len / fit.lambda - fit.c - 1e-9);
    }
}
