#include "freelat/conereduce.hpp"
#include "freelat/synthesis.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace freelat;

namespace {

const GeneratorSet F1(1);

Rational q(long p, long d = 1) { return Rational(p, d); }

Word w(const char* text) { return parse_word(text, F1); }

// Period four: a b a c along s, truncated at A = {a}.
struct AbacExample {
    ConstraintGraph g = ConstraintGraph(F1, {"a", "b", "c"}, {{0, 1, 0}, {1, 0, 0}, {0, 2, 0}, {2, 0, 0}}).closed();
    PeriodicTreequence p = PeriodicTreequence::from_positive(F1, {{1, 2, 3, 0}}, {0, 1, 0, 2}, 0);
    TruncationSpec spec{g, {0}};
};

// W_z for the component {id} labeled `v` between two a's, by hand.
Weight hand_wz(VertexId v) {
    Weight z;
    z.set(v, q(1, 4));
    z.set(Edge{v, 0, 0}, q(1, 4));
    z.set(Edge{v, 0, 1}, q(1, 4));
    z.set(Edge{0, v, 0}, q(1, 4));
    z.set(Edge{0, v, 1}, q(1, 4));
    return z;
}

}  // namespace

TEST_CASE("truncation") {
    AbacExample ex;
    const Weight wmu = testing::orbit_measure_weight(ex.p, F1);
    CHECK(check_weight(ex.g, wmu).ok());
    const TruncationSpec all(ex.g, {0, 1, 2});
    CHECK(truncate_weight(wmu, all) == wmu);
    const Weight t = truncate_weight(wmu, ex.spec);
    CHECK(t.vertex.size() == 1);
    CHECK(t.at(0) == q(1, 2));
    CHECK(t.edge.empty());
    CHECK_THROWS_AS(TruncationSpec(ex.g, {}), InputError);
    CHECK_THROWS_AS(TruncationSpec(ex.g, {7}), InputError);
}

TEST_CASE("cone vectors") {
    AbacExample ex;
    const TruncationSpec all(ex.g, {0, 1, 2});
    CHECK(vector_of(testing::orbit_measure_weight(ex.p, F1), all).coords.empty());
    Weight single;
    single.set(Edge{0, 1, 0}, q(1, 3));
    const ConeVector v = vector_of(single, ex.spec);
    CHECK(v.coords.size() == 1);
    CHECK(v.at({0, 0}) == q(1, 3));

    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> num(0, 5), pick(0, 3);
    for (int t = 0; t < 50; ++t) {
        Weight w1, w2;
        const auto edges = ex.g.edges();
        for (int i = 0; i < 3; ++i) {
            w1.set(edges[static_cast<std::size_t>(pick(rng))], q(num(rng), 3));
            w2.set(edges[static_cast<std::size_t>(pick(rng)) + 4], q(num(rng), 2));
        }
        CHECK(vector_of(w1.plus(w2), ex.spec) == vector_of(w1, ex.spec).plus(vector_of(w2, ex.spec)));
    }
}

TEST_CASE("finite cone decomposition") {
    const auto basis = finite_cone_decomposition(RationalVector{q(2), q(2)},
                                                 {{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}});
    CHECK(basis.prefix == 2);
    CHECK(basis.terms == std::vector<std::pair<std::size_t, Rational>>{{0, q(2)}, {1, q(2)}});

    const auto collinear = finite_cone_decomposition(RationalVector{q(1), q(1)},
                                                     {{q(1, 2), q(1, 2)}, {q(1, 4), q(1, 4)}});
    CHECK(collinear.prefix == 1);
    CHECK(collinear.terms == std::vector<std::pair<std::size_t, Rational>>{{0, q(2)}});

    try {
        finite_cone_decomposition(RationalVector{q(1), q(0)}, {{q(0), q(1)}});
        FAIL("expected a cone error");
    } catch (const ConeError& e) {
        CHECK(e.certificate().has_value());
    }
    CHECK_THROWS_AS(finite_cone_decomposition(RationalVector{q(-1)}, {{q(1)}}), InputError);
    CHECK_THROWS_AS(finite_cone_decomposition(RationalVector{q(1)}, {}), InputError);
}

TEST_CASE("sum of random generators is always reachable") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> num(0, 6), den(1, 4);
    for (int t = 0; t < 20; ++t) {
        std::vector<RationalVector> gens(20, RationalVector(4));
        RationalVector target(4, q(0));
        for (auto& g : gens)
            for (std::size_t i = 0; i < 4; ++i) {
                g[i] = q(num(rng), den(rng));
                target[i] += g[i];
            }
        const auto d = finite_cone_decomposition(target, gens);
        CHECK(d.prefix <= 20);
        RationalVector sum(4, q(0));
        for (const auto& [i, c] : d.terms) {
            CHECK(i < d.prefix);
            CHECK(c > 0);
            for (std::size_t k = 0; k < 4; ++k) sum[k] += c * gens[i][k];
        }
        CHECK(sum == target);
    }
}

TEST_CASE("component pattern weights match the hand computation") {
    AbacExample ex;
    const auto patterns = testing::component_pattern_weights(ex.g, ex.p, {0});
    REQUIRE(patterns);
    REQUIRE(patterns->size() == 2);
    CHECK((*patterns)[0].values == hand_wz(1));
    CHECK((*patterns)[1].values == hand_wz(2));
    CHECK((*patterns)[0].pattern.values ==
          std::map<Word, VertexId>{{Word{}, 1}, {w("a"), 0}, {w("a^-1"), 0}});
    for (const auto& pw : *patterns) CHECK(validate_pattern_weight(pw, ex.spec).empty());

    Weight sum = truncate_weight(testing::orbit_measure_weight(ex.p, F1), ex.spec);
    for (const auto& pw : *patterns) sum = sum.plus(pw.values);
    CHECK(sum == testing::orbit_measure_weight(ex.p, F1));
}

TEST_CASE("pattern weight validation") {
    AbacExample ex;
    PatternWeight pw{"z", Pattern{{{Word{}, 1}, {w("a"), 0}, {w("a^-1"), 0}}}, hand_wz(1)};
    CHECK(validate_pattern_weight(pw, ex.spec).empty());

    PatternWeight short_domain = pw;
    short_domain.pattern.values.erase(w("a^-1"));
    CHECK_FALSE(validate_pattern_weight(short_domain, ex.spec).empty());

    PatternWeight on_a = pw;
    on_a.values.set(0, q(1));
    CHECK_FALSE(validate_pattern_weight(on_a, ex.spec).empty());

    PatternWeight asym = pw;
    asym.values.set(Edge{0, 1, 0}, q(1, 2));
    CHECK_FALSE(validate_pattern_weight(asym, ex.spec).empty());

    PatternWeight inadmissible = pw;
    inadmissible.pattern.values[w("a")] = 2;
    CHECK_FALSE(validate_pattern_weight(inadmissible, ex.spec).empty());
}

TEST_CASE("assembly") {
    AbacExample ex;
    const Weight wmu = testing::orbit_measure_weight(ex.p, F1);
    const Weight truncated = truncate_weight(wmu, ex.spec);
    const auto patterns = *testing::component_pattern_weights(ex.g, ex.p, {0});

    const TruncationSpec all(ex.g, {0, 1, 2});
    CHECK(assemble_finite_weight(ex.g, truncate_weight(wmu, all), {}) == wmu);

    std::vector<ConeVector> gens;
    for (const auto& pw : patterns) gens.push_back(vector_of(pw.values, ex.spec));
    const auto d = finite_cone_decomposition(vector_of(wmu, ex.spec), gens);
    CHECK(d.prefix == 1);
    const Weight assembled = assemble_finite_weight(ex.g, truncated, decomposition_terms(d, patterns));
    CHECK(check_weight(ex.g, assembled).ok());
    CHECK(assembled.at(0) == q(1, 2));
    CHECK(assembled.at(1) == q(1, 2));
    CHECK(assembled.at(2) == 0);

    auto bumped = decomposition_terms(d, patterns);
    bumped[0].second += q(1, 7);
    try {
        assemble_finite_weight(ex.g, truncated, bumped);
        FAIL("expected an assembly error");
    } catch (const AssemblyError& e) {
        bool at_a = false;
        for (const auto& v : e.report().violations) at_a |= v.v == 0;
        CHECK(at_a);
    }

    const auto p = synthesize(ex.g, scale_to_integer(assembled).weight, 0);
    CHECK(verify_periodic(ex.g, p).ok);
}
