#include "freelat/synthesis.hpp"

#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace freelat;

namespace {

const GeneratorSet F1(1);
const GeneratorSet F2(2);

const ConstraintGraph& swap_graph() {
    static const ConstraintGraph g(F1, {"a", "b"}, {{0, 1, 0}, {1, 0, 0}, {1, 0, 1}, {0, 1, 1}});
    return g;
}

Weight constant(const ConstraintGraph& g, const Rational& x) {
    Weight w;
    for (VertexId v = 0; v < g.vertex_count(); ++v) w.set(v, x);
    for (const Edge& e : g.edges()) w.set(e, x);
    return w;
}

// Counting postcondition: exactly W(v, w; s) carrier points of label v step to label w.
bool edge_counts_match(const ConstraintGraph& g, const Weight& w, const PeriodicTreequence& p) {
    std::map<Edge, Rational> count;
    for (std::size_t k = 0; k < p.carrier_size; ++k)
        for (Letter s = 0; s < g.generators().size(); ++s)
            count[Edge{p.labeling[k], p.labeling[p.act(k, s)], s}] += 1;
    for (const Edge& e : g.edges())
        if (w.at(e) != (count.contains(e) ? count.at(e) : Rational(0))) return false;
    return true;
}

}  // namespace

TEST_CASE("fixed point from a one-vertex graph") {
    const ConstraintGraph g(F2, {"v"}, {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 0, 3}});
    const auto p = synthesize(g, constant(g, 1), 0);
    CHECK(p.carrier_size == 1);
    for (Letter s = 0; s < 4; ++s) CHECK(p.act(0, s) == 0);
    CHECK(verify_periodic(g, p).ok);
    const auto m = frequency_of(p, F2);
    CHECK(m.vertex_freq.at(0) == 1);
    for (const Edge& e : g.edges()) CHECK(m.edge_freq.at(e) == 1);
}

TEST_CASE("period two from the swap graph") {
    const auto p = synthesize(swap_graph(), constant(swap_graph(), 1), 0);
    CHECK(p.carrier_size == 2);
    CHECK(p.value_at(Word{}) == 0);
    CHECK(p.act(p.basepoint, 0) != p.basepoint);
    CHECK(p.act(p.act(p.basepoint, 0), 0) == p.basepoint);
    CHECK(verify_periodic(swap_graph(), p).ok);
    CHECK(stabilizer_index(p, F1).index == 2);
    const auto m = frequency_of(p, F1);
    CHECK(m.vertex_freq.at(0) == Rational(1, 2));
    CHECK(m.vertex_freq.at(1) == Rational(1, 2));
    for (const Edge& e : swap_graph().edges()) CHECK(m.edge_freq.at(e) == Rational(1, 2));
}

TEST_CASE("three-vertex rank-2 graph") {
    const ConstraintGraph g = ConstraintGraph(F2, {"a", "b", "c"},
                                              {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}, {0, 0, 1}, {1, 2, 1},
                                               {2, 1, 1}, {0, 2, 0}, {2, 1, 0}})
                                  .closed();
    const auto found = find_weight(g, VertexId{0});
    REQUIRE(found);
    const Weight w = scale_to_integer(*found).weight;
    const auto p = synthesize(g, w, 0);
    CHECK(p.value_at(Word{}) == 0);
    CHECK(verify_periodic(g, p).ok);
    CHECK(edge_counts_match(g, w, p));
    CHECK(weight_from_measure(frequency_of(p, F2), g) == w.scaled(Rational(1) / w.vertex_total()));
}

TEST_CASE("synthesis preconditions") {
    const ConstraintGraph g = swap_graph();
    CHECK_THROWS_AS(synthesize(g, constant(g, Rational(1, 2)), 0), SynthesisError);
    Weight broken = constant(g, 1);
    broken.set(Edge{0, 1, 0}, 2);
    CHECK_THROWS_AS(synthesize(g, broken, 0), SynthesisError);
    CHECK_THROWS_AS(synthesize(g, Weight{}, 0), SynthesisError);
    CHECK_THROWS_AS(synthesize(g, constant(g, 1), 5), SynthesisError);
    CHECK_THROWS_AS(synthesize(g, constant(g, 1000), 0, SynthesisOptions{10}), SynthesisError);
}

TEST_CASE("round trip on random graphs") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> nv(1, 6), rank(1, 2);
    std::uniform_int_distribution<int> mult(1, 4);
    int tested = 0;
    while (tested < 60) {
        const ConstraintGraph g = testing::random_graph(rng, nv(rng), rank(rng), 0.35);
        const auto found = find_weight(g, VertexId{0});
        if (!found) continue;
        ++tested;
        const Weight w = scale_to_integer(*found).weight.scaled(mult(rng));
        const auto p = synthesize(g, w, 0);
        CHECK(p.value_at(Word{}) == 0);
        CHECK(verify_periodic(g, p).ok);
        CHECK(edge_counts_match(g, w, p));
        const auto m = frequency_of(p, g.generators());
        CHECK(weight_from_measure(m, g) == w.scaled(Rational(1) / w.vertex_total()));
    }
}
