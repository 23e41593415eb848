#include "freelat/subshift.hpp"

#include <doctest.h>

#include <random>

using namespace freelat;

namespace {

const GeneratorSet F1(1);
const GeneratorSet F2(2);

ConstraintGraph all_loops(const GeneratorSet& gens) {
    std::vector<Edge> edges;
    for (Letter s = 0; s < gens.size(); ++s) edges.push_back({0, 0, s});
    return ConstraintGraph(gens, {"v"}, edges);
}

// a <-> b along s, with the reverse edges
ConstraintGraph swap_graph() {
    return ConstraintGraph(F1, {"a", "b"}, {{0, 1, 0}, {1, 0, 0}, {1, 0, 1}, {0, 1, 1}});
}

PeriodicTreequence swap_point() {
    return PeriodicTreequence::from_positive(F1, {{1, 0}}, {0, 1}, 0);
}

Word w(const char* text, const GeneratorSet& g = F2) { return parse_word(text, g); }

}  // namespace

TEST_CASE("graph validation") {
    CHECK(validate_graph(all_loops(F2)).dead_ends.empty());
    const ConstraintGraph half(F1, {"a", "b"}, {{0, 1, 0}});
    try {
        validate_graph(half);
        FAIL("expected a structural error");
    } catch (const StructuralError& e) {
        REQUIRE(e.offending().size() == 1);
        CHECK(e.offending()[0] == Edge{0, 1, 0});
    }
    CHECK_NOTHROW(validate_graph(half.closed()));
    CHECK(half.closed().has_edge(1, 0, 1));
    const auto report = validate_graph(half.closed());
    CHECK_FALSE(report.dead_ends.empty());
}

TEST_CASE("graph construction errors") {
    CHECK_THROWS_AS(ConstraintGraph(F1, {"a", "a"}, {}), InputError);
    CHECK_THROWS_AS(ConstraintGraph(F1, {"a"}, {{0, 3, 0}}), InputError);
    CHECK_THROWS_AS(ConstraintGraph(F1, {"a"}, {{0, 0, 2}}), InputError);
    CHECK_THROWS_AS(swap_graph().vertex_id("c"), InputError);
}

TEST_CASE("pattern admissibility") {
    const ConstraintGraph g = swap_graph();
    CHECK(check_pattern(g, Pattern{{{Word{}, 0}}}));
    const ConstraintGraph one_way(F1, {"a", "b"}, {{0, 1, 0}, {1, 0, 1}});
    CHECK_FALSE(check_pattern(one_way, Pattern{{{Word{}, 0}, {w("a", F1), 0}}}));
    CHECK(check_pattern(one_way, Pattern{{{Word{}, 0}, {w("a", F1), 1}}}));
    CHECK(check_pattern(g, expand_periodic(swap_point(), F1, 3)));
}

TEST_CASE("shifts compose") {
    const Pattern single{{{Word{}, 4}}};
    CHECK(shift(single, Word{}, F2) == single);
    CHECK(shift(single, w("a"), F2) == Pattern{{{w("a"), 4}}});

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> letter(0, 3), len(0, 4), value(0, 5);
    auto random_word = [&] {
        std::vector<Letter> xs;
        for (int i = len(rng); i > 0; --i) xs.push_back(static_cast<Letter>(letter(rng)));
        return Word::reduce(xs, F2);
    };
    for (int t = 0; t < 100; ++t) {
        Pattern p;
        for (int i = 0; i < 6; ++i) p.values[random_word()] = static_cast<VertexId>(value(rng));
        const Word g = random_word(), h = random_word();
        CHECK(shift(shift(p, h, F2), g, F2) == shift(p, g.times(h, F2), F2));
    }
}

TEST_CASE("restriction") {
    const Pattern p = expand_periodic(swap_point(), F1, 3);
    CHECK(restrict_pattern(p, ball(F1, 1)) == expand_periodic(swap_point(), F1, 1));
}

TEST_CASE("periodic expansion") {
    const auto p = swap_point();
    CHECK(expand_periodic(p, F1, 0) == Pattern{{{Word{}, 0}}});
    const Pattern b2 = expand_periodic(p, F1, 2);
    CHECK(b2.values.at(Word{}) == 0);
    CHECK(b2.values.at(w("a", F1)) == 1);
    CHECK(b2.values.at(w("a a", F1)) == 0);
    CHECK(b2.values.at(w("a^-1", F1)) == 1);
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(restrict_pattern(expand_periodic(p, F1, 4), ball(F1, m)) == expand_periodic(p, F1, m));
}

TEST_CASE("rebasing is the shift by the inverse") {
    const auto p = PeriodicTreequence::from_positive(F2, {{1, 2, 0}, {0, 2, 1}}, {0, 1, 2}, 0);
    for (const Word& f : ball(F2, 2)) {
        const Pattern moved = shift(expand_periodic(p, F2, 4), f.inverse(F2), F2);
        const Pattern rebased = expand_periodic(p.rebased(f), F2, 2);
        for (const auto& [g, v] : rebased.values) CHECK(moved.values.at(g) == v);
    }
}

TEST_CASE("periodic verification") {
    const auto fixed = PeriodicTreequence::from_positive(F2, {{0}, {0}}, {0}, 0);
    CHECK(verify_periodic(all_loops(F2), fixed).ok);
    CHECK(verify_periodic(swap_graph(), swap_point()).ok);
    const ConstraintGraph broken(F1, {"a", "b"}, {{0, 1, 0}, {1, 0, 1}});
    const auto check = verify_periodic(broken, swap_point());
    CHECK_FALSE(check.ok);
    CHECK_FALSE(check.failures.empty());
    const auto not_bijective = PeriodicTreequence::from_positive(F1, {{0, 0}}, {0, 1}, 0);
    CHECK_FALSE(verify_periodic(swap_graph(), not_bijective).ok);
}

TEST_CASE("stabilizer index and Schreier generators") {
    const auto fixed = PeriodicTreequence::from_positive(F2, {{0}, {0}}, {0}, 0);
    const auto trivial = stabilizer_index(fixed, F2);
    CHECK(trivial.index == 1);
    CHECK(trivial.generators == std::vector<Word>{w("a"), w("b")});

    const auto two = stabilizer_index(swap_point(), F1);
    CHECK(two.index == 2);
    CHECK(two.generators == std::vector<Word>{w("a a", F1)});

    const auto three = PeriodicTreequence::from_positive(F2, {{1, 2, 0}, {0, 1, 2}}, {0, 0, 0}, 0);
    const auto s = stabilizer_index(three, F2);
    CHECK(s.index == 3);
    const std::set<Word> gens(s.generators.begin(), s.generators.end());
    CHECK(gens.contains(w("a a a")));
    CHECK(gens.contains(w("b")));
    CHECK(gens.contains(w("a b a^-1")));
    // Schreier's formula: rank of the subgroup is index * (r - 1) + 1
    CHECK(s.generators.size() == 3 * (2 - 1) + 1);
    for (const Word& g : s.generators) CHECK(three.act(0, g) == 0);
}
