#include "freelat/freegroup.hpp"

#include <doctest.h>

#include <random>

using namespace freelat;

namespace {

const GeneratorSet F2(2);

Word w(const char* text) { return parse_word(text, F2); }

Word reduce(const char* text) {
    const auto letters = parse_letters(text, F2);
    return Word::reduce(letters, F2);
}

// Naive reduction by repeated scanning, kept separate from Word::reduce.
std::vector<Letter> rescan(std::vector<Letter> xs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            if (F2.inverse(xs[i]) == xs[i + 1]) {
                xs.erase(xs.begin() + static_cast<long>(i), xs.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return xs;
}

}  // namespace

TEST_CASE("free reduction") {
    CHECK(reduce("a a^-1").is_identity());
    CHECK(reduce("a b b^-1 a") == w("a a"));
    CHECK(reduce("b^-1 a a^-1 b b") == w("b"));
    CHECK(format_word(reduce("b^-1 a a^-1 b b"), F2) == "b");
}

TEST_CASE("reduction agrees with naive rescanning") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> letter(0, 3), len(0, 14);
    for (int t = 0; t < 500; ++t) {
        std::vector<Letter> xs;
        for (int i = len(rng); i > 0; --i) xs.push_back(static_cast<Letter>(letter(rng)));
        CHECK(Word::reduce(xs, F2).letters() == rescan(xs));
    }
}

TEST_CASE("symbols and parsing") {
    CHECK(F2.symbol(0) == "a");
    CHECK(F2.symbol(3) == "b^-1");
    CHECK(F2.parse_symbol("b^-1") == 3);
    CHECK_THROWS_AS(F2.parse_symbol("c"), InputError);
    CHECK(parse_word("", F2).is_identity());
    CHECK(format_word(w("a b^-1"), F2) == "a b^-1");
    const GeneratorSet named({"x", "y", "z"});
    CHECK(named.inverse(named.parse_symbol("y")) == named.parse_symbol("y^-1"));
}

TEST_CASE("products and inverses") {
    const Word x = w("a b a^-1"), y = w("a b^-1");
    CHECK(x.times(x.inverse(F2), F2).is_identity());
    CHECK(x.inverse(F2) == w("a b^-1 a^-1"));
    CHECK(x.times(y, F2) == w("a b b^-1"));
}

TEST_CASE("shortlex order") {
    CHECK(Word{} < w("a"));
    CHECK(w("b^-1") < w("a a"));
    CHECK(w("a") < w("b"));
}

TEST_CASE("balls") {
    CHECK(ball(F2, 0) == WordSet{Word{}});
    CHECK(ball(F2, 1).size() == 5);
    CHECK(ball(F2, 3).size() == 53);
    CHECK(ball_size(2, 3) == 53);
    for (std::size_t r = 1; r <= 3; ++r)
        for (std::size_t n = 0; n <= 5; ++n) CHECK(ball(GeneratorSet(r), n).size() == ball_size(r, n));
}

TEST_CASE("S-connected components") {
    CHECK(s_connected_components({Word{}, w("a"), w("a b")}, F2).size() == 1);
    const auto two = s_connected_components({w("a"), w("b")}, F2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == WordSet{w("a")});
    CHECK(s_connected_components({}, F2).empty());
    CHECK(is_s_connected(ball(F2, 2), F2));
    CHECK_FALSE(is_s_connected({Word{}, w("a a")}, F2));
}

TEST_CASE("outer boundary") {
    CHECK(outer_boundary({Word{}}, F2) == WordSet{w("a"), w("a^-1"), w("b"), w("b^-1")});
    CHECK(outer_boundary({}, F2).empty());
    CHECK(outer_boundary({Word{}, w("a")}, F2) ==
          WordSet{w("a^-1"), w("b"), w("b^-1"), w("a a"), w("a b"), w("a b^-1")});
    // the boundary of a ball is the next sphere
    const WordSet b2 = ball(F2, 2);
    CHECK(outer_boundary(b2, F2).size() == ball_size(2, 3) - ball_size(2, 2));
}
