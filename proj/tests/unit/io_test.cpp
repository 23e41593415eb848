#include "freelat_io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace freelat;
using io::json;

namespace {

const std::filesystem::path kFixtures = FREELAT_FIXTURE_DIR;

}  // namespace

TEST_CASE("every fixture round-trips") {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().filename().string());
        const json raw = io::read_json(entry.path());
        const json once = io::roundtrip(raw, kFixtures);
        const json twice = io::roundtrip(once, kFixtures);
        CHECK(once == twice);
        CHECK(once.at("kind") == raw.at("kind"));
        ++seen;
    }
    CHECK(seen >= 10);
}

TEST_CASE("graph and weight serialization") {
    const ConstraintGraph g = io::graph_from_json(io::read_json(kFixtures / "swap_graph.json"));
    CHECK(g.vertex_count() == 2);
    CHECK(g.edges().size() == 4);
    const Weight w = io::weight_from_json(io::read_json(kFixtures / "swap_weight.json"), g);
    CHECK(check_weight(g, w).ok());
    CHECK(io::weight_from_json(io::to_json(w, g), g) == w);

    Weight frac;
    frac.set(0, Rational(2, 3));
    const json j = io::to_json(frac, g);
    CHECK(j.at("vertices").at("a") == "2/3");
    CHECK(io::weight_from_json(j, g) == frac);
}

TEST_CASE("periodic treequences serialize") {
    const ConstraintGraph g = io::graph_from_json(io::read_json(kFixtures / "swap_graph.json"));
    const auto p = PeriodicTreequence::from_positive(g.generators(), {{1, 0}}, {0, 1}, 0);
    CHECK(io::periodic_from_json(io::to_json(p, g), g) == p);
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(io::parse_json("{\"kind\": ", "inline"), InputError);
    try {
        io::parse_json("[1, 2,, 3]", "inline");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"j({"kind": "graph", "generators": ["a"]})j")), InputError);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"j({"kind": "weight", "generators": ["a"],
        "vertices": [], "edges": []})j")), InputError);
    CHECK_THROWS_AS(io::rational_from_json(json(1.5)), InputError);
    CHECK_THROWS_AS(io::perturb_config(json::parse(R"j({"kind": "perturb", "instance": "real_line",
        "tau": "sqrt(4)"})j")), InputError);
    CHECK_THROWS_AS(io::perturb_config(json::parse(R"j({"kind": "perturb", "instance": "finite_perm",
        "degree": 3, "perms": {"a": [[1, 4]]}})j")), InputError);
    CHECK_THROWS_AS(io::exponent_config(json::parse(R"j({"kind": "exponent", "group": {"type": "lattice",
        "name": "hurwitz"}})j")), InputError);
}
