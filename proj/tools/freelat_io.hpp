#pragma once

#include "freelat/conereduce.hpp"
#include "freelat/oracles.hpp"
#include "freelat/orbit_growth.hpp"
#include "freelat/quasigeodesic.hpp"
#include "freelat/schottky.hpp"
#include "freelat/stability.hpp"
#include "freelat/subshift.hpp"
#include "freelat/weights.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace freelat::io {

using json = nlohmann::json;

/// Reads and parses a JSON file. Parse errors surface as InputError with the
/// byte offset reported by the parser.
json read_json(const std::filesystem::path& path);
json parse_json(const std::string& text, const std::string& origin);

Rational rational_from_json(const json& j);
json to_json(const Rational& q);

std::string word_to_string(const Word& w, const GeneratorSet& gens);  ///< "id" for the identity

ConstraintGraph graph_from_json(const json& j);
json to_json(const ConstraintGraph& g);

Weight weight_from_json(const json& j, const ConstraintGraph& g);
json to_json(const Weight& w, const ConstraintGraph& g);

PeriodicTreequence periodic_from_json(const json& j, const ConstraintGraph& g);
json to_json(const PeriodicTreequence& p, const ConstraintGraph& g);

json to_json(const FarkasCertificate& c);
json to_json(const WeightReport& r, const ConstraintGraph& g);

PatternWeight pattern_weight_from_json(const json& j, const ConstraintGraph& g);
json to_json(const PatternWeight& pw, const ConstraintGraph& g);

struct ConeDecomposeConfig {
    std::vector<RationalVector> generators;
    RationalVector target;
    friend bool operator==(const ConeDecomposeConfig&, const ConeDecomposeConfig&) = default;
};
ConeDecomposeConfig cone_decompose_config(const json& j);
json to_json(const ConeDecomposeConfig& c);

/// Truncation set, the measure's weight W_mu, and the representative patterns.
struct ConeAssembleConfig {
    json graph;
    std::vector<std::string> a;
    json measure_weight;
    std::vector<json> patterns;
    std::optional<std::string> vertex;
    friend bool operator==(const ConeAssembleConfig&, const ConeAssembleConfig&) = default;
};
ConeAssembleConfig cone_assemble_config(const json& j);
json to_json(const ConeAssembleConfig& c);

struct PerturbConfig {
    std::string instance;  ///< real_line | finite_perm | moebius
    double epsilon = 0.05;
    std::int64_t radicand = 2;  ///< tau = sqrt(radicand)
    std::size_t cells = 20;
    std::size_t degree = 0;
    std::vector<std::string> generator_names;
    std::vector<std::vector<std::vector<std::uint32_t>>> perms;  ///< 1-based cycles per generator
    std::uint32_t stabilizer = 1;                                ///< 1-based point
    std::vector<std::array<double, 4>> matrices;                 ///< moebius generators
    std::size_t sample_budget = 64;
    friend bool operator==(const PerturbConfig&, const PerturbConfig&) = default;
};
PerturbConfig perturb_config(const json& j);
json to_json(const PerturbConfig& c);

struct ArcSpec {
    double center = 0, half_width = 0;
    friend bool operator==(const ArcSpec&, const ArcSpec&) = default;
};
struct CircleSpec {
    double center = 0, radius = 1;
    bool exterior = false;
    friend bool operator==(const CircleSpec&, const CircleSpec&) = default;
};

/// A Schottky group given by arcs, circles on the real line, or the symmetric
/// rank-2 family; or a lattice given by name.
struct GroupSpec {
    std::string kind;  ///< symmetric_rank2 | arcs | circles | lattice
    double half_width = 0;
    std::vector<std::pair<ArcSpec, ArcSpec>> arcs;
    std::vector<std::pair<CircleSpec, CircleSpec>> circles;
    std::string lattice;
    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};
GroupSpec group_spec(const json& j);
json to_json(const GroupSpec& g);
bool is_lattice(const GroupSpec& g);
SchottkyGroup build_schottky(const GroupSpec& g);
IntegerLattice build_lattice(const GroupSpec& g);

struct ExponentConfig {
    GroupSpec group;
    std::optional<std::array<double, 2>> basepoint;
    std::optional<double> radius;
    friend bool operator==(const ExponentConfig&, const ExponentConfig&) = default;
};
ExponentConfig exponent_config(const json& j);
json to_json(const ExponentConfig& c);

struct QGConfig {
    double delta = kDeltaH2;
    double lambda = 1.2;
    double c = 0.5;
    std::optional<double> R;
    std::optional<double> M;
    std::size_t trials = 1000;
    std::size_t points = 300;
    friend bool operator==(const QGConfig&, const QGConfig&) = default;
};
QGConfig qg_config(const json& j);
json to_json(const QGConfig& c);

struct StabilityConfig {
    GroupSpec group;
    std::vector<double> epsilons;
    std::size_t limit_depth = 6;
    std::size_t ball_radius = 5;
    std::size_t sphere_n = 9;
    friend bool operator==(const StabilityConfig&, const StabilityConfig&) = default;
};
StabilityConfig stability_config(const json& j);
json to_json(const StabilityConfig& c);

/// Parses a fixture by its "kind" field and re-serializes it. Weight fixtures
/// name their graph file in "graph", resolved against `dir`.
json roundtrip(const json& j, const std::filesystem::path& dir);

}  // namespace freelat::io
