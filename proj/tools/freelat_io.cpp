#include "freelat_io.hpp"

#include <fstream>
#include <sstream>

namespace freelat::io {

namespace {

const json& member(const json& j, const char* key) {
    if (!j.is_object())
        throw InputError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string("missing field '") + key + "'");
    return *it;
}

template <class T>
T get(const json& j, const char* key) {
    try {
        return member(j, key).get<T>();
    } catch (const json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get<T>(j, key);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get<T>(j, key);
}

void expect_kind(const json& j, const char* kind) {
    if (j.is_object() && j.contains("kind") && j.at("kind") != kind)
        throw InputError(std::string("expected kind '") + kind + "', got " + j.at("kind").dump());
}

GeneratorSet generators_of(const json& j) {
    auto names = get<std::vector<std::string>>(j, "generators");
    if (names.empty())
        throw InputError("need at least one generator");
    return GeneratorSet(std::move(names));
}

Edge edge_from_json(const json& e, const ConstraintGraph& g) {
    return Edge{g.vertex_id(get<std::string>(e, "from")), g.vertex_id(get<std::string>(e, "to")),
                g.generators().parse_symbol(get<std::string>(e, "label"))};
}

json edge_to_json(const Edge& e, const ConstraintGraph& g) {
    return {{"from", g.vertex_name(e.from)}, {"to", g.vertex_name(e.to)},
            {"label", g.generators().symbol(e.label)}};
}

RationalVector rational_vector(const json& j) {
    if (!j.is_array())
        throw InputError("expected an array of rationals");
    RationalVector out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

json to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(io::to_json(x));
    return out;
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path.string());
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputError("expected an exact rational (integer or \"p/q\" string), got " + j.dump());
}

json to_json(const Rational& q) { return format_rational(q); }

std::string word_to_string(const Word& w, const GeneratorSet& gens) {
    return w.is_identity() ? "id" : format_word(w, gens);
}

ConstraintGraph graph_from_json(const json& j) {
    expect_kind(j, "graph");
    GeneratorSet gens = generators_of(j);
    auto vertices = get<std::vector<std::string>>(j, "vertices");
    const json& edges = member(j, "edges");
    if (!edges.is_array())
        throw InputError("field 'edges' must be an array");
    // a graph without edges still needs vertex lookup for edges, so build twice
    ConstraintGraph names(gens, vertices, {});
    std::vector<Edge> list;
    for (const auto& e : edges) list.push_back(edge_from_json(e, names));
    return ConstraintGraph(std::move(gens), std::move(vertices), std::move(list));
}

json to_json(const ConstraintGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back(edge_to_json(e, g));
    return {{"kind", "graph"},
            {"generators", g.generators().positive_names()},
            {"vertices", g.vertex_names()},
            {"edges", edges}};
}

Weight weight_from_json(const json& j, const ConstraintGraph& g) {
    expect_kind(j, "weight");
    Weight w;
    const json& vertices = member(j, "vertices");
    if (!vertices.is_object())
        throw InputError("field 'vertices' must map vertex names to values");
    for (const auto& [name, value] : vertices.items()) w.add(g.vertex_id(name), rational_from_json(value));
    for (const auto& e : get_or<json>(j, "edges", json::array()))
        w.add(edge_from_json(e, g), rational_from_json(member(e, "value")));
    return w;
}

json to_json(const Weight& w, const ConstraintGraph& g) {
    json vertices = json::object();
    for (const auto& [v, x] : w.vertex) vertices[g.vertex_name(v)] = to_json(x);
    json edges = json::array();
    for (const auto& [e, x] : w.edge) {
        json item = edge_to_json(e, g);
        item["value"] = to_json(x);
        edges.push_back(std::move(item));
    }
    return {{"kind", "weight"}, {"vertices", vertices}, {"edges", edges}};
}

PeriodicTreequence periodic_from_json(const json& j, const ConstraintGraph& g) {
    expect_kind(j, "periodic");
    const GeneratorSet& gens = g.generators();
    std::vector<VertexId> labeling;
    for (const auto& name : get<std::vector<std::string>>(j, "labeling")) labeling.push_back(g.vertex_id(name));
    const json& action = member(j, "action");
    std::vector<std::vector<std::size_t>> positive;
    for (const auto& name : gens.positive_names()) positive.push_back(get<std::vector<std::size_t>>(action, name.c_str()));
    auto p = PeriodicTreequence::from_positive(gens, std::move(positive), std::move(labeling),
                                               get<std::size_t>(j, "basepoint"));
    if (get<std::size_t>(j, "carrier_size") != p.carrier_size)
        throw InputError("carrier_size does not match the labeling");
    return p;
}

json to_json(const PeriodicTreequence& p, const ConstraintGraph& g) {
    const GeneratorSet& gens = g.generators();
    json labeling = json::array();
    for (VertexId v : p.labeling) labeling.push_back(g.vertex_name(v));
    json action = json::object();
    for (Letter s = 0; s < gens.rank(); ++s) action[gens.symbol(s)] = p.action[s];
    return {{"kind", "periodic"},
            {"carrier_size", p.carrier_size},
            {"basepoint", p.basepoint},
            {"labeling", labeling},
            {"action", action}};
}

json to_json(const FarkasCertificate& c) { return {{"y", to_json(c.y)}}; }

json to_json(const WeightReport& r, const ConstraintGraph& g) {
    json out = json::array();
    for (const auto& v : r.violations) out.push_back(describe(v, g));
    return out;
}

PatternWeight pattern_weight_from_json(const json& j, const ConstraintGraph& g) {
    PatternWeight pw;
    pw.id = get<std::string>(j, "id");
    const json& pattern = member(j, "pattern");
    if (!pattern.is_object())
        throw InputError("pattern must map words to vertex names");
    for (const auto& [word, vertex] : pattern.items()) {
        if (!vertex.is_string())
            throw InputError("pattern value at '" + word + "' must be a vertex name");
        pw.pattern.values[parse_word(word, g.generators())] = g.vertex_id(vertex.get<std::string>());
    }
    pw.values = weight_from_json(member(j, "values"), g);
    return pw;
}

json to_json(const PatternWeight& pw, const ConstraintGraph& g) {
    json pattern = json::object();
    for (const auto& [w, v] : pw.pattern.values) pattern[word_to_string(w, g.generators())] = g.vertex_name(v);
    json values = to_json(pw.values, g);
    values.erase("kind");
    return {{"id", pw.id}, {"pattern", pattern}, {"values", values}};
}

ConeDecomposeConfig cone_decompose_config(const json& j) {
    expect_kind(j, "cone_decompose");
    ConeDecomposeConfig c;
    c.target = rational_vector(member(j, "target"));
    const json& gens = member(j, "generators");
    if (!gens.is_array())
        throw InputError("field 'generators' must be an array of vectors");
    for (const auto& g : gens) c.generators.push_back(rational_vector(g));
    return c;
}

json to_json(const ConeDecomposeConfig& c) {
    json gens = json::array();
    for (const auto& g : c.generators) gens.push_back(to_json(g));
    return {{"kind", "cone_decompose"}, {"target", to_json(c.target)}, {"generators", gens}};
}

ConeAssembleConfig cone_assemble_config(const json& j) {
    expect_kind(j, "cone_assemble");
    ConeAssembleConfig c;
    const ConstraintGraph g = graph_from_json(member(j, "graph"));
    c.graph = to_json(g);
    c.a = get<std::vector<std::string>>(j, "A");
    for (const auto& name : c.a) g.vertex_id(name);
    c.measure_weight = to_json(weight_from_json(member(j, "measure_weight"), g), g);
    for (const auto& p : get<std::vector<json>>(j, "patterns"))
        c.patterns.push_back(to_json(pattern_weight_from_json(p, g), g));
    c.vertex = get_opt<std::string>(j, "vertex");
    if (c.vertex) g.vertex_id(*c.vertex);
    return c;
}

json to_json(const ConeAssembleConfig& c) {
    json out = {{"kind", "cone_assemble"},
                {"graph", c.graph},
                {"A", c.a},
                {"measure_weight", c.measure_weight},
                {"patterns", c.patterns}};
    if (c.vertex) out["vertex"] = *c.vertex;
    return out;
}

namespace {

std::int64_t parse_tau(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (ch != ' ') t += ch;
    if (t.rfind("sqrt(", 0) != 0 || t.back() != ')')
        throw InputError("tau must be written sqrt(d), got '" + text + "'");
    const std::string digits = t.substr(5, t.size() - 6);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("tau must be written sqrt(d) for a positive integer d");
    const std::int64_t d = std::stoll(digits);
    for (std::int64_t r = 0; r * r <= d; ++r)
        if (r * r == d)
            throw InputError("tau = sqrt(" + digits + ") is rational");
    return d;
}

std::array<double, 4> matrix_from_json(const json& m) {
    auto rows = m.get<std::vector<std::vector<double>>>();
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw InputError("a Moebius generator is a 2x2 matrix");
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

}  // namespace

PerturbConfig perturb_config(const json& j) {
    expect_kind(j, "perturb");
    PerturbConfig c;
    c.instance = get<std::string>(j, "instance");
    c.epsilon = get_or<double>(j, "epsilon", c.epsilon);
    if (!(c.epsilon > 0))
        throw InputError("epsilon must be positive");
    c.sample_budget = get_or<std::size_t>(j, "sample_budget", c.sample_budget);
    if (c.instance == "real_line") {
        c.radicand = parse_tau(get_or<std::string>(j, "tau", "sqrt(2)"));
        c.cells = get_or<std::size_t>(j, "cells", c.cells);
        if (c.cells == 0)
            throw InputError("cells must be positive");
        c.generator_names = {"s"};
    } else if (c.instance == "finite_perm") {
        c.degree = get<std::size_t>(j, "degree");
        c.stabilizer = get_or<std::uint32_t>(j, "stabilizer", 1);
        if (c.stabilizer == 0 || c.stabilizer > c.degree)
            throw InputError("stabilizer must be a point in 1..degree");
        const json& perms = member(j, "perms");
        if (!perms.is_object() || perms.empty())
            throw InputError("perms must map generator names to cycle lists");
        for (const auto& [name, cycles] : perms.items()) {
            c.generator_names.push_back(name);
            try {
                c.perms.push_back(cycles.get<std::vector<std::vector<std::uint32_t>>>());
            } catch (const json::exception& e) {
                throw InputError("perms." + name + ": " + e.what());
            }
        }
        PermutationGroup group(c.degree);
        for (const auto& cyc : c.perms) group.from_cycles(cyc);
    } else if (c.instance == "moebius") {
        const json& gens = member(j, "generators");
        if (!gens.is_object() || gens.empty())
            throw InputError("generators must map names to 2x2 matrices");
        for (const auto& [name, m] : gens.items()) {
            c.generator_names.push_back(name);
            try {
                c.matrices.push_back(matrix_from_json(m));
            } catch (const json::exception& e) {
                throw InputError("generators." + name + ": " + e.what());
            }
        }
    } else {
        throw InputError("unknown instance '" + c.instance + "'");
    }
    return c;
}

json to_json(const PerturbConfig& c) {
    json out = {{"kind", "perturb"}, {"instance", c.instance}, {"epsilon", c.epsilon},
                {"sample_budget", c.sample_budget}};
    if (c.instance == "real_line") {
        out["tau"] = "sqrt(" + std::to_string(c.radicand) + ")";
        out["cells"] = c.cells;
    } else if (c.instance == "finite_perm") {
        out["degree"] = c.degree;
        out["stabilizer"] = c.stabilizer;
        json perms = json::object();
        for (std::size_t i = 0; i < c.perms.size(); ++i) perms[c.generator_names[i]] = c.perms[i];
        out["perms"] = perms;
    } else {
        json gens = json::object();
        for (std::size_t i = 0; i < c.matrices.size(); ++i) {
            const auto& m = c.matrices[i];
            gens[c.generator_names[i]] = {{m[0], m[1]}, {m[2], m[3]}};
        }
        out["generators"] = gens;
    }
    return out;
}

GroupSpec group_spec(const json& j) {
    GroupSpec g;
    g.kind = get<std::string>(j, "type");
    auto arc = [](const json& a) { return ArcSpec{get<double>(a, "center"), get<double>(a, "half_width")}; };
    auto circle = [](const json& a) {
        return CircleSpec{get<double>(a, "center"), get<double>(a, "radius"), get_or<bool>(a, "exterior", false)};
    };
    if (g.kind == "symmetric_rank2") {
        g.half_width = get<double>(j, "half_width");
    } else if (g.kind == "arcs") {
        for (const auto& p : get<std::vector<json>>(j, "pairs"))
            g.arcs.emplace_back(arc(member(p, "from")), arc(member(p, "to")));
    } else if (g.kind == "circles") {
        for (const auto& p : get<std::vector<json>>(j, "pairs"))
            g.circles.emplace_back(circle(member(p, "from")), circle(member(p, "to")));
    } else if (g.kind == "lattice") {
        g.lattice = get<std::string>(j, "name");
        build_lattice(g);
    } else {
        throw InputError("unknown group type '" + g.kind + "'");
    }
    return g;
}

json to_json(const GroupSpec& g) {
    json out = {{"type", g.kind}};
    auto arc = [](const ArcSpec& a) { return json{{"center", a.center}, {"half_width", a.half_width}}; };
    auto circle = [](const CircleSpec& c) {
        return json{{"center", c.center}, {"radius", c.radius}, {"exterior", c.exterior}};
    };
    if (g.kind == "symmetric_rank2") out["half_width"] = g.half_width;
    if (g.kind == "arcs") {
        out["pairs"] = json::array();
        for (const auto& [f, t] : g.arcs) out["pairs"].push_back({{"from", arc(f)}, {"to", arc(t)}});
    }
    if (g.kind == "circles") {
        out["pairs"] = json::array();
        for (const auto& [f, t] : g.circles) out["pairs"].push_back({{"from", circle(f)}, {"to", circle(t)}});
    }
    if (g.kind == "lattice") out["name"] = g.lattice;
    return out;
}

bool is_lattice(const GroupSpec& g) { return g.kind == "lattice"; }

SchottkyGroup build_schottky(const GroupSpec& g) {
    try {
        if (g.kind == "symmetric_rank2") return symmetric_rank2(g.half_width);
        std::vector<ArcPair> pairs;
        for (const auto& [f, t] : g.arcs)
            pairs.push_back({Arc{f.center, f.half_width}, Arc{t.center, t.half_width}});
        for (const auto& [f, t] : g.circles)
            pairs.push_back({arc_from_circle(f.center, f.radius, f.exterior),
                             arc_from_circle(t.center, t.radius, t.exterior)});
        if (pairs.empty())
            throw InputError("group '" + g.kind + "' is not a Schottky group");
        return SchottkyGroup::from_arcs(pairs);
    } catch (const NotSchottky& e) {
        throw InputError(std::string("not a Schottky group: ") + e.what());
    }
}

IntegerLattice build_lattice(const GroupSpec& g) {
    if (g.lattice == "modular") return modular_group();
    throw InputError("unknown lattice '" + g.lattice + "' (supported: modular)");
}

ExponentConfig exponent_config(const json& j) {
    expect_kind(j, "exponent");
    ExponentConfig c;
    c.group = group_spec(member(j, "group"));
    if (auto p = get_opt<std::vector<double>>(j, "basepoint")) {
        if (p->size() != 2 || !((*p)[1] > 0))
            throw InputError("basepoint must be [x, y] with y > 0");
        c.basepoint = std::array<double, 2>{(*p)[0], (*p)[1]};
    }
    c.radius = get_opt<double>(j, "radius");
    if (c.radius && !(*c.radius > 0))
        throw InputError("radius must be positive");
    return c;
}

json to_json(const ExponentConfig& c) {
    json out = {{"kind", "exponent"}, {"group", to_json(c.group)}};
    if (c.basepoint) out["basepoint"] = *c.basepoint;
    if (c.radius) out["radius"] = *c.radius;
    return out;
}

QGConfig qg_config(const json& j) {
    expect_kind(j, "qg");
    QGConfig c;
    c.delta = get_or<double>(j, "delta", c.delta);
    c.lambda = get_or<double>(j, "lambda", c.lambda);
    c.c = get_or<double>(j, "c", c.c);
    c.R = get_opt<double>(j, "R");
    c.M = get_opt<double>(j, "M");
    c.trials = get_or<std::size_t>(j, "trials", c.trials);
    c.points = get_or<std::size_t>(j, "points", c.points);
    if (c.lambda < 1 || c.delta < 0 || c.c < 0 || (c.R && *c.R < 0))
        throw InputError("need lambda >= 1 and nonnegative delta, c, R");
    return c;
}

json to_json(const QGConfig& c) {
    json out = {{"kind", "qg"}, {"delta", c.delta}, {"lambda", c.lambda}, {"c", c.c},
                {"trials", c.trials}, {"points", c.points}};
    if (c.R) out["R"] = *c.R;
    if (c.M) out["M"] = *c.M;
    return out;
}

StabilityConfig stability_config(const json& j) {
    expect_kind(j, "stability");
    StabilityConfig c;
    c.group = group_spec(member(j, "group"));
    if (is_lattice(c.group))
        throw InputError("the stability experiment needs a Schottky group");
    c.epsilons = get<std::vector<double>>(j, "epsilons");
    for (double e : c.epsilons)
        if (!(e >= 0))
            throw InputError("epsilons must be nonnegative");
    c.limit_depth = get_or<std::size_t>(j, "limit_depth", c.limit_depth);
    c.ball_radius = get_or<std::size_t>(j, "ball_radius", c.ball_radius);
    c.sphere_n = get_or<std::size_t>(j, "sphere_n", c.sphere_n);
    return c;
}

json to_json(const StabilityConfig& c) {
    return {{"kind", "stability"},       {"group", to_json(c.group)},
            {"epsilons", c.epsilons},    {"limit_depth", c.limit_depth},
            {"ball_radius", c.ball_radius}, {"sphere_n", c.sphere_n}};
}

json roundtrip(const json& j, const std::filesystem::path& dir) {
    const std::string kind = get<std::string>(j, "kind");
    if (kind == "graph") return to_json(graph_from_json(j));
    if (kind == "weight") {
        const std::string graph_file = get<std::string>(j, "graph");
        const ConstraintGraph g = graph_from_json(read_json(dir / graph_file));
        json out = to_json(weight_from_json(j, g), g);
        out["graph"] = graph_file;
        return out;
    }
    if (kind == "cone_decompose") return to_json(cone_decompose_config(j));
    if (kind == "cone_assemble") return to_json(cone_assemble_config(j));
    if (kind == "perturb") return to_json(perturb_config(j));
    if (kind == "exponent") return to_json(exponent_config(j));
    if (kind == "qg") return to_json(qg_config(j));
    if (kind == "stability") return to_json(stability_config(j));
    throw InputError("unknown fixture kind '" + kind + "'");
}

}  // namespace freelat::io
