#include "freelat_io.hpp"

#include "freelat/conereduce.hpp"
#include "freelat/oracles.hpp"
#include "freelat/perturb.hpp"
#include "freelat/synthesis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace freelat;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct Common {
    std::string graph, weight, vertex, config, out;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::optional<double> radius, epsilon;
};

void emit(const json& j, const Common& c) {
    const std::string text = j.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f)
        throw InputError("cannot write " + c.out);
    f << text;
}

std::string require(const std::string& value, const char* flag) {
    if (value.empty())
        throw InputError(std::string("missing required option ") + flag);
    return value;
}

ConstraintGraph load_graph(const Common& c) { return io::graph_from_json(io::read_json(require(c.graph, "--graph"))); }

json edges_json(const std::vector<Edge>& edges, const ConstraintGraph& g) {
    json out = json::array();
    for (const Edge& e : edges)
        out.push_back({{"from", g.vertex_name(e.from)}, {"to", g.vertex_name(e.to)},
                       {"label", g.generators().symbol(e.label)}});
    return out;
}

int graph_validate(const Common& c) {
    const ConstraintGraph g = load_graph(c);
    try {
        const GraphReport r = validate_graph(g);
        json dead = json::array();
        for (const auto& [v, l] : r.dead_ends)
            dead.push_back({{"vertex", g.vertex_name(v)}, {"label", g.generators().symbol(l)}});
        emit({{"ok", true}, {"vertices", g.vertex_count()}, {"edges", g.edges().size()}, {"dead_ends", dead}}, c);
        return kOk;
    } catch (const StructuralError& e) {
        emit({{"ok", false}, {"error", e.what()}, {"missing_reverse", edges_json(e.offending(), g)}}, c);
        return kVerifyFailed;
    }
}

std::optional<VertexId> vertex_option(const Common& c, const ConstraintGraph& g) {
    if (c.vertex.empty()) return std::nullopt;
    return g.vertex_id(c.vertex);
}

int weight_find(const Common& c) {
    const ConstraintGraph g = load_graph(c);
    try {
        const WeightSearch s = search_weight(g, vertex_option(c, g));
        if (s.weight) {
            emit({{"found", true}, {"weight", io::to_json(*s.weight, g)}, {"pivots", s.pivots}}, c);
            return kOk;
        }
        json out = {{"found", false}, {"pivots", s.pivots}};
        if (s.certificate) {
            out["certificate"] = io::to_json(*s.certificate);
            out["certificate_valid"] = verify_certificate(s.system.a, s.system.b, *s.certificate);
        }
        emit(out, c);
        return kVerifyFailed;
    } catch (const StructuralError& e) {
        emit({{"found", false}, {"error", e.what()}, {"missing_reverse", edges_json(e.offending(), g)}}, c);
        return kVerifyFailed;
    }
}

int weight_check(const Common& c) {
    const ConstraintGraph g = load_graph(c);
    const Weight w = io::weight_from_json(io::read_json(require(c.weight, "--weight")), g);
    const WeightReport r = check_weight(g, w);
    emit({{"ok", r.ok()}, {"violations", io::to_json(r, g)}}, c);
    return r.ok() ? kOk : kVerifyFailed;
}

int synthesize_cmd(const Common& c) {
    const ConstraintGraph g = load_graph(c);
    const Weight w = io::weight_from_json(io::read_json(require(c.weight, "--weight")), g);
    const VertexId v1 = g.vertex_id(require(c.vertex, "--vertex"));
    const WeightReport r = check_weight(g, w);
    if (!r.ok()) {
        emit({{"ok", false}, {"error", "input is not a weight"}, {"violations", io::to_json(r, g)}}, c);
        return kVerifyFailed;
    }
    const ScaledWeight scaled = scale_to_integer(w);
    try {
        const PeriodicTreequence p = synthesize(g, scaled.weight, v1);
        const PeriodicCheck check = verify_periodic(g, p);
        emit({{"ok", check.ok},
              {"scale_factor", scaled.factor.str()},
              {"x_id", g.vertex_name(p.value_at(Word{}))},
              {"failures", check.failures},
              {"treequence", io::to_json(p, g)}},
             c);
        return check.ok ? kOk : kVerifyFailed;
    } catch (const SynthesisError& e) {
        emit({{"ok", false}, {"error", e.what()}}, c);
        return kVerifyFailed;
    }
}

json terms_json(const ConeDecomposition& d) {
    json terms = json::array();
    for (const auto& [i, t] : d.terms) terms.push_back({{"index", i}, {"t", io::to_json(t)}});
    return terms;
}

int cone_decompose(const Common& c) {
    const auto cfg = io::cone_decompose_config(io::read_json(require(c.config, "--config")));
    try {
        const ConeDecomposition d = finite_cone_decomposition(cfg.target, cfg.generators);
        emit({{"feasible", true}, {"prefix", d.prefix}, {"terms", terms_json(d)}}, c);
        return kOk;
    } catch (const ConeError& e) {
        json out = {{"feasible", false}, {"error", e.what()}};
        if (e.certificate()) out["certificate"] = io::to_json(*e.certificate());
        emit(out, c);
        return kVerifyFailed;
    }
}

int cone_assemble(const Common& c) {
    const auto cfg = io::cone_assemble_config(io::read_json(require(c.config, "--config")));
    const ConstraintGraph g = io::graph_from_json(cfg.graph);
    std::set<VertexId> a;
    for (const auto& name : cfg.a) a.insert(g.vertex_id(name));
    const TruncationSpec spec(g, a);
    const Weight measure = io::weight_from_json(cfg.measure_weight, g);
    std::vector<PatternWeight> patterns;
    for (const auto& p : cfg.patterns) patterns.push_back(io::pattern_weight_from_json(p, g));

    json issues = json::object();
    for (const auto& pw : patterns) {
        auto list = validate_pattern_weight(pw, spec);
        if (!list.empty()) issues[pw.id] = list;
    }
    if (!issues.empty()) {
        emit({{"ok", false}, {"error", "invalid pattern weights"}, {"pattern_issues", issues}}, c);
        return kVerifyFailed;
    }
    std::vector<ConeVector> gens;
    for (const auto& pw : patterns) gens.push_back(vector_of(pw.values, spec));
    ConeDecomposition d;
    try {
        d = finite_cone_decomposition(vector_of(measure, spec), gens);
    } catch (const ConeError& e) {
        emit({{"ok", false}, {"error", e.what()}}, c);
        return kVerifyFailed;
    }
    json terms = json::array();
    for (const auto& [i, t] : d.terms) terms.push_back({{"pattern_id", patterns[i].id}, {"t", io::to_json(t)}});
    json out = {{"prefix", d.prefix}, {"terms", terms}};
    try {
        const Weight w = assemble_finite_weight(g, truncate_weight(measure, spec), decomposition_terms(d, patterns));
        out["weight"] = io::to_json(w, g);
        out["ok"] = true;
        if (cfg.vertex) {
            const VertexId v1 = g.vertex_id(*cfg.vertex);
            const PeriodicTreequence p = synthesize(g, scale_to_integer(w).weight, v1);
            const PeriodicCheck check = verify_periodic(g, p);
            out["synthesis"] = {{"ok", check.ok}, {"carrier_size", p.carrier_size},
                                {"x_id", g.vertex_name(p.value_at(Word{}))}};
            out["ok"] = check.ok;
        }
    } catch (const AssemblyError& e) {
        out["ok"] = false;
        out["error"] = e.what();
        out["violations"] = io::to_json(e.report(), g);
    } catch (const SynthesisError& e) {
        out["ok"] = false;
        out["error"] = e.what();
    }
    emit(out, c);
    return out["ok"].get<bool>() ? kOk : kVerifyFailed;
}

template <class G>
json elements_json(const G& group, const std::vector<typename G::Element>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(group.format(x));
    return out;
}

template <class Q>
json uniform_json(const Q& q, const UniformReport<typename Q::Group::Element>& r,
                  const GeneratorSet& gens, bool detailed) {
    const auto& group = q.group();
    const ConstraintGraph& g = r.graph.graph;
    json gens_json = json::array();
    for (std::size_t i = 0; i < r.hom.generators.size(); ++i)
        gens_json.push_back({{"word", io::word_to_string(r.hom.generators[i], gens)},
                             {"image", group.format(r.hom.images[i])},
                             {"in_lattice", q.in_lattice(r.hom.images[i])}});
    json out = {{"ok", r.ok()},
                {"delta", r.delta.delta},
                {"cells", q.cell_count()},
                {"edges", g.edges().size()},
                {"max_psi_error", r.max_psi_error},
                {"carrier_size", r.treequence.carrier_size},
                {"index", r.hom.index},
                {"schreier_generators", gens_json},
                {"checks",
                 {{"epsilon_perturbation", {{"ok", r.epsilon_check.ok}, {"max_defect", r.epsilon_check.max_defect},
                                            {"tested", r.epsilon_check.tested}}},
                  {"cocycle", {{"ok", r.cocycle.ok}, {"max_deviation", r.cocycle.max_deviation},
                               {"trials", r.cocycle.trials}}},
                  {"homomorphism_tests", r.hom.hom_tests},
                  {"basepoint_tests", r.hom.basepoint_tests}}},
                {"failures", r.failures}};
    if (detailed) {
        out["graph"] = io::to_json(g);
        json psi = json::array();
        for (const auto& [e, value] : r.psi)
            psi.push_back({{"from", g.vertex_name(e.from)}, {"to", g.vertex_name(e.to)},
                           {"label", gens.symbol(e.label)}, {"psi", group.format(value)}});
        out["edge_isometries"] = psi;
        out["weight"] = io::to_json(r.weight, g);
        out["treequence"] = io::to_json(r.treequence, g);
    }
    return out;
}

UniformOptions uniform_options(const io::PerturbConfig& cfg, const Common& c) {
    UniformOptions o;
    o.epsilon = c.epsilon.value_or(cfg.epsilon);
    o.sample_budget = cfg.sample_budget;
    o.seed = c.seed;
    o.threads = c.threads;
    return o;
}

int perturb_common(const Common& c, bool detailed) {
    const auto cfg = io::perturb_config(io::read_json(require(c.config, "--config")));
    const GeneratorSet gens(cfg.generator_names);
    json out;
    bool ok = true;
    if (cfg.instance == "real_line") {
        const RealLineQuotient q(RealLineGroup(cfg.radicand), cfg.cells);
        const auto r = run_uniform_pipeline(q, {QuadraticNumber{0, 1}}, gens, uniform_options(cfg, c));
        out = uniform_json(q, r, gens, detailed);
        ok = r.ok();
    } else if (cfg.instance == "finite_perm") {
        const PermutationGroup group(cfg.degree);
        const PermutationQuotient q(group, cfg.stabilizer - 1);
        std::vector<PermutationGroup::Element> phi;
        for (const auto& cycles : cfg.perms) phi.push_back(group.from_cycles(cycles));
        const auto r = run_uniform_pipeline(q, phi, gens, uniform_options(cfg, c));
        out = uniform_json(q, r, gens, detailed);
        ok = r.ok();
    } else {
        if (!detailed)
            throw InputError("pipeline uniform needs a real_line or finite_perm instance");
        const MoebiusGroup group;
        std::vector<Moebius> phi;
        for (const auto& m : cfg.matrices) {
            try {
                phi.emplace_back(m[0], m[1], m[2], m[3]);
            } catch (const std::domain_error& e) {
                throw InputError(std::string("Moebius generator: ") + e.what());
            }
        }
        const double eps = c.epsilon.value_or(cfg.epsilon);
        const DeltaSearch d = delta_for_epsilon(group, phi, gens, eps, 10'000, c.seed);
        std::mt19937_64 rng(c.seed);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto k = group.sample_near_identity(2.0, rng);
            const auto g = group.sample_near_identity(1.0, rng);
            const auto h = group.sample_near_identity(1.0, rng);
            worst = std::max(worst, std::abs(group.distance(k * g, k * h) - group.distance(g, h)));
        }
        ok = worst <= 1e-9;
        out = {{"ok", ok}, {"delta", d.delta}, {"delta_samples", d.samples},
               {"left_invariance_max_deviation", worst},
               {"note", "no quotient partition is provided for this instance"}};
    }
    emit(out, c);
    return ok ? kOk : kVerifyFailed;
}

HPoint basepoint_for(const io::ExponentConfig& cfg, const SchottkyGroup* s) {
    if (cfg.basepoint) return make_point((*cfg.basepoint)[0], (*cfg.basepoint)[1]);
    if (s) return s->basepoint();
    return make_point(0.1, 1.3);
}

json estimate_json(const ExponentEstimate& e, double radius) {
    return {{"exponent", e.exponent},         {"residual_rms", e.residual_rms},
            {"slope_stderr", e.slope_stderr}, {"window", {e.window_lo, e.window_hi}},
            {"orbit_points", e.orbit_points}, {"radius", radius}};
}

int hyp_exponent(const Common& c) {
    const auto cfg = io::exponent_config(io::read_json(require(c.config, "--config")));
    try {
        if (io::is_lattice(cfg.group)) {
            const HPoint p = basepoint_for(cfg, nullptr);
            const double radius = c.radius.value_or(cfg.radius.value_or(11.0));
            emit(estimate_json(critical_exponent(io::build_lattice(cfg.group), p, radius), radius), c);
            return kOk;
        }
        const SchottkyGroup s = io::build_schottky(cfg.group);
        const HPoint p = basepoint_for(cfg, &s);
        const double radius = c.radius.value_or(cfg.radius.value_or(suggested_radius(s, p)));
        json out = estimate_json(critical_exponent(s, p, radius), radius);
        out["sphere_ratio_exponent"] = sphere_ratio_exponent(s, p, 9);
        out["basepoint"] = {p.x, p.y};
        emit(out, c);
        return kOk;
    } catch (const InsufficientData& e) {
        emit({{"ok", false}, {"error", e.what()}}, c);
        return kVerifyFailed;
    }
}

int hyp_qg_check(const Common& c) {
    const io::QGConfig cfg = c.config.empty() ? io::QGConfig{} : io::qg_config(io::read_json(c.config));
    LocalToGlobalOptions o;
    o.trials = cfg.trials;
    o.delta = cfg.delta;
    o.lambda = cfg.lambda;
    o.c = cfg.c;
    o.R = cfg.R;
    if (c.radius) o.R = *c.radius;
    o.M = cfg.M;
    o.shape.points = cfg.points;
    o.seed = c.seed;
    o.threads = c.threads;
    const LocalToGlobalReport r = check_local_to_global(o);
    const QGConstants& k = r.constants;
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"trial", f.trial}, {"turns", f.turns}, {"pair", {f.violation.a, f.violation.b}},
                            {"distance", f.violation.distance}});
    emit({{"ok", r.ok()},
          {"constants", {{"delta", k.delta}, {"lambda", k.lambda}, {"c", k.c}, {"R", k.R}, {"K", k.K},
                         {"M0", k.M0}, {"M1", k.M1}, {"lambda_prime", k.lambda_prime}, {"c_prime", k.c_prime}}},
          {"M", r.M},
          {"tested", r.tested},
          {"passed", r.passed},
          {"rejected", r.rejected},
          {"min_lower_slack", r.min_lower_slack},
          {"failures", failures}},
         c);
    return r.ok() ? kOk : kVerifyFailed;
}

int hyp_stability(const Common& c) {
    const auto cfg = io::stability_config(io::read_json(require(c.config, "--config")));
    const SchottkyGroup s = io::build_schottky(cfg.group);
    StabilityOptions o;
    o.limit_depth = cfg.limit_depth;
    o.ball_radius = cfg.ball_radius;
    o.sphere_n = cfg.sphere_n;
    o.seed = c.seed;
    std::vector<double> eps = cfg.epsilons;
    if (c.epsilon) eps = {*c.epsilon};
    try {
        const StabilityReport r = perturbation_stability_experiment(s, eps, o);
        json rows = json::array();
        bool ok = true;
        for (const auto& row : r.rows) {
            ok = ok && row.injective;
            rows.push_back({{"epsilon", row.epsilon},
                            {"hausdorff", row.hausdorff},
                            {"kappa", row.kappa},
                            {"kappa_deviation", row.kappa_deviation()},
                            {"min_orbit_distance", row.min_orbit_distance},
                            {"injective", row.injective},
                            {"exponent", row.exponent},
                            {"exponent_shift", row.exponent_shift}});
        }
        emit({{"ok", ok}, {"rho", r.rho}, {"base_exponent", r.base_exponent},
              {"basepoint", {r.basepoint.x, r.basepoint.y}}, {"rows", rows}},
             c);
        return ok ? kOk : kVerifyFailed;
    } catch (const PerturbationTooLarge& e) {
        emit({{"ok", false}, {"error", e.what()}}, c);
        return kVerifyFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weights, periodic points and perturbations of free-group actions"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "Write JSON here instead of stdout");
        sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    };
    int status = kOk;
    std::function<int()> action;
    auto bind = [&](CLI::App* sub, std::function<int(const Common&)> f) {
        add_common(sub);
        sub->callback([&, f] { action = [&, f] { return f(c); }; });
    };

    auto* graph = app.add_subcommand("graph", "Constraint graphs");
    graph->require_subcommand(1);
    auto* gv = graph->add_subcommand("validate", "Check the symmetric-closure invariant");
    gv->add_option("--graph", c.graph)->required();
    bind(gv, graph_validate);

    auto* weight = app.add_subcommand("weight", "Weights");
    weight->require_subcommand(1);
    auto* wf = weight->add_subcommand("find", "Exact weight search or Farkas certificate");
    wf->add_option("--graph", c.graph)->required();
    wf->add_option("--vertex", c.vertex, "Normalize W(vertex) = 1 instead of total mass 1");
    bind(wf, weight_find);
    auto* wc = weight->add_subcommand("check", "Verify the weight equations exactly");
    wc->add_option("--graph", c.graph)->required();
    wc->add_option("--weight", c.weight)->required();
    bind(wc, weight_check);

    auto* syn = app.add_subcommand("synthesize", "Periodic treequence from a weight");
    syn->add_option("--graph", c.graph)->required();
    syn->add_option("--weight", c.weight)->required();
    syn->add_option("--vertex", c.vertex)->required();
    bind(syn, synthesize_cmd);

    auto* cone = app.add_subcommand("cone", "Cone decomposition and finite weight assembly");
    cone->require_subcommand(1);
    auto* cd = cone->add_subcommand("decompose", "Minimal prefix cone decomposition");
    cd->add_option("--config", c.config)->required();
    bind(cd, cone_decompose);
    auto* ca = cone->add_subcommand("assemble", "Truncate, decompose and assemble a finite weight");
    ca->add_option("--config", c.config)->required();
    bind(ca, cone_assemble);

    auto* perturb = app.add_subcommand("perturb", "Epsilon-perturbations from quotient partitions");
    perturb->require_subcommand(1);
    auto* pr = perturb->add_subcommand("run", "Run an instance and report every stage");
    pr->add_option("--config", c.config)->required();
    pr->add_option("--epsilon", c.epsilon);
    bind(pr, [](const Common& cc) { return perturb_common(cc, true); });

    auto* hyp = app.add_subcommand("hyp", "Hyperbolic-plane experiments");
    hyp->require_subcommand(1);
    auto* he = hyp->add_subcommand("exponent", "Critical exponent by orbit counting");
    he->add_option("--config", c.config)->required();
    he->add_option("--radius", c.radius);
    bind(he, hyp_exponent);
    auto* hq = hyp->add_subcommand("qg-check", "Local-to-global quasi-geodesic experiment");
    hq->add_option("--config", c.config);
    hq->add_option("--radius", c.radius, "Stability constant R");
    bind(hq, hyp_qg_check);
    auto* hs = hyp->add_subcommand("stability", "Perturbation stability of a Schottky group");
    hs->add_option("--config", c.config)->required();
    hs->add_option("--epsilon", c.epsilon);
    bind(hs, hyp_stability);

    auto* pipeline = app.add_subcommand("pipeline", "End-to-end flows");
    pipeline->require_subcommand(1);
    auto* pu = pipeline->add_subcommand("uniform", "Graph, weight, synthesis and virtual homomorphism check");
    pu->add_option("--config", c.config)->required();
    pu->add_option("--epsilon", c.epsilon);
    bind(pu, [](const Common& cc) { return perturb_common(cc, false); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }
    try {
        status = action ? action() : kInputError;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return status;
}
