#include "freelat/weights.hpp"

#include <numeric>

namespace freelat {

Rational Weight::at(VertexId v) const {
    auto it = vertex.find(v);
    return it == vertex.end() ? Rational(0) : it->second;
}

Rational Weight::at(const Edge& e) const {
    auto it = edge.find(e);
    return it == edge.end() ? Rational(0) : it->second;
}

void Weight::set(VertexId v, const Rational& value) {
    if (value.is_zero())
        vertex.erase(v);
    else
        vertex[v] = value;
}

void Weight::set(const Edge& e, const Rational& value) {
    if (value.is_zero())
        edge.erase(e);
    else
        edge[e] = value;
}

Weight Weight::scaled(const Rational& factor) const {
    Weight out;
    for (const auto& [v, x] : vertex) out.set(v, x * factor);
    for (const auto& [e, x] : edge) out.set(e, x * factor);
    return out;
}

Weight Weight::plus(const Weight& other) const {
    Weight out = *this;
    for (const auto& [v, x] : other.vertex) out.add(v, x);
    for (const auto& [e, x] : other.edge) out.add(e, x);
    return out;
}

Rational Weight::vertex_total() const {
    Rational total = 0;
    for (const auto& [v, x] : vertex) total += x;
    return total;
}

std::string describe(const WeightViolation& x, const ConstraintGraph& g) {
    const auto& gens = g.generators();
    auto name = [&](VertexId v) {
        return v < g.vertex_count() ? g.vertex_name(v) : "#" + std::to_string(v);
    };
    std::string where;
    switch (x.kind) {
    case WeightViolation::Kind::negative:
        return "negative value " + format_rational(x.lhs) + " at " + name(x.v);
    case WeightViolation::Kind::not_an_edge:
        return "mass " + format_rational(x.lhs) + " on non-edge (" + name(x.v) + "," + name(x.w) +
               ";" + gens.symbol(x.s) + ")";
    case WeightViolation::Kind::out_sum:
        where = "outgoing";
        break;
    case WeightViolation::Kind::in_sum:
        where = "incoming";
        break;
    case WeightViolation::Kind::inverse_symmetry:
        return "W(" + name(x.v) + "," + name(x.w) + ";" + gens.symbol(x.s) + ") = " +
               format_rational(x.lhs) + " but reverse edge carries " + format_rational(x.rhs);
    }
    return "W(" + name(x.v) + ") = " + format_rational(x.lhs) + " but " + where + " " +
           gens.symbol(x.s) + "-sum is " + format_rational(x.rhs);
}

WeightReport check_weight(const ConstraintGraph& g, const Weight& w) {
    using Kind = WeightViolation::Kind;
    const auto& gens = g.generators();
    WeightReport report;
    auto add = [&](Kind k, VertexId v, VertexId u, Letter s, Rational lhs, Rational rhs) {
        report.violations.push_back(WeightViolation{k, v, u, s, std::move(lhs), std::move(rhs)});
    };
    for (const auto& [v, x] : w.vertex) {
        if (v >= g.vertex_count())
            add(Kind::not_an_edge, v, v, 0, x, 0);
        else if (x < 0)
            add(Kind::negative, v, v, 0, x, 0);
    }
    for (const auto& [e, x] : w.edge) {
        if (!g.has_edge(e))
            add(Kind::not_an_edge, e.from, e.to, e.label, x, 0);
        else if (x < 0)
            add(Kind::negative, e.from, e.to, e.label, x, 0);
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        Rational wv = w.at(v);
        for (Letter s = 0; s < gens.size(); ++s) {
            Rational out = 0, in = 0;
            for (VertexId u : g.successors(v, s)) out += w.at(Edge{v, u, s});
            for (VertexId u : g.predecessors(v, s)) in += w.at(Edge{u, v, s});
            if (out != wv) add(Kind::out_sum, v, v, s, wv, out);
            if (in != wv) add(Kind::in_sum, v, v, s, wv, in);
        }
    }
    for (const Edge& e : g.edges()) {
        Rational here = w.at(e), there = w.at(reverse_edge(e, gens));
        if (here != there)
            add(Kind::inverse_symmetry, e.from, e.to, e.label, here, there);
    }
    return report;
}

Weight WeightSystem::decode(const RationalVector& x, const GeneratorSet& gens) const {
    Weight w;
    for (VertexId v = 0; v < vertex_count; ++v) w.set(v, x[v]);
    for (std::size_t i = 0; i < pair_edges.size(); ++i) {
        const Rational& value = x[vertex_count + i];
        w.set(pair_edges[i], value);
        w.set(reverse_edge(pair_edges[i], gens), value);
    }
    return w;
}

WeightSystem build_weight_system(const ConstraintGraph& g, std::optional<VertexId> positive_at) {
    validate_graph(g);
    const auto& gens = g.generators();
    WeightSystem sys;
    sys.vertex_count = g.vertex_count();
    std::map<Edge, std::size_t> column;
    for (const Edge& e : g.edges())
        if (gens.is_positive(e.label)) {
            column.emplace(e, sys.vertex_count + sys.pair_edges.size());
            sys.pair_edges.push_back(e);
        }
    const std::size_t cols = sys.vertex_count + sys.pair_edges.size();
    auto new_row = [&]() -> RationalVector& {
        sys.a.emplace_back(cols, Rational(0));
        sys.b.emplace_back(0);
        return sys.a.back();
    };
    // For s in S+, the s^-1 equations coincide with these two by the pairing.
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (Letter s = 0; s < gens.rank(); ++s) {
            auto& out = new_row();
            out[v] = 1;
            for (VertexId u : g.successors(v, s)) out[column.at(Edge{v, u, s})] -= 1;
            auto& in = new_row();
            in[v] = 1;
            for (VertexId u : g.predecessors(v, s)) in[column.at(Edge{u, v, s})] -= 1;
        }
    auto& norm = new_row();
    if (positive_at) {
        if (*positive_at >= g.vertex_count())
            throw InputError("positive_at vertex out of range");
        norm[*positive_at] = 1;
    } else {
        for (VertexId v = 0; v < g.vertex_count(); ++v) norm[v] = 1;
    }
    sys.b.back() = 1;
    return sys;
}

WeightSearch search_weight(const ConstraintGraph& g, std::optional<VertexId> positive_at) {
    WeightSearch search;
    search.system = build_weight_system(g, positive_at);
    if (g.vertex_count() == 0)
        return search;
    FeasibilityResult r = solve_feasibility(search.system.a, search.system.b);
    search.pivots = r.pivots;
    if (r.solution)
        search.weight = search.system.decode(*r.solution, g.generators());
    else
        search.certificate = std::move(r.certificate);
    return search;
}

std::optional<Weight> find_weight(const ConstraintGraph& g, std::optional<VertexId> positive_at) {
    return search_weight(g, positive_at).weight;
}

ScaledWeight scale_to_integer(const Weight& w) {
    Integer l = 1;
    auto fold = [&](const Rational& x) {
        Integer d = denominator_of(x);
        l = l / boost::multiprecision::gcd(l, d) * d;
    };
    for (const auto& [v, x] : w.vertex) fold(x);
    for (const auto& [e, x] : w.edge) fold(x);
    return ScaledWeight{w.scaled(Rational(l)), l};
}

bool is_integral(const Weight& w) {
    for (const auto& [v, x] : w.vertex)
        if (denominator_of(x) != 1) return false;
    for (const auto& [e, x] : w.edge)
        if (denominator_of(x) != 1) return false;
    return true;
}

Weight weight_from_measure(const EmpiricalMeasure& m, const ConstraintGraph& g) {
    Weight w;
    Rational total = 0;
    for (const auto& [v, x] : m.vertex_freq) {
        w.set(v, x);
        total += x;
    }
    for (const auto& [e, x] : m.edge_freq) w.set(e, x);
    WeightReport report = check_weight(g, w);
    if (total != 1)
        throw InconsistentMeasure("vertex frequencies sum to " + format_rational(total) + ", not 1",
                                  std::move(report));
    if (!report.ok()) {
        std::string msg = "frequencies are not a weight (measure is not shift-invariant): " +
                          describe(report.violations.front(), g);
        if (report.violations.size() > 1)
            msg += " and " + std::to_string(report.violations.size() - 1) + " more";
        throw InconsistentMeasure(msg, std::move(report));
    }
    return w;
}

}  // namespace freelat
