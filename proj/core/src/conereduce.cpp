#include "freelat/conereduce.hpp"

namespace freelat {

TruncationSpec::TruncationSpec(const ConstraintGraph& graph, std::set<VertexId> a)
    : graph_(&graph), a_(std::move(a)) {
    if (a_.empty())
        throw InputError("truncation set A is empty");
    for (VertexId v : a_)
        if (v >= graph.vertex_count())
            throw InputError("truncation set names an unknown vertex");
}

Weight truncate_weight(const Weight& w, const TruncationSpec& spec) {
    Weight out;
    for (const auto& [v, x] : w.vertex)
        if (spec.in_a(v)) out.set(v, x);
    for (const auto& [e, x] : w.edge)
        if (spec.in_a(e.from) && spec.in_a(e.to)) out.set(e, x);
    return out;
}

Rational ConeVector::at(const ConeKey& key) const {
    auto it = coords.find(key);
    return it == coords.end() ? Rational(0) : it->second;
}

ConeVector ConeVector::plus(const ConeVector& other) const {
    ConeVector out = *this;
    for (const auto& [k, x] : other.coords) {
        Rational sum = out.at(k) + x;
        if (sum.is_zero())
            out.coords.erase(k);
        else
            out.coords[k] = sum;
    }
    return out;
}

ConeVector vector_of(const Weight& w, const TruncationSpec& spec) {
    ConeVector out;
    for (const auto& [e, x] : w.edge)
        if (spec.in_a(e.from) && !spec.in_a(e.to)) out.coords[{e.from, e.label}] += x;
    std::erase_if(out.coords, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

ConeDecomposition finite_cone_decomposition(const RationalVector& target,
                                            const std::vector<RationalVector>& generators) {
    if (generators.empty())
        throw InputError("cone decomposition needs at least one generator");
    const std::size_t k = target.size();
    auto nonneg = [](const RationalVector& v) {
        for (const auto& x : v)
            if (x < 0) return false;
        return true;
    };
    if (!nonneg(target))
        throw InputError("cone target has a negative coordinate");
    for (const auto& r : generators)
        if (r.size() != k || !nonneg(r))
            throw InputError("cone generators must be nonnegative vectors of the target's length");

    std::optional<FarkasCertificate> last;
    for (std::size_t n = 1; n <= generators.size(); ++n) {
        RationalMatrix a(k, RationalVector(n, Rational(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) a[i][j] = generators[j][i];
        FeasibilityResult r = solve_feasibility(a, target);
        if (r.solution) {
            ConeDecomposition d;
            d.prefix = n;
            for (std::size_t j = 0; j < n; ++j)
                if (!(*r.solution)[j].is_zero()) d.terms.emplace_back(j, (*r.solution)[j]);
            return d;
        }
        last = std::move(r.certificate);
    }
    throw ConeError("target is not in the positive cone of the " +
                        std::to_string(generators.size()) + " supplied generators",
                    std::move(last));
}

ConeDecomposition finite_cone_decomposition(const ConeVector& target,
                                            const std::vector<ConeVector>& generators) {
    std::set<ConeKey> keys;
    for (const auto& [key, x] : target.coords) keys.insert(key);
    for (const auto& r : generators)
        for (const auto& [key, x] : r.coords) keys.insert(key);
    auto dense = [&](const ConeVector& v) {
        RationalVector out;
        out.reserve(keys.size());
        for (const auto& key : keys) out.push_back(v.at(key));
        return out;
    };
    std::vector<RationalVector> gens;
    gens.reserve(generators.size());
    for (const auto& r : generators) gens.push_back(dense(r));
    return finite_cone_decomposition(dense(target), gens);
}

std::vector<std::string> validate_pattern_weight(const PatternWeight& pw, const TruncationSpec& spec) {
    const ConstraintGraph& g = spec.graph();
    const auto& gens = g.generators();
    std::vector<std::string> issues;
    WordSet domain, core;
    for (const auto& [f, v] : pw.pattern.values) {
        if (v >= g.vertex_count()) {
            issues.push_back("pattern value at " + format_word(f, gens) + " is not a vertex");
            return issues;
        }
        domain.insert(f);
        if (!spec.in_a(v)) core.insert(f);
    }
    if (core.empty())
        issues.push_back("C_z is empty");
    else if (!is_s_connected(core, gens))
        issues.push_back("C_z is not S-connected");
    WordSet expected = outer_boundary(core, gens);
    expected.insert(core.begin(), core.end());
    if (expected != domain)
        issues.push_back("domain is not C_z together with its outer boundary");
    if (!check_pattern(g, pw.pattern))
        issues.push_back("pattern is not admissible");

    for (const auto& [v, x] : pw.values.vertex)
        if (spec.in_a(v))
            issues.push_back("W_z is nonzero at A-vertex " + g.vertex_name(v));
    for (const auto& [e, x] : pw.values.edge) {
        if (x < 0)
            issues.push_back("W_z has a negative value");
        if (spec.in_a(e.from) && spec.in_a(e.to))
            issues.push_back("W_z is nonzero on an A-A edge");
        else if (spec.in_a(e.from) && pw.values.at(reverse_edge(e, gens)) != x)
            issues.push_back("W_z(" + g.vertex_name(e.from) + "," + g.vertex_name(e.to) + ";" +
                             gens.symbol(e.label) + ") differs from its reverse");
    }
    for (const auto& [e, x] : pw.values.edge)
        if (!spec.in_a(e.from) && spec.in_a(e.to) &&
            !pw.values.edge.contains(reverse_edge(e, gens)))
            issues.push_back("W_z is missing the reverse of an edge into A");
    return issues;
}

Weight assemble_finite_weight(const ConstraintGraph& g, const Weight& truncated,
                              const std::vector<std::pair<const PatternWeight*, Rational>>& terms) {
    Weight w = truncated;
    for (const auto& [pw, t] : terms) {
        if (t < 0)
            throw InputError("negative coefficient for pattern '" + pw->id + "'");
        w = w.plus(pw->values.scaled(t));
    }
    WeightReport report = check_weight(g, w);
    if (!report.ok()) {
        std::string what = "assembled function is not a weight: " + describe(report.violations.front(), g);
        throw AssemblyError(std::move(what), std::move(report));
    }
    return w;
}

std::vector<std::pair<const PatternWeight*, Rational>> decomposition_terms(
    const ConeDecomposition& d, const std::vector<PatternWeight>& patterns) {
    std::vector<std::pair<const PatternWeight*, Rational>> out;
    for (const auto& [i, t] : d.terms) out.emplace_back(&patterns.at(i), t);
    return out;
}

}  // namespace freelat
