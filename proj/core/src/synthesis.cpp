#include "freelat/synthesis.hpp"

namespace freelat {

PeriodicTreequence synthesize(const ConstraintGraph& g, const Weight& w, VertexId v1,
                              const SynthesisOptions& options) {
    const auto& gens = g.generators();
    if (v1 >= g.vertex_count())
        throw SynthesisError("basepoint vertex out of range");
    WeightReport report = check_weight(g, w);
    if (!report.ok())
        throw SynthesisError("not a weight: " + describe(report.violations.front(), g));
    if (!is_integral(w))
        throw SynthesisError("weight must be integer-valued; scale it first");
    if (w.at(v1) <= 0)
        throw SynthesisError("weight vanishes at " + g.vertex_name(v1));

    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> offset(n + 1, 0);
    Integer total = 0;
    for (VertexId v = 0; v < n; ++v) {
        total += numerator_of(w.at(v));
        if (total > options.max_carrier)
            throw SynthesisError("carrier would exceed " + std::to_string(options.max_carrier) +
                                 " elements");
        offset[v + 1] = offset[v] + numerator_of(w.at(v)).convert_to<std::size_t>();
    }
    const std::size_t size = offset[n];

    std::vector<std::vector<std::size_t>> positive(gens.rank(),
                                                   std::vector<std::size_t>(size, 0));
    for (Letter s = 0; s < gens.rank(); ++s) {
        // start of K_-(w, u; s) inside K(w), keyed by (w, u)
        std::map<std::pair<VertexId, VertexId>, std::size_t> incoming;
        for (VertexId t = 0; t < n; ++t) {
            std::size_t cursor = offset[t];
            for (VertexId u : g.predecessors(t, s)) {
                incoming[{t, u}] = cursor;
                cursor += numerator_of(w.at(Edge{u, t, s})).convert_to<std::size_t>();
            }
            if (cursor != offset[t + 1])
                throw SynthesisError("incoming partition of K(" + g.vertex_name(t) + ") for " +
                                     gens.symbol(s) + " does not sum to W");
        }
        for (VertexId v = 0; v < n; ++v) {
            std::size_t cursor = offset[v];
            for (VertexId t : g.successors(v, s)) {
                std::size_t len = numerator_of(w.at(Edge{v, t, s})).convert_to<std::size_t>();
                std::size_t target = incoming.at({t, v});
                for (std::size_t i = 0; i < len; ++i) positive[s][cursor + i] = target + i;
                cursor += len;
            }
            if (cursor != offset[v + 1])
                throw SynthesisError("outgoing partition of K(" + g.vertex_name(v) + ") for " +
                                     gens.symbol(s) + " does not sum to W");
        }
    }

    std::vector<VertexId> labeling(size);
    for (VertexId v = 0; v < n; ++v)
        for (std::size_t k = offset[v]; k < offset[v + 1]; ++k) labeling[k] = v;
    return PeriodicTreequence::from_positive(gens, std::move(positive), std::move(labeling),
                                             offset[v1]);
}

EmpiricalMeasure frequency_of(const PeriodicTreequence& p, const GeneratorSet& gens) {
    EmpiricalMeasure m;
    const Rational unit(1, static_cast<long>(p.carrier_size));
    for (std::size_t k = 0; k < p.carrier_size; ++k) {
        m.vertex_freq[p.labeling[k]] += unit;
        for (Letter l = 0; l < gens.size(); ++l)
            m.edge_freq[Edge{p.labeling[k], p.labeling[p.action[l][k]], l}] += unit;
    }
    return m;
}

}  // namespace freelat
