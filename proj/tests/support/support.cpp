#include "support.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace freelat::testing {

ConstraintGraph random_graph(std::mt19937_64& rng, std::size_t vertices, std::size_t rank,
                             double density) {
    GeneratorSet gens(rank);
    std::vector<std::string> names;
    for (std::size_t v = 0; v < vertices; ++v) names.push_back("v" + std::to_string(v));
    std::bernoulli_distribution coin(density);
    std::vector<Edge> edges;
    for (VertexId v = 0; v < vertices; ++v)
        for (VertexId w = 0; w < vertices; ++w)
            for (Letter s = 0; s < rank; ++s)
                if (coin(rng)) edges.push_back({v, w, s});
    return ConstraintGraph(gens, names, edges).closed();
}

bool weight_equations_hold(const ConstraintGraph& g, const Weight& w) {
    const GeneratorSet& gens = g.generators();
    const std::size_t n = g.vertex_count();
    for (const auto& [v, x] : w.vertex)
        if (x < 0 || v >= n) return false;
    for (const auto& [e, x] : w.edge)
        if (x < 0 || !g.has_edge(e)) return false;
    for (VertexId v = 0; v < n; ++v) {
        for (Letter s = 0; s < gens.size(); ++s) {
            Rational out = 0, in = 0;
            for (VertexId u = 0; u < n; ++u) {
                out += w.at(Edge{v, u, s});
                in += w.at(Edge{u, v, s});
            }
            if (out != w.at(v) || in != w.at(v)) return false;
            for (VertexId u = 0; u < n; ++u)
                if (w.at(Edge{v, u, s}) != w.at(Edge{u, v, gens.inverse(s)})) return false;
        }
    }
    return true;
}

std::size_t orbit_size(const std::vector<std::vector<std::uint32_t>>& generators, std::uint32_t point) {
    std::set<std::uint32_t> seen{point};
    std::deque<std::uint32_t> queue{point};
    while (!queue.empty()) {
        const std::uint32_t p = queue.front();
        queue.pop_front();
        for (const auto& g : generators)
            if (seen.insert(g[p]).second) queue.push_back(g[p]);
    }
    return seen.size();
}

namespace {

// Unique t with sum t_j columns[j] = target, if the columns are independent
// and the system is consistent.
std::optional<RationalVector> solve_independent(const std::vector<const RationalVector*>& columns,
                                                const RationalVector& target) {
    const std::size_t rows = target.size(), m = columns.size();
    RationalMatrix a(rows, RationalVector(m + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = (*columns[j])[i];
        a[i][m] = target[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_row(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t p = r;
        while (p < rows && a[p][j].is_zero()) ++p;
        if (p == rows) return std::nullopt;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][j].is_zero()) continue;
            const Rational f = a[i][j] / a[r][j];
            for (std::size_t k = j; k <= m; ++k) a[i][k] -= f * a[r][k];
        }
        pivot_row[j] = r++;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!a[i][m].is_zero()) return std::nullopt;
    RationalVector t(m);
    for (std::size_t j = 0; j < m; ++j) t[j] = a[pivot_row[j]][m] / a[pivot_row[j]][j];
    return t;
}

bool in_cone_with(const RationalVector& target, const std::vector<RationalVector>& gens,
                  std::size_t must, std::vector<std::size_t>& chosen, std::size_t next,
                  std::size_t limit) {
    if (!chosen.empty() && chosen.back() == must) {
        std::vector<const RationalVector*> cols;
        for (std::size_t i : chosen) cols.push_back(&gens[i]);
        if (auto t = solve_independent(cols, target))
            if (std::all_of(t->begin(), t->end(), [](const Rational& x) { return x >= 0; }))
                return true;
    }
    if (chosen.size() == target.size()) return false;
    for (std::size_t i = next; i < limit; ++i) {
        chosen.push_back(i);
        if (in_cone_with(target, gens, must, chosen, i + 1, limit)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::size_t> min_prefix_by_scan(const RationalVector& target,
                                              const std::vector<RationalVector>& generators) {
    if (std::all_of(target.begin(), target.end(), [](const Rational& x) { return x.is_zero(); }))
        return generators.empty() ? std::nullopt : std::optional<std::size_t>(1);
    for (std::size_t n = 1; n <= generators.size(); ++n) {
        // subsets of the first n generators that use generator n-1
        std::vector<std::size_t> chosen;
        if (in_cone_with(target, generators, n - 1, chosen, 0, n)) return n;
    }
    return std::nullopt;
}

namespace {

std::vector<std::size_t> orbit_of_basepoint(const PeriodicTreequence& p, const GeneratorSet& gens) {
    std::set<std::size_t> seen{p.basepoint};
    std::deque<std::size_t> queue{p.basepoint};
    while (!queue.empty()) {
        const std::size_t k = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < gens.size(); ++l)
            if (seen.insert(p.act(k, l)).second) queue.push_back(p.act(k, l));
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

Weight orbit_measure_weight(const PeriodicTreequence& p, const GeneratorSet& gens) {
    const auto orbit = orbit_of_basepoint(p, gens);
    const Rational unit(1, static_cast<long>(orbit.size()));
    Weight w;
    for (std::size_t k : orbit) {
        w.add(p.labeling[k], unit);
        for (Letter s = 0; s < gens.size(); ++s)
            w.add(Edge{p.labeling[k], p.labeling[p.act(k, s)], s}, unit);
    }
    return w;
}

std::optional<std::vector<PatternWeight>> component_pattern_weights(const ConstraintGraph& g,
                                                                    const PeriodicTreequence& p,
                                                                    const std::set<VertexId>& a,
                                                                    std::size_t max_component) {
    const GeneratorSet& gens = g.generators();
    const auto orbit = orbit_of_basepoint(p, gens);
    const Rational unit(1, static_cast<long>(orbit.size()));
    auto outside = [&](std::size_t k) { return !a.contains(p.labeling[k]); };

    std::map<std::map<Word, VertexId>, std::size_t> index;
    std::vector<PatternWeight> out;
    for (std::size_t k : orbit) {
        if (!outside(k)) continue;
        std::map<Word, std::size_t> comp{{Word{}, k}};
        std::deque<Word> queue{Word{}};
        while (!queue.empty()) {
            const Word f = queue.front();
            queue.pop_front();
            for (Letter s = 0; s < gens.size(); ++s) {
                const Word fs = f.times(s, gens);
                const std::size_t ks = p.act(comp.at(f), s);
                if (!outside(ks) || comp.contains(fs)) continue;
                comp.emplace(fs, ks);
                if (comp.size() > max_component) return std::nullopt;
                queue.push_back(fs);
            }
        }
        std::map<Word, VertexId> domain;
        for (const auto& [f, kf] : comp) {
            domain[f] = p.labeling[kf];
            for (Letter s = 0; s < gens.size(); ++s)
                domain.emplace(f.times(s, gens), p.labeling[p.act(kf, s)]);
        }
        std::optional<std::map<Word, VertexId>> best;
        for (const auto& [h, kh] : comp) {
            const Word hinv = h.inverse(gens);
            std::map<Word, VertexId> moved;
            for (const auto& [f, v] : domain) moved[hinv.times(f, gens)] = v;
            if (!best || moved < *best) best = std::move(moved);
        }
        auto [it, fresh] = index.emplace(*best, out.size());
        if (fresh) {
            PatternWeight pw;
            pw.id = "z" + std::to_string(out.size());
            pw.pattern.values = *best;
            out.push_back(std::move(pw));
        }
        Weight& wz = out[it->second].values;
        const VertexId v = p.labeling[k];
        wz.add(v, unit);
        for (Letter s = 0; s < gens.size(); ++s) {
            const VertexId w = p.labeling[p.act(k, s)];
            wz.add(Edge{v, w, s}, unit);
            if (a.contains(w)) wz.add(Edge{w, v, gens.inverse(s)}, unit);
        }
    }
    return out;
}

}  // namespace freelat::testing
