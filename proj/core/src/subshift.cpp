#include "freelat/subshift.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace freelat {

ConstraintGraph::ConstraintGraph(GeneratorSet gens, std::vector<std::string> vertices,
                                 std::vector<Edge> edges)
    : gens_(std::move(gens)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_)
        if (!seen.insert(v).second)
            throw InputError("duplicate vertex id '" + v + "'");
    for (const Edge& e : edges_) {
        if (e.from >= vertices_.size() || e.to >= vertices_.size())
            throw InputError("edge refers to an unknown vertex");
        if (e.label >= gens_.size())
            throw InputError("edge label outside the generator set");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    const std::size_t slots = vertices_.size() * gens_.size();
    out_.assign(slots, {});
    in_.assign(slots, {});
    for (const Edge& e : edges_) {
        out_[e.from * gens_.size() + e.label].push_back(e.to);
        in_[e.to * gens_.size() + e.label].push_back(e.from);
    }
    for (auto& list : in_)
        std::sort(list.begin(), list.end());
}

VertexId ConstraintGraph::vertex_id(std::string_view name) const {
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v] == name)
            return v;
    throw InputError("unknown vertex '" + std::string(name) + "'");
}

bool ConstraintGraph::has_edge(VertexId from, VertexId to, Letter label) const {
    if (from >= vertices_.size() || label >= gens_.size())
        return false;
    const auto& succ = out_[from * gens_.size() + label];
    return std::binary_search(succ.begin(), succ.end(), to);
}

const std::vector<VertexId>& ConstraintGraph::successors(VertexId v, Letter label) const {
    return out_.at(v * gens_.size() + label);
}

const std::vector<VertexId>& ConstraintGraph::predecessors(VertexId v, Letter label) const {
    return in_.at(v * gens_.size() + label);
}

ConstraintGraph ConstraintGraph::closed() const {
    std::vector<Edge> all = edges_;
    for (const Edge& e : edges_)
        all.push_back(reverse_edge(e, gens_));
    return ConstraintGraph(gens_, vertices_, std::move(all));
}

GraphReport validate_graph(const ConstraintGraph& g) {
    std::vector<Edge> missing;
    for (const Edge& e : g.edges())
        if (!g.has_edge(reverse_edge(e, g.generators())))
            missing.push_back(e);
    if (!missing.empty()) {
        std::string msg = "constraint graph is not symmetric: missing reverse of";
        for (const Edge& e : missing)
            msg += " (" + g.vertex_name(e.from) + "," + g.vertex_name(e.to) + ";" +
                   g.generators().symbol(e.label) + ")";
        throw StructuralError(msg, std::move(missing));
    }
    GraphReport report;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (Letter l = 0; l < g.generators().size(); ++l)
            if (g.successors(v, l).empty())
                report.dead_ends.emplace_back(v, l);
    return report;
}

bool check_pattern(const ConstraintGraph& g, const Pattern& p) {
    const auto& gens = g.generators();
    for (const auto& [f, v] : p.values) {
        if (v >= g.vertex_count())
            return false;
        for (Letter l = 0; l < gens.size(); ++l) {
            auto it = p.values.find(f.times(l, gens));
            if (it != p.values.end() && !g.has_edge(v, it->second, l))
                return false;
        }
    }
    return true;
}

Pattern shift(const Pattern& p, const Word& h, const GeneratorSet& gens) {
    Pattern out;
    for (const auto& [f, v] : p.values)
        out.values.emplace(h.times(f, gens), v);
    return out;
}

Pattern restrict_pattern(const Pattern& p, const WordSet& support) {
    Pattern out;
    for (const Word& f : support) {
        auto it = p.values.find(f);
        if (it != p.values.end())
            out.values.emplace(f, it->second);
    }
    return out;
}

PeriodicTreequence PeriodicTreequence::from_positive(const GeneratorSet& gens,
                                                     std::vector<std::vector<std::size_t>> positive,
                                                     std::vector<VertexId> labeling,
                                                     std::size_t basepoint) {
    if (positive.size() != gens.rank())
        throw InputError("need one permutation per positive generator");
    PeriodicTreequence p;
    p.carrier_size = labeling.size();
    p.labeling = std::move(labeling);
    p.basepoint = basepoint;
    p.action.assign(gens.size(), std::vector<std::size_t>(p.carrier_size, npos));
    for (std::size_t s = 0; s < gens.rank(); ++s) {
        if (positive[s].size() != p.carrier_size)
            throw InputError("permutation for '" + gens.symbol(static_cast<Letter>(s)) +
                             "' has the wrong length");
        auto& inv = p.action[gens.inverse(static_cast<Letter>(s))];
        for (std::size_t k = 0; k < p.carrier_size; ++k) {
            std::size_t image = positive[s][k];
            if (image < p.carrier_size && inv[image] == npos)
                inv[image] = k;
        }
        p.action[s] = std::move(positive[s]);
    }
    return p;
}

std::size_t PeriodicTreequence::act(std::size_t k, const Word& f) const {
    for (Letter l : f.letters())
        k = action[l][k];
    return k;
}

PeriodicTreequence PeriodicTreequence::rebased(const Word& f) const {
    PeriodicTreequence out = *this;
    out.basepoint = act(basepoint, f);
    return out;
}

PeriodicCheck verify_periodic(const ConstraintGraph& g, const PeriodicTreequence& p) {
    PeriodicCheck check;
    auto fail = [&](std::string msg) {
        check.ok = false;
        check.failures.push_back(std::move(msg));
    };
    const auto& gens = g.generators();
    const std::size_t n = p.carrier_size;
    if (n == 0) {
        fail("empty carrier");
        return check;
    }
    if (p.labeling.size() != n) fail("labeling size differs from carrier size");
    if (p.basepoint >= n) fail("basepoint outside carrier");
    if (p.action.size() != gens.size()) fail("action must list every letter");
    if (!check.ok)
        return check;
    for (Letter l = 0; l < gens.size(); ++l) {
        if (p.action[l].size() != n) {
            fail("action of " + gens.symbol(l) + " has wrong length");
            continue;
        }
        std::vector<bool> hit(n, false);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t image = p.action[l][k];
            if (image >= n || hit[image]) {
                fail("action of " + gens.symbol(l) + " is not a bijection");
                break;
            }
            hit[image] = true;
        }
    }
    if (!check.ok)
        return check;
    for (Letter l = 0; l < gens.size(); ++l)
        for (std::size_t k = 0; k < n; ++k)
            if (p.action[gens.inverse(l)][p.action[l][k]] != k) {
                fail("action of " + gens.symbol(gens.inverse(l)) + " does not invert " +
                     gens.symbol(l));
                break;
            }
    for (VertexId v : p.labeling)
        if (v >= g.vertex_count()) {
            fail("labeling uses an unknown vertex");
            return check;
        }
    for (std::size_t k = 0; k < n; ++k)
        for (Letter l = 0; l < gens.size(); ++l) {
            VertexId from = p.labeling[k], to = p.labeling[p.action[l][k]];
            if (!g.has_edge(from, to, l))
                fail("carrier point " + std::to_string(k) + " needs missing edge (" +
                     g.vertex_name(from) + "," + g.vertex_name(to) + ";" + gens.symbol(l) + ")");
        }
    return check;
}

Pattern expand_periodic(const PeriodicTreequence& p, const GeneratorSet& gens, std::size_t radius) {
    Pattern out;
    // Walk the ball breadth-first carrying k1 . f alongside f.
    std::vector<std::pair<Word, std::size_t>> frontier{{Word{}, p.basepoint}};
    out.values.emplace(Word{}, p.labeling[p.basepoint]);
    for (std::size_t len = 1; len <= radius; ++len) {
        std::vector<std::pair<Word, std::size_t>> next;
        for (const auto& [w, k] : frontier)
            for (Letter l = 0; l < gens.size(); ++l) {
                if (!w.is_identity() && w.letters().back() == gens.inverse(l))
                    continue;
                std::size_t kl = p.action[l][k];
                Word wl = w.times(l, gens);
                out.values.emplace(wl, p.labeling[kl]);
                next.emplace_back(std::move(wl), kl);
            }
        frontier = std::move(next);
    }
    return out;
}

StabilizerData stabilizer_index(const PeriodicTreequence& p, const GeneratorSet& gens) {
    StabilizerData data;
    std::deque<std::size_t> queue{p.basepoint};
    data.transversal.emplace(p.basepoint, Word{});
    std::vector<std::size_t> order;
    while (!queue.empty()) {
        std::size_t k = queue.front();
        queue.pop_front();
        order.push_back(k);
        const Word& tk = data.transversal.at(k);
        for (Letter l = 0; l < gens.size(); ++l) {
            std::size_t kl = p.action[l][k];
            if (!data.transversal.contains(kl)) {
                data.transversal.emplace(kl, tk.times(l, gens));
                queue.push_back(kl);
            }
        }
    }
    data.index = order.size();

    std::set<Word> seen;
    for (std::size_t k : order) {
        const Word& tk = data.transversal.at(k);
        for (Letter s = 0; s < gens.rank(); ++s) {
            const Word& tks = data.transversal.at(p.action[s][k]);
            Word g = tk.times(s, gens).times(tks.inverse(gens), gens);
            if (!g.is_identity() && seen.insert(g).second)
                data.generators.push_back(std::move(g));
        }
    }
    return data;
}

}  // namespace freelat
