#pragma once

#include "freelat/freegroup.hpp"
#include "freelat/subshift.hpp"
#include "freelat/synthesis.hpp"
#include "freelat/weights.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace freelat {

/// A group G with a left-invariant metric. Implementations are immutable and
/// safe to share across threads.
template <class G>
concept GroupOracle = requires(const G& g, const typename G::Element& a, std::mt19937_64& rng,
                               double r) {
    { g.identity() } -> std::convertible_to<typename G::Element>;
    { g.multiply(a, a) } -> std::convertible_to<typename G::Element>;
    { g.inverse(a) } -> std::convertible_to<typename G::Element>;
    { g.distance(a, a) } -> std::convertible_to<double>;
    { g.equal(a, a) } -> std::convertible_to<bool>;
    /// An element with d(e, id) < r, concentrated near the sphere of radius r.
    { g.sample_near_identity(r, rng) } -> std::convertible_to<typename G::Element>;
    { g.format(a) } -> std::convertible_to<std::string>;
};

/// Partition of Gamma\G into cells with basepoints; cell 0 holds the identity
/// coset and its basepoint is the identity.
template <class Q>
concept QuotientOracle =
    GroupOracle<typename Q::Group> &&
    requires(const Q& q, const typename Q::Group::Element& a, std::size_t i, std::mt19937_64& rng) {
        { q.group() } -> std::convertible_to<const typename Q::Group&>;
        { q.cell_count() } -> std::convertible_to<std::size_t>;
        { q.cell_of(a) } -> std::convertible_to<std::size_t>;
        { q.cell_name(i) } -> std::convertible_to<std::string>;
        { q.basepoint(i) } -> std::convertible_to<typename Q::Group::Element>;
        /// g_v with basepoint(cell_of(a)) g_v in the coset Gamma a, and d(g_v, id) small
        { q.lift(a) } -> std::convertible_to<typename Q::Group::Element>;
        { q.in_lattice(a) } -> std::convertible_to<bool>;
        { q.same_coset(a, a) } -> std::convertible_to<bool>;
        { q.sample_cell(i, i, rng) } -> std::convertible_to<std::vector<typename Q::Group::Element>>;
        { q.cell_diameter() } -> std::convertible_to<double>;
        { Q::exact } -> std::convertible_to<bool>;
    };

template <class E>
using GeneratorImages = std::vector<E>;  ///< phi(s) for the positive generators

/// phi(l) for any letter, inverse letters included.
template <GroupOracle G>
typename G::Element image_of(const G& group, const GeneratorImages<typename G::Element>& phi,
                             const GeneratorSet& gens, Letter l) {
    return gens.is_positive(l) ? phi.at(l) : group.inverse(phi.at(gens.inverse(l)));
}

template <GroupOracle G>
typename G::Element evaluate_word(const G& group, const GeneratorImages<typename G::Element>& phi,
                                  const GeneratorSet& gens, std::span<const Letter> letters) {
    auto out = group.identity();
    for (Letter l : letters) out = group.multiply(out, image_of(group, phi, gens, l));
    return out;
}

struct DeltaSearch {
    double delta = 0;
    std::size_t samples = 0;  ///< validation samples at the accepted radius
};

/// Largest delta found by halving from epsilon and then bisecting, such that
/// d(g1 phi(s) g2, phi(s)) < epsilon on `samples` random draws with
/// d(g1, id), d(g2, id) < delta. Certified only up to sampling.
template <GroupOracle G>
DeltaSearch delta_for_epsilon(const G& group, const GeneratorImages<typename G::Element>& phi,
                              const GeneratorSet& gens, double epsilon,
                              std::size_t samples = 10'000, std::uint64_t seed = 0) {
    if (!(epsilon > 0))
        throw std::invalid_argument("epsilon must be positive");
    auto passes = [&](double delta) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (std::size_t i = 0; i < samples; ++i) {
            const auto s = image_of(group, phi, gens, static_cast<Letter>(pick(rng)));
            const auto g1 = group.sample_near_identity(delta, rng);
            const auto g2 = group.sample_near_identity(delta, rng);
            if (!(group.distance(group.multiply(group.multiply(g1, s), g2), s) < epsilon))
                return false;
        }
        return true;
    };
    double lo = epsilon, hi = epsilon;
    if (passes(epsilon)) {
        return {epsilon, samples};
    }
    do {
        hi = lo;
        lo /= 2;
        if (lo < 1e-300) throw std::runtime_error("no delta found for epsilon");
    } while (!passes(lo));
    for (int it = 0; it < 20; ++it) {
        const double mid = (lo + hi) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    return {lo, samples};
}

/// Constraint graph on the cells plus, for every positive-label edge, a point
/// p of the source cell with cell_of(p phi(s)) the target.
template <class E>
struct WitnessedGraph {
    ConstraintGraph graph;
    std::map<Edge, E> witness;
};

/// Samples `budget` points per cell (the oracle may return fewer, e.g. one
/// exact representative) and records every observed transition together with
/// its reverse. Missing a transition only shrinks the subshift.
template <QuotientOracle Q>
WitnessedGraph<typename Q::Group::Element> build_constraint_graph(
    const Q& q, const GeneratorImages<typename Q::Group::Element>& phi, const GeneratorSet& gens,
    std::size_t budget, std::uint64_t seed = 0, unsigned threads = 1) {
    using E = typename Q::Group::Element;
    if (phi.size() != gens.rank())
        throw InputError("need one generator image per positive generator");
    const std::size_t n = q.cell_count();
    std::vector<std::map<Edge, E>> found(n);
    auto scan = [&](std::size_t v) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + v);
        for (const E& p : q.sample_cell(v, budget, rng)) {
            if (q.cell_of(p) != v)
                throw std::logic_error("sample_cell returned a point outside cell " + q.cell_name(v));
            for (Letter s = 0; s < gens.rank(); ++s) {
                const std::size_t w = q.cell_of(q.group().multiply(p, phi[s]));
                found[v].try_emplace(Edge{v, w, s}, p);
            }
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t v = t; v < n; v += threads) scan(v);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::map<Edge, E> witness;
    std::vector<Edge> edges;
    for (auto& cell : found)
        for (auto& [e, p] : cell) {
            edges.push_back(e);
            edges.push_back(reverse_edge(e, gens));
            witness.emplace(e, std::move(p));
        }
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) names.push_back(q.cell_name(v));
    return {ConstraintGraph(gens, std::move(names), std::move(edges)), std::move(witness)};
}

class LiftError : public std::runtime_error {
public:
    LiftError(std::string what, Edge edge) : std::runtime_error(std::move(what)), edge_(edge) {}
    const Edge& edge() const noexcept { return edge_; }

private:
    Edge edge_;
};

template <class E>
using EdgeIsometries = std::map<Edge, E>;

/// psi_e = g_v phi(s) g_w^-1 from the witness of each positive edge; the
/// reverse edge receives psi_e^-1.
template <QuotientOracle Q>
EdgeIsometries<typename Q::Group::Element> edge_isometries(
    const WitnessedGraph<typename Q::Group::Element>& wg, const Q& q,
    const GeneratorImages<typename Q::Group::Element>& phi) {
    const auto& group = q.group();
    const auto& gens = wg.graph.generators();
    EdgeIsometries<typename Q::Group::Element> psi;
    for (const Edge& e : wg.graph.edges()) {
        if (!gens.is_positive(e.label)) continue;
        auto it = wg.witness.find(e);
        auto name = [&] {
            return "(" + wg.graph.vertex_name(e.from) + "," + wg.graph.vertex_name(e.to) + ";" +
                   gens.symbol(e.label) + ")";
        };
        if (it == wg.witness.end())
            throw LiftError("edge " + name() + " has no witness", e);
        const auto& p = it->second;
        const auto image = group.multiply(p, phi.at(e.label));
        if (q.cell_of(p) != e.from || q.cell_of(image) != e.to)
            throw LiftError("witness of edge " + name() + " does not realize it", e);
        const auto gv = q.lift(p);
        const auto gw = q.lift(image);
        auto value = group.multiply(group.multiply(gv, phi.at(e.label)), group.inverse(gw));
        psi.insert_or_assign(reverse_edge(e, gens), group.inverse(value));
        psi.insert_or_assign(e, std::move(value));
    }
    return psi;
}

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// phi_x(f) = psi_{e_1} ... psi_{e_m} along the letters of f, which need not
/// be reduced.
template <GroupOracle G>
typename G::Element decode(const PeriodicTreequence& x, const EdgeIsometries<typename G::Element>& psi,
                           const G& group, const GeneratorSet& gens, std::span<const Letter> letters) {
    auto out = group.identity();
    std::size_t k = x.basepoint;
    for (Letter l : letters) {
        const std::size_t next = x.act(k, l);
        auto it = psi.find(Edge{x.labeling[k], x.labeling[next], l});
        if (it == psi.end())
            throw DecodeError("no edge isometry for letter " + gens.symbol(l) + " at carrier point " +
                              std::to_string(k));
        out = group.multiply(out, it->second);
        k = next;
    }
    return out;
}

template <GroupOracle G>
typename G::Element decode(const PeriodicTreequence& x, const EdgeIsometries<typename G::Element>& psi,
                           const G& group, const GeneratorSet& gens, const Word& f) {
    return decode(x, psi, group, gens, std::span<const Letter>(f.letters()));
}

/// Same as above for a finite pattern, whose support must contain the path of f.
template <GroupOracle G>
typename G::Element decode(const Pattern& x, const EdgeIsometries<typename G::Element>& psi,
                           const G& group, const GeneratorSet& gens, std::span<const Letter> letters) {
    auto out = group.identity();
    Word at;
    auto value = [&](const Word& w) {
        auto it = x.values.find(w);
        if (it == x.values.end())
            throw DecodeError("pattern undefined at " + format_word(w, gens));
        return it->second;
    };
    for (Letter l : letters) {
        Word next = at.times(l, gens);
        auto it = psi.find(Edge{value(at), value(next), l});
        if (it == psi.end())
            throw DecodeError("no edge isometry for letter " + gens.symbol(l) + " at " +
                              format_word(at, gens));
        out = group.multiply(out, it->second);
        at = std::move(next);
    }
    return out;
}

struct EpsilonCheck {
    bool ok = true;
    double max_defect = 0;  ///< max over f, s of d(phi_x(fs), phi_x(f) phi(s))
    std::optional<Word> worst_word;
    Letter worst_letter = 0;
    std::size_t tested = 0;
};

/// The defining inequality for every f in ball(radius) and every letter s.
template <GroupOracle G>
EpsilonCheck check_epsilon_perturbation(const PeriodicTreequence& x,
                                        const EdgeIsometries<typename G::Element>& psi,
                                        const G& group, const GeneratorImages<typename G::Element>& phi,
                                        const GeneratorSet& gens, double epsilon, std::size_t radius) {
    if (radius < 1)
        throw std::invalid_argument("radius must be at least 1");
    EpsilonCheck check;
    for (const Word& f : ball(gens, radius)) {
        const auto at_f = decode(x, psi, group, gens, f);
        for (Letter s = 0; s < gens.size(); ++s) {
            const auto lhs = decode(x, psi, group, gens, f.times(s, gens));
            const double defect =
                group.distance(lhs, group.multiply(at_f, image_of(group, phi, gens, s)));
            ++check.tested;
            if (defect > check.max_defect || !check.worst_word) {
                check.max_defect = std::max(check.max_defect, defect);
                check.worst_word = f;
                check.worst_letter = s;
            }
        }
    }
    check.ok = check.max_defect <= epsilon;
    return check;
}

/// Uniformly random reduced word of length exactly n.
inline Word random_word(const GeneratorSet& gens, std::size_t n, std::mt19937_64& rng) {
    std::vector<Letter> letters;
    std::uniform_int_distribution<std::size_t> first(0, gens.size() - 1), rest(0, gens.size() - 2);
    for (std::size_t i = 0; i < n; ++i) {
        Letter l = static_cast<Letter>(i == 0 ? first(rng) : rest(rng));
        if (i > 0 && l >= gens.inverse(letters.back())) ++l;
        letters.push_back(l);
    }
    return Word::reduce(letters, gens);
}

struct CocycleCheck {
    bool ok = true;
    double max_deviation = 0;
    std::size_t trials = 0;
    std::vector<std::pair<Word, Word>> failures;
};

/// phi_x(f) phi_{f^-1 x}(g) = phi_x(fg) on random f, g of length at most
/// max_length, exactly for exact oracles and within tolerance otherwise.
template <GroupOracle G>
CocycleCheck check_cocycle(const PeriodicTreequence& x, const EdgeIsometries<typename G::Element>& psi,
                           const G& group, const GeneratorSet& gens, std::size_t trials,
                           bool exact, double tolerance = 1e-9, std::size_t max_length = 6,
                           std::uint64_t seed = 0) {
    CocycleCheck check;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(0, max_length);
    for (std::size_t t = 0; t < trials; ++t) {
        const Word f = random_word(gens, len(rng), rng);
        const Word g = random_word(gens, len(rng), rng);
        const auto lhs = group.multiply(decode(x, psi, group, gens, f),
                                        decode(x.rebased(f), psi, group, gens, g));
        const auto rhs = decode(x, psi, group, gens, f.times(g, gens));
        const double dev = group.distance(lhs, rhs);
        check.max_deviation = std::max(check.max_deviation, dev);
        const bool same = exact ? group.equal(lhs, rhs) : dev <= tolerance;
        if (!same) {
            check.ok = false;
            if (check.failures.size() < 8) check.failures.emplace_back(f, g);
        }
        ++check.trials;
    }
    return check;
}

template <class E>
struct VirtualHomReport {
    std::size_t index = 0;  ///< [F : F'] with F' the stabilizer of the base carrier point
    std::vector<Word> generators;
    std::vector<E> images;
    std::size_t hom_tests = 0;
    std::size_t basepoint_tests = 0;
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// (i) homomorphism on F' against ball(test_radius) and random products,
/// (ii) Schreier-generator images in Gamma, (iii) Gamma phi_z(f) is the
/// basepoint coset of z(f) on ball(test_radius) for exact oracles.
template <QuotientOracle Q>
VirtualHomReport<typename Q::Group::Element> check_virtual_hom_into_lattice(
    const PeriodicTreequence& z, const EdgeIsometries<typename Q::Group::Element>& psi, const Q& q,
    const GeneratorSet& gens, std::size_t test_radius = 4, std::size_t random_products = 200,
    std::uint64_t seed = 0, double tolerance = 1e-9) {
    using E = typename Q::Group::Element;
    const auto& group = q.group();
    VirtualHomReport<E> report;
    auto fail = [&](std::string msg) {
        if (report.failures.size() < 32) report.failures.push_back(std::move(msg));
    };
    auto same = [&](const E& a, const E& b) {
        return Q::exact ? group.equal(a, b) : group.distance(a, b) <= tolerance;
    };
    auto phi_z = [&](const Word& f) { return decode(z, psi, group, gens, f); };
    if (z.labeling.at(z.basepoint) != 0)
        fail("z(id) is not the identity-coset vertex");

    const StabilizerData stab = stabilizer_index(z, gens);
    report.index = stab.index;
    report.generators = stab.generators;
    for (const Word& f : stab.generators) report.images.push_back(phi_z(f));

    const WordSet test = ball(gens, test_radius);
    for (std::size_t i = 0; i < stab.generators.size(); ++i) {
        const Word& f = stab.generators[i];
        const E& pf = report.images[i];
        if (!q.in_lattice(pf))
            fail("phi_z(" + format_word(f, gens) + ") = " + group.format(pf) + " is not in the lattice");
        for (const Word& g : test) {
            ++report.hom_tests;
            if (!same(phi_z(f.times(g, gens)), group.multiply(pf, phi_z(g))))
                fail("phi_z(fg) != phi_z(f) phi_z(g) for f = " + format_word(f, gens) +
                     ", g = " + format_word(g, gens));
        }
    }
    if (!stab.generators.empty()) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, stab.generators.size() - 1), count(2, 5);
        std::bernoulli_distribution flip;
        for (std::size_t t = 0; t < random_products; ++t) {
            Word w;
            E expected = group.identity();
            for (std::size_t j = count(rng); j > 0; --j) {
                const std::size_t i = pick(rng);
                const bool inv = flip(rng);
                w = w.times(inv ? stab.generators[i].inverse(gens) : stab.generators[i], gens);
                expected = group.multiply(expected, inv ? group.inverse(report.images[i]) : report.images[i]);
            }
            ++report.hom_tests;
            if (!same(phi_z(w), expected))
                fail("homomorphism fails on product " + format_word(w, gens));
        }
    }
    if constexpr (Q::exact) {
        for (const Word& f : test) {
            ++report.basepoint_tests;
            const std::size_t cell = z.value_at(f);
            if (!q.same_coset(phi_z(f), q.basepoint(cell)))
                fail("Gamma phi_z(" + format_word(f, gens) + ") is not the basepoint of " +
                     q.cell_name(cell));
        }
    }
    return report;
}

struct UniformOptions {
    double epsilon = 0.05;
    std::size_t sample_budget = 64;
    std::size_t delta_samples = 10'000;
    std::size_t epsilon_radius = 8;
    std::size_t cocycle_trials = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

template <class E>
struct UniformReport {
    DeltaSearch delta;
    WitnessedGraph<E> graph;
    EdgeIsometries<E> psi;
    double max_psi_error = 0;  ///< max_e d(psi_e, phi(s))
    Weight weight;             ///< integer weight after scaling
    PeriodicTreequence treequence;
    EpsilonCheck epsilon_check;
    CocycleCheck cocycle;
    VirtualHomReport<E> hom;
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// Partition, graph, weight, synthesis, then every verification.
template <QuotientOracle Q>
UniformReport<typename Q::Group::Element> run_uniform_pipeline(
    const Q& q, const GeneratorImages<typename Q::Group::Element>& phi, const GeneratorSet& gens,
    const UniformOptions& opts = {}) {
    using E = typename Q::Group::Element;
    const auto& group = q.group();
    if (q.cell_of(group.identity()) != 0)
        throw std::logic_error("identity coset must lie in cell 0");
    UniformReport<E> r{delta_for_epsilon(group, phi, gens, opts.epsilon, opts.delta_samples, opts.seed),
                       build_constraint_graph(q, phi, gens, opts.sample_budget, opts.seed, opts.threads),
                       {}, 0.0, {}, {}, {}, {}, {}, {}};
    r.psi = edge_isometries(r.graph, q, phi);
    for (const auto& [e, value] : r.psi)
        r.max_psi_error = std::max(r.max_psi_error, group.distance(value, image_of(group, phi, gens, e.label)));

    const auto found = find_weight(r.graph.graph, VertexId{0});
    if (!found) {
        r.failures.push_back("no weight with W(v1) = 1 on the discovered graph");
        return r;
    }
    r.weight = scale_to_integer(*found).weight;
    r.treequence = synthesize(r.graph.graph, r.weight, 0);
    r.epsilon_check = check_epsilon_perturbation(r.treequence, r.psi, group, phi, gens, opts.epsilon,
                                                 opts.epsilon_radius);
    if (!r.epsilon_check.ok) r.failures.push_back("decoded map is not an epsilon-perturbation");
    r.cocycle = check_cocycle(r.treequence, r.psi, group, gens, opts.cocycle_trials, Q::exact, 1e-9, 6,
                              opts.seed);
    if (!r.cocycle.ok) r.failures.push_back("cocycle identity fails");
    r.hom = check_virtual_hom_into_lattice(r.treequence, r.psi, q, gens, 4, 200, opts.seed);
    for (const auto& f : r.hom.failures) r.failures.push_back(f);
    return r;
}

}  // namespace freelat
