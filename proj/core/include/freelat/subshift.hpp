#pragma once

#include "freelat/freegroup.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freelat {

using VertexId = std::size_t;

/// Labeled directed edge (from, to; label).
struct Edge {
    VertexId from = 0;
    VertexId to = 0;
    Letter label = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The edge (to, from; label^-1) that the symmetric closure pairs with e.
inline Edge reverse_edge(const Edge& e, const GeneratorSet& gens) {
    return Edge{e.to, e.from, gens.inverse(e.label)};
}

/// Raised when a graph breaks the symmetric-closure invariant.
class StructuralError : public std::runtime_error {
public:
    StructuralError(std::string what, std::vector<Edge> offending)
        : std::runtime_error(std::move(what)), offending_(std::move(offending)) {}
    const std::vector<Edge>& offending() const noexcept { return offending_; }

private:
    std::vector<Edge> offending_;
};

/// Labeled multigraph defining the graph subshift X. Duplicate labeled edges
/// collapse: only existence of (v, w; s) matters.
class ConstraintGraph {
public:
    ConstraintGraph(GeneratorSet gens, std::vector<std::string> vertices, std::vector<Edge> edges);

    const GeneratorSet& generators() const noexcept { return gens_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    /// Throws InputError for an unknown name.
    VertexId vertex_id(std::string_view name) const;

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    bool has_edge(VertexId from, VertexId to, Letter label) const;
    bool has_edge(const Edge& e) const { return has_edge(e.from, e.to, e.label); }
    /// Sorted targets w with (v, w; label) in E.
    const std::vector<VertexId>& successors(VertexId v, Letter label) const;
    /// Sorted sources u with (u, v; label) in E.
    const std::vector<VertexId>& predecessors(VertexId v, Letter label) const;

    /// Copy with every missing reverse edge added.
    ConstraintGraph closed() const;

private:
    GeneratorSet gens_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;                         // sorted, unique
    std::vector<std::vector<VertexId>> out_, in_;     // index v * |S| + label
};

struct GraphReport {
    /// (v, s) with no outgoing s-edge. Any weight vanishes at such v.
    std::vector<std::pair<VertexId, Letter>> dead_ends;
};

/// Throws StructuralError listing edges whose reverse is missing.
GraphReport validate_graph(const ConstraintGraph& g);

/// Finite piece of a treequence: support is the key set.
struct Pattern {
    std::map<Word, VertexId> values;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

bool check_pattern(const ConstraintGraph& g, const Pattern& p);
/// (sigma_h p)(f) = p(h^-1 f), supported on h * support.
Pattern shift(const Pattern& p, const Word& h, const GeneratorSet& gens);
Pattern restrict_pattern(const Pattern& p, const WordSet& support);

/// Finite carrier K with a right F-action and a labeling K -> V.
/// `action[l][k]` is k . l for every letter l (inverse letters included).
struct PeriodicTreequence {
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    std::size_t carrier_size = 0;
    std::vector<std::vector<std::size_t>> action;
    std::vector<VertexId> labeling;
    std::size_t basepoint = 0;

    /// Builds inverse-letter tables from the positive permutations. Entries of
    /// a non-bijective map's inverse are left as npos so verification fails.
    static PeriodicTreequence from_positive(const GeneratorSet& gens,
                                            std::vector<std::vector<std::size_t>> positive,
                                            std::vector<VertexId> labeling,
                                            std::size_t basepoint);

    std::size_t act(std::size_t k, Letter l) const { return action[l][k]; }
    std::size_t act(std::size_t k, const Word& f) const;
    /// x(f) = xbar(k1 . f)
    VertexId value_at(const Word& f) const { return labeling[act(basepoint, f)]; }
    /// Same carrier with basepoint k1 . f, i.e. the treequence sigma_{f^-1} x.
    PeriodicTreequence rebased(const Word& f) const;

    friend bool operator==(const PeriodicTreequence&, const PeriodicTreequence&) = default;
};

struct PeriodicCheck {
    bool ok = true;
    std::vector<std::string> failures;
    explicit operator bool() const noexcept { return ok; }
};

/// Finite certificate that the expansion lies in X.
PeriodicCheck verify_periodic(const ConstraintGraph& g, const PeriodicTreequence& p);

/// Pattern on ball(radius) with x(f) = xbar(k1 . f).
Pattern expand_periodic(const PeriodicTreequence& p, const GeneratorSet& gens, std::size_t radius);

struct StabilizerData {
    std::size_t index = 0;                 ///< |orbit of k1| = [F : F_{k1}]
    std::vector<Word> generators;          ///< Schreier generators of F_{k1}
    std::map<std::size_t, Word> transversal;  ///< orbit point -> tree word from k1
};

/// Orbit of k1 via BFS (letters in index order) and Schreier generators
/// t_k s t_{k.s}^-1 for s in S+, omitting the trivial ones.
StabilizerData stabilizer_index(const PeriodicTreequence& p, const GeneratorSet& gens);

}  // namespace freelat
