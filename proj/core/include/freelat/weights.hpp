#pragma once

#include "freelat/rational.hpp"
#include "freelat/simplex.hpp"
#include "freelat/subshift.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freelat {

/// Sparse nonnegative function on V ∪ E; absent entries are zero. It is a
/// weight when check_weight passes, otherwise just weight-shaped.
struct Weight {
    std::map<VertexId, Rational> vertex;
    std::map<Edge, Rational> edge;

    Rational at(VertexId v) const;
    Rational at(const Edge& e) const;
    void set(VertexId v, const Rational& value);
    void set(const Edge& e, const Rational& value);
    void add(VertexId v, const Rational& value) { set(v, at(v) + value); }
    void add(const Edge& e, const Rational& value) { set(e, at(e) + value); }

    Weight scaled(const Rational& factor) const;
    Weight plus(const Weight& other) const;
    Rational vertex_total() const;
    bool is_zero() const noexcept { return vertex.empty() && edge.empty(); }

    friend bool operator==(const Weight&, const Weight&) = default;
};

struct WeightViolation {
    enum class Kind {
        negative,          ///< a value below zero
        not_an_edge,       ///< mass on a labeled pair that is not in E
        out_sum,           ///< W(v) != sum_w W(v,w;s)
        in_sum,            ///< W(v) != sum_w W(w,v;s)
        inverse_symmetry,  ///< W(v,w;s) != W(w,v;s^-1)
    };
    Kind kind;
    VertexId v = 0;
    VertexId w = 0;
    Letter s = 0;
    Rational lhs;
    Rational rhs;
};

std::string describe(const WeightViolation& violation, const ConstraintGraph& g);

struct WeightReport {
    std::vector<WeightViolation> violations;
    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
};

/// Exact check of both weight-equation families.
WeightReport check_weight(const ConstraintGraph& g, const Weight& w);

/// The linear system whose nonnegative solutions are normalized weights.
/// Variables: one per vertex, then one per edge with a positive label (its
/// reverse edge shares the variable).
struct WeightSystem {
    RationalMatrix a;
    RationalVector b;
    std::vector<Edge> pair_edges;  ///< positive-label edge of each pair variable
    std::size_t vertex_count = 0;

    Weight decode(const RationalVector& x, const GeneratorSet& gens) const;
};

/// Normalization W(positive_at) = 1, or sum_v W(v) = 1 when absent.
WeightSystem build_weight_system(const ConstraintGraph& g, std::optional<VertexId> positive_at);

struct WeightSearch {
    std::optional<Weight> weight;
    std::optional<FarkasCertificate> certificate;
    WeightSystem system;
    std::size_t pivots = 0;
};

/// Solves the weight system exactly; either a weight or a Farkas certificate.
/// Throws StructuralError for a graph without symmetric closure.
WeightSearch search_weight(const ConstraintGraph& g, std::optional<VertexId> positive_at);
std::optional<Weight> find_weight(const ConstraintGraph& g, std::optional<VertexId> positive_at);

struct ScaledWeight {
    Weight weight;
    Integer factor;  ///< lcm of all denominators
};

ScaledWeight scale_to_integer(const Weight& w);
bool is_integral(const Weight& w);

/// Frequencies of vertices and labeled edges under a shift-invariant measure.
struct EmpiricalMeasure {
    std::map<VertexId, Rational> vertex_freq;
    std::map<Edge, Rational> edge_freq;
};

class InconsistentMeasure : public std::runtime_error {
public:
    InconsistentMeasure(std::string what, WeightReport report)
        : std::runtime_error(std::move(what)), report_(std::move(report)) {}
    const WeightReport& report() const noexcept { return report_; }

private:
    WeightReport report_;
};

/// W(v) = vertex_freq(v), W(v,w;s) = edge_freq(v,w,s). Throws
/// InconsistentMeasure with the violation report when the result is not a weight.
Weight weight_from_measure(const EmpiricalMeasure& m, const ConstraintGraph& g);

}  // namespace freelat
