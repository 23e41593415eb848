#pragma once

#include "freelat/simplex.hpp"
#include "freelat/subshift.hpp"
#include "freelat/weights.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace freelat {

/// Finite set A of vertices inside a (possibly large) constraint graph.
class TruncationSpec {
public:
    /// Throws InputError if A is empty or names an unknown vertex.
    TruncationSpec(const ConstraintGraph& graph, std::set<VertexId> a);

    const ConstraintGraph& graph() const noexcept { return *graph_; }
    const std::set<VertexId>& a() const noexcept { return a_; }
    bool in_a(VertexId v) const { return a_.contains(v); }

private:
    const ConstraintGraph* graph_;
    std::set<VertexId> a_;
};

/// Keeps W on A and on A-A edges; everything touching V-A becomes zero.
Weight truncate_weight(const Weight& w, const TruncationSpec& spec);

using ConeKey = std::pair<VertexId, Letter>;

/// Nonnegative vector indexed by A x S; absent coordinates are zero.
struct ConeVector {
    std::map<ConeKey, Rational> coords;

    Rational at(const ConeKey& key) const;
    ConeVector plus(const ConeVector& other) const;
    friend bool operator==(const ConeVector&, const ConeVector&) = default;
};

/// coords(a, s) = sum over b in V-A of w(a, b; s).
ConeVector vector_of(const Weight& w, const TruncationSpec& spec);

struct ConeDecomposition {
    std::size_t prefix = 0;                             ///< minimal N
    std::vector<std::pair<std::size_t, Rational>> terms;  ///< nonzero coefficients
};

class ConeError : public std::runtime_error {
public:
    ConeError(std::string what, std::optional<FarkasCertificate> certificate)
        : std::runtime_error(std::move(what)), certificate_(std::move(certificate)) {}
    const std::optional<FarkasCertificate>& certificate() const noexcept { return certificate_; }

private:
    std::optional<FarkasCertificate> certificate_;
};

/// Smallest N with target in the positive cone of generators[0..N), tried for
/// N = 1, 2, ... in turn. Throws ConeError carrying the Farkas certificate of
/// the full list when no prefix works.
ConeDecomposition finite_cone_decomposition(const RationalVector& target,
                                            const std::vector<RationalVector>& generators);
ConeDecomposition finite_cone_decomposition(const ConeVector& target,
                                            const std::vector<ConeVector>& generators);

/// A finite pattern z with its weight-shaped function W_z.
struct PatternWeight {
    std::string id;
    Pattern pattern;
    Weight values;
};

/// Problems with the defining invariants of a pattern weight; empty when valid.
std::vector<std::string> validate_pattern_weight(const PatternWeight& pw, const TruncationSpec& spec);

class AssemblyError : public std::runtime_error {
public:
    AssemblyError(std::string what, WeightReport report)
        : std::runtime_error(std::move(what)), report_(std::move(report)) {}
    const WeightReport& report() const noexcept { return report_; }

private:
    WeightReport report_;
};

/// W = W' + sum t_z W_z, checked exactly. Throws AssemblyError on failure.
Weight assemble_finite_weight(const ConstraintGraph& g, const Weight& truncated,
                              const std::vector<std::pair<const PatternWeight*, Rational>>& terms);

/// Pairs each decomposition index with its pattern weight.
std::vector<std::pair<const PatternWeight*, Rational>> decomposition_terms(
    const ConeDecomposition& d, const std::vector<PatternWeight>& patterns);

}  // namespace freelat
