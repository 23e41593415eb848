#pragma once

#include "freelat/subshift.hpp"
#include "freelat/weights.hpp"

#include <cstddef>
#include <stdexcept>

namespace freelat {

/// A synthesis precondition failed (non-integer, non-weight, zero at v1, too large).
class SynthesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SynthesisOptions {
    std::size_t max_carrier = 1'000'000;
};

/// Periodic treequence with x(id) = v1 built from an integer weight. K(v) is
/// the index range of length W(v), vertices in ascending order; partitions are
/// ascending in the neighbouring vertex and the matching bijections preserve order.
PeriodicTreequence synthesize(const ConstraintGraph& g, const Weight& w, VertexId v1,
                              const SynthesisOptions& options = {});

/// Vertex and labeled-edge frequencies of the carrier.
EmpiricalMeasure frequency_of(const PeriodicTreequence& p, const GeneratorSet& gens);

}  // namespace freelat
